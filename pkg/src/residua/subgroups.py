"""Subgroups as bitsets over a parent's element indices.

Membership masks are plain Python ints: bit ``i`` set means element ``i``
belongs.  Closures use coset extension, so generating a subgroup costs
roughly ``|H| * |generators|`` table lookups.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

from .group import ConcreteGroup, Perm, ResiduaError, group_from_table


class ParentMismatch(ResiduaError, ValueError):
    """Two subgroups (or a subgroup and a group) live in different parents."""


class NotNormalError(ResiduaError, ValueError):
    pass


def _bits(mask: int) -> list[int]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


class Subgroup:
    """An element-index set within ``parent`` closed under products and inverses."""

    __slots__ = ("parent", "mask", "_members")

    def __init__(self, parent: ConcreteGroup, mask: int) -> None:
        self.parent = parent
        self.mask = mask
        self._members: Optional[tuple[int, ...]] = None

    @property
    def members(self) -> tuple[int, ...]:
        if self._members is None:
            self._members = tuple(_bits(self.mask))
        return self._members

    @property
    def order(self) -> int:
        return self.mask.bit_count()

    def __len__(self) -> int:
        return self.order

    def __contains__(self, i: int) -> bool:
        return (self.mask >> i) & 1 == 1

    def __iter__(self):
        return iter(self.members)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Subgroup):
            return NotImplemented
        return self.parent is other.parent and self.mask == other.mask

    def __hash__(self) -> int:
        return hash((id(self.parent), self.mask))

    def __le__(self, other: "Subgroup") -> bool:
        _same_parent(self, other)
        return self.mask & ~other.mask == 0

    def __lt__(self, other: "Subgroup") -> bool:
        return self <= other and self.mask != other.mask

    def __repr__(self) -> str:
        return f"<Subgroup order={self.order} of {self.parent.order}>"

    def sort_key(self) -> tuple:
        return (self.order, self.members)

    @property
    def is_trivial(self) -> bool:
        return self.mask == 1

    @property
    def is_whole(self) -> bool:
        return self.order == self.parent.order

    def describe(self) -> str:
        """Generators in cycle notation, e.g. ``<(1 2 3), (1 2)>``."""
        gens = generating_set(self)
        return "<" + ", ".join(str(self.parent.elements[g]) for g in gens) + ">" if gens else "<()>"


def _same_parent(*subs: Subgroup) -> None:
    first = subs[0].parent
    if any(s.parent is not first for s in subs[1:]):
        raise ParentMismatch("subgroups belong to different parent groups")


def _check_parent(G: ConcreteGroup, *subs: Subgroup) -> None:
    if any(s.parent is not G for s in subs):
        raise ParentMismatch("subgroup does not belong to this group")


def trivial_subgroup(G: ConcreteGroup) -> Subgroup:
    return Subgroup(G, 1)


def whole_group(G: ConcreteGroup) -> Subgroup:
    return Subgroup(G, (1 << G.order) - 1)


def _extend(G: ConcreteGroup, elems: list[int], mask: int, gens: list[int], s: int) -> int:
    """Grow ``<gens>`` (listed in ``elems``/``mask``) by ``s``; mutates ``elems``/``gens``."""
    if (mask >> s) & 1:
        return mask
    c = G.cayley
    base = list(elems)
    gens.append(s)
    reps = [0]
    # K is a union of right cosets base*r; walk reps by right multiplication
    while reps:
        r = reps.pop()
        for t in gens:
            x = c[r][t]
            if not (mask >> x) & 1:
                for h in base:
                    y = c[h][x]
                    mask |= 1 << y
                    elems.append(y)
                reps.append(x)
    return mask


def _closure(G: ConcreteGroup, seed: Iterable[int], start: Optional[Subgroup] = None) -> Subgroup:
    if start is None:
        elems, mask, gens = [0], 1, []
    else:
        elems, mask, gens = list(start.members), start.mask, list(generating_set(start))
    for s in seed:
        if not (mask >> s) & 1:
            mask = _extend(G, elems, mask, gens, s)
    H = Subgroup(G, mask)
    G.cache.setdefault("gens", {}).setdefault(mask, tuple(gens))
    return H


def generated_subgroup(G: ConcreteGroup, seed: Iterable[int]) -> Subgroup:
    seed = sorted(set(seed))
    for i in seed:
        G.check_index(i)
    return _closure(G, seed)


def generating_set(H: Subgroup) -> tuple[int, ...]:
    """A small generating set found greedily in index order (cached per parent)."""
    G = H.parent
    cache = G.cache.setdefault("gens", {})
    gens = cache.get(H.mask)
    if gens is None:
        elems, mask, acc = [0], 1, []
        for s in H.members:
            if not (mask >> s) & 1:
                mask = _extend(G, elems, mask, acc, s)
                if mask == H.mask:
                    break
        gens = tuple(acc)
        cache[H.mask] = gens
    return gens


def cyclic_subgroup(G: ConcreteGroup, x: int) -> Subgroup:
    mask, y = 1, x
    while y != 0:
        mask |= 1 << y
        y = G.cayley[y][x]
    return Subgroup(G, mask)


def join(H: Subgroup, K: Subgroup) -> Subgroup:
    _same_parent(H, K)
    if K <= H:
        return H
    if H <= K:
        return K
    return _closure(H.parent, generating_set(K), start=H)


def meet(H: Subgroup, K: Subgroup) -> Subgroup:
    _same_parent(H, K)
    return Subgroup(H.parent, H.mask & K.mask)


def is_normal(G: ConcreteGroup, H: Subgroup) -> bool:
    _check_parent(G, H)
    mask = H.mask
    for g in G.generator_indices:
        for h in generating_set(H):
            if not (mask >> G.conj(h, g)) & 1:
                return False
    return True


def normal_closure(G: ConcreteGroup, H: Subgroup) -> Subgroup:
    """Smallest normal subgroup of ``G`` containing ``H``."""
    _check_parent(G, H)
    N = H
    changed = True
    while changed:
        changed = False
        for g in G.generator_indices:
            for h in generating_set(N):
                y = G.conj(h, g)
                if y not in N:
                    N = _closure(G, [y], start=N)
                    changed = True
    return N


def commutator_subgroup(G: ConcreteGroup, H: Subgroup, K: Subgroup) -> Subgroup:
    """``[H, K]`` generated by all commutators ``h⁻¹k⁻¹hk``, every pair."""
    _check_parent(G, H, K)
    comms = set()
    for h in H.members:
        for k in K.members:
            comms.add(G.commutator(h, k))
    return _closure(G, sorted(comms))


def derived_subgroup(G: ConcreteGroup, H: Optional[Subgroup] = None) -> Subgroup:
    H = whole_group(G) if H is None else H
    return commutator_subgroup(G, H, H)


@dataclass(frozen=True)
class SubgroupSeries:
    parent: ConcreteGroup
    terms: tuple[Subgroup, ...]
    kind: str

    @property
    def orders(self) -> list[int]:
        return [t.order for t in self.terms]

    @property
    def last(self) -> Subgroup:
        return self.terms[-1]


def derived_series(G: ConcreteGroup) -> SubgroupSeries:
    """``G ⊵ G′ ⊵ G″ ⊵ …``, the stable term appearing once."""
    terms = [whole_group(G)]
    while True:
        nxt = derived_subgroup(G, terms[-1])
        if nxt == terms[-1]:
            break
        terms.append(nxt)
    return SubgroupSeries(G, tuple(terms), "derived")


def lower_central_series(G: ConcreteGroup) -> SubgroupSeries:
    """``L1 = G``, ``L(k+1) = [G, Lk]``, the stable term appearing once."""
    top = whole_group(G)
    terms = [top]
    while True:
        nxt = commutator_subgroup(G, top, terms[-1])
        if nxt == terms[-1]:
            break
        terms.append(nxt)
    return SubgroupSeries(G, tuple(terms), "lower-central")


def is_subnormal(G: ConcreteGroup, H: Subgroup) -> bool:
    """Iterate normal closures ``K(i+1) = H^K(i)`` from ``K0 = G``."""
    _check_parent(G, H)
    K = whole_group(G)
    while True:
        if K == H:
            return True
        KG, emb = as_group(K)
        Hk = Subgroup(KG, _pull_mask(emb, H.mask))
        nxt = normal_closure(KG, Hk)
        if nxt.order == KG.order:
            return False
        K = Subgroup(G, push_mask(emb, nxt.mask))


@dataclass(frozen=True)
class QuotientMap:
    source: ConcreteGroup
    kernel: Subgroup
    target: ConcreteGroup
    image: tuple[int, ...]

    def push(self, H: Subgroup) -> Subgroup:
        """Image of a subgroup of the source."""
        mask = 0
        for i in H.members:
            mask |= 1 << self.image[i]
        return Subgroup(self.target, mask)

    def pull(self, H: Subgroup) -> Subgroup:
        """Full preimage of a subgroup of the target."""
        mask = 0
        for i, t in enumerate(self.image):
            if (H.mask >> t) & 1:
                mask |= 1 << i
        return Subgroup(self.source, mask)


def quotient_group(G: ConcreteGroup, N: Subgroup) -> QuotientMap:
    """``G / N`` with cosets ordered by their smallest member index.

    The target's elements are realized as permutations of the cosets
    (left multiplication), which is faithful because ``N`` is normal.
    """
    _check_parent(G, N)
    cached = G.cache.setdefault("quotients", {}).get(N.mask)
    if cached is not None:
        return cached
    if not is_normal(G, N):
        raise NotNormalError("quotient requires a normal subgroup")
    c = G.cayley
    image = [-1] * G.order
    reps = []
    for g in range(G.order):
        if image[g] == -1:
            k = len(reps)
            reps.append(g)
            for n in N.members:
                image[c[g][n]] = k
    m = len(reps)
    table = [[image[c[a][b]] for b in reps] for a in reps]
    if m == 1:
        elements = [Perm.identity(1)]
    else:
        elements = [Perm(m, tuple(table[k][j] + 1 for j in range(m))) for k in range(m)]
    gens = sorted({image[g] for g in G.generator_indices} - {0})
    target = group_from_table(elements, table, gens)
    qm = QuotientMap(G, N, target, tuple(image))
    G.cache["quotients"][N.mask] = qm
    return qm


def push_mask(embedding: Sequence[int], local_mask: int) -> int:
    mask = 0
    for i in _bits(local_mask):
        mask |= 1 << embedding[i]
    return mask


def _pull_mask(embedding: Sequence[int], parent_mask: int) -> int:
    mask = 0
    for local, i in enumerate(embedding):
        if (parent_mask >> i) & 1:
            mask |= 1 << local
    return mask


def as_group(H: Subgroup) -> tuple[ConcreteGroup, tuple[int, ...]]:
    """Materialize ``H`` as its own group.

    Elements keep the parent's relative order, so the identity stays at
    index 0.  Returns the group and the embedding ``local -> parent``.
    """
    G = H.parent
    store = G.cache.setdefault("materialized", {})
    hit = store.get(H.mask)
    if hit is not None:
        return hit
    emb = H.members
    local = {g: k for k, g in enumerate(emb)}
    c = G.cayley
    table = [[local[c[a][b]] for b in emb] for a in emb]
    sub = group_from_table([G.elements[g] for g in emb], table, [local[g] for g in generating_set(H)])
    store[H.mask] = (sub, emb)
    return sub, emb


def embed(H: Subgroup, local: Subgroup) -> Subgroup:
    """Map a subgroup of ``as_group(H)`` back into ``H.parent``."""
    _, emb = as_group(H)
    return Subgroup(H.parent, push_mask(emb, local.mask))


def restrict(H: Subgroup, K: Subgroup) -> Subgroup:
    """View ``K ≤ H`` as a subgroup of ``as_group(H)``."""
    G, emb = as_group(H)
    if not K <= H:
        raise ValueError("subgroup is not contained in the ambient subgroup")
    return Subgroup(G, _pull_mask(emb, K.mask))


def normal_subgroups(G: ConcreteGroup) -> list[Subgroup]:
    """All normal subgroups, sorted by (order, members).

    Every normal subgroup is the join of the normal closures of its
    cyclic subgroups, so the join-closure of those closures (plus the
    trivial group) is the whole lattice.
    """
    hit = G.cache.get("normal_subgroups")
    if hit is not None:
        return list(hit)
    seen_cyclic = set()
    atoms: dict[int, Subgroup] = {1: trivial_subgroup(G)}
    for x in range(1, G.order):
        C = cyclic_subgroup(G, x)
        if C.mask in seen_cyclic:
            continue
        seen_cyclic.add(C.mask)
        N = normal_closure(G, C)
        atoms.setdefault(N.mask, N)
    found = dict(atoms)
    queue = list(found.values())
    generators = list(atoms.values())
    while queue:
        N = queue.pop()
        for M in generators:
            if M.mask & ~N.mask == 0:
                continue
            J = join(N, M)
            if J.mask not in found:
                found[J.mask] = J
                queue.append(J)
    out = sorted(found.values(), key=Subgroup.sort_key)
    G.cache["normal_subgroups"] = tuple(out)
    return out
