"""Factorizations ``G = AB``: products, permutability, mutual permutability
and the full subgroup lattice they quantify over."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from . import classifiers, config
from .group import ConcreteGroup, OrderCapExceeded, prime_divisors
from .subgroups import (
    Subgroup,
    _same_parent,
    as_group,
    cyclic_subgroup,
    join,
    trivial_subgroup,
)


class CensusCapExceeded(OrderCapExceeded):
    """Subgroup-lattice enumeration refused for a group above the census cap."""


def set_product(U: Subgroup, V: Subgroup) -> int:
    """Mask of the element set ``U·V``."""
    _same_parent(U, V)
    c = U.parent.cayley
    vs = V.members
    mask = 0
    for u in U.members:
        row = c[u]
        for v in vs:
            mask |= 1 << row[v]
    return mask


def is_product(G: ConcreteGroup, A: Subgroup, B: Subgroup) -> bool:
    """``G = AB``, decided by ``|A||B| = |G||A ∩ B|``."""
    _same_parent(A, B)
    if A.parent is not G:
        raise ValueError("subgroups do not belong to this group")
    return A.order * B.order == G.order * (A.mask & B.mask).bit_count()


def permutes(U: Subgroup, B: Subgroup) -> bool:
    """``UB = BU`` as element sets."""
    if U <= B or B <= U:
        return True
    return set_product(U, B) == set_product(B, U)


def _cyclics(A: Subgroup) -> list[Subgroup]:
    seen = {}
    for a in A.members:
        C = cyclic_subgroup(A.parent, a)
        seen.setdefault(C.mask, C)
    return list(seen.values())


def is_mutually_permutable(G: ConcreteGroup, A: Subgroup, B: Subgroup, exhaustive: bool = False) -> bool:
    """``UB = BU`` for every ``U ≤ A`` and ``AV = VA`` for every ``V ≤ B``.

    By default only cyclic ``U`` and ``V`` are tested, which is exact: if
    every ``<a>`` permutes with ``B`` then so does every subgroup of ``A``.
    ``exhaustive=True`` quantifies over the full subgroup lattice instead.
    """
    if not is_product(G, A, B):
        raise ValueError("mutual permutability is defined for factorizations G = AB")
    if exhaustive:
        subs = all_subgroups(G)
        left = [U for U in subs if U <= A]
        right = [V for V in subs if V <= B]
    else:
        left, right = _cyclics(A), _cyclics(B)
    return all(permutes(U, B) for U in left) and all(permutes(A, V) for V in right)


def all_subgroups(G: ConcreteGroup, cap: Optional[int] = None) -> list[Subgroup]:
    """The full subgroup lattice, sorted by (order, members)."""
    cap = config.census_cap() if cap is None else cap
    if G.order > cap:
        raise CensusCapExceeded(f"group order {G.order} exceeds census cap {cap}")
    hit = G.cache.get("all_subgroups")
    if hit is not None:
        return list(hit)
    cyclics: dict[int, Subgroup] = {1: trivial_subgroup(G)}
    for x in range(1, G.order):
        C = cyclic_subgroup(G, x)
        cyclics.setdefault(C.mask, C)
    found = dict(cyclics)
    queue = list(found.values())
    atoms = list(cyclics.values())
    while queue:
        H = queue.pop()
        for C in atoms:
            if C.mask & ~H.mask == 0:
                continue
            J = join(H, C)
            if J.mask not in found:
                found[J.mask] = J
                queue.append(J)
    out = sorted(found.values(), key=Subgroup.sort_key)
    G.cache["all_subgroups"] = tuple(out)
    return out


def _cached_class(H: Subgroup, test, *args) -> bool:
    store = H.parent.cache.setdefault("factor_class", {})
    key = (test.__name__, args, H.mask)
    if key not in store:
        local, _ = as_group(H)
        store[key] = test(local, *args)
    return store[key]


def is_supersoluble_sub(H: Subgroup) -> bool:
    return _cached_class(H, classifiers.is_supersoluble)


def is_p_supersoluble_sub(H: Subgroup, p: int) -> bool:
    return _cached_class(H, classifiers.is_p_supersoluble, p)


@dataclass(frozen=True)
class Factorization:
    """``G = AB`` stored with ``A`` the smaller factor (ties: member order)."""

    parent: ConcreteGroup
    A: Subgroup
    B: Subgroup
    mutually_permutable: bool
    proper: bool
    supersoluble_factors: bool
    p_supersoluble_factors: tuple[int, ...] = field(default=())

    def describe(self) -> str:
        return f"A={self.A.describe()} (|A|={self.A.order}), B={self.B.describe()} (|B|={self.B.order})"


def classify(G: ConcreteGroup, A: Subgroup, B: Subgroup) -> Factorization:
    if B.sort_key() < A.sort_key():
        A, B = B, A
    primes = tuple(
        p for p in prime_divisors(G.order) if is_p_supersoluble_sub(A, p) and is_p_supersoluble_sub(B, p)
    )
    return Factorization(
        parent=G,
        A=A,
        B=B,
        mutually_permutable=is_mutually_permutable(G, A, B),
        proper=not A.is_whole and not B.is_whole,
        supersoluble_factors=is_supersoluble_sub(A) and is_supersoluble_sub(B),
        p_supersoluble_factors=primes,
    )


def factorizations(
    G: ConcreteGroup,
    *,
    proper: bool = False,
    supersoluble: bool = False,
    mutually_permutable: bool = False,
    p: Optional[int] = None,
    cap: Optional[int] = None,
) -> list[Factorization]:
    """All unordered pairs ``{A, B}`` with ``G = AB``, optionally filtered.

    ``p`` keeps only pairs whose factors are both p-supersoluble.
    """
    subs = all_subgroups(G, cap)
    out = []
    for i, A in enumerate(subs):
        for B in subs[i:]:
            if not is_product(G, A, B):
                continue
            if proper and (A.is_whole or B.is_whole):
                continue
            F = classify(G, A, B)
            if supersoluble and not F.supersoluble_factors:
                continue
            if mutually_permutable and not F.mutually_permutable:
                continue
            if p is not None and G.order % p == 0 and p not in F.p_supersoluble_factors:
                continue
            out.append(F)
    return out
