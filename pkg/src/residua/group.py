"""Concrete finite groups realized by full enumeration of permutations.

Every group is stored as an ordered element list with the identity at
index 0 and a complete Cayley table, so all downstream work is table
lookups on element indices.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Optional, Sequence

from . import config


class ResiduaError(Exception):
    """Base class for errors raised by this package."""


class GroupFormatError(ResiduaError, ValueError):
    """Malformed cycle notation or group file."""


class OrderCapExceeded(ResiduaError):
    """A group (or lattice) grew past the configured size bound."""


@dataclass(frozen=True)
class Perm:
    """A permutation of the points 1..degree.

    ``images[k]`` is the image of point ``k + 1``; values are 1-based.
    """

    degree: int
    images: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.degree < 1:
            raise ValueError("degree must be positive")
        if len(self.images) != self.degree or sorted(self.images) != list(range(1, self.degree + 1)):
            raise ValueError(f"images {self.images!r} are not a bijection of 1..{self.degree}")

    @classmethod
    def identity(cls, degree: int) -> "Perm":
        return cls(degree, tuple(range(1, degree + 1)))

    def __call__(self, point: int) -> int:
        return self.images[point - 1]

    def compose(self, other: "Perm") -> "Perm":
        """Return ``self ∘ other``: apply ``other`` first, then ``self``."""
        if other.degree != self.degree:
            raise ValueError("degree mismatch")
        mine = self.images
        return Perm(self.degree, tuple(mine[q - 1] for q in other.images))

    def inverse(self) -> "Perm":
        inv = [0] * self.degree
        for k, v in enumerate(self.images):
            inv[v - 1] = k + 1
        return Perm(self.degree, tuple(inv))

    def is_identity(self) -> bool:
        return all(v == k + 1 for k, v in enumerate(self.images))

    def cycles(self) -> list[tuple[int, ...]]:
        seen = set()
        out = []
        for start in range(1, self.degree + 1):
            if start in seen or self(start) == start:
                continue
            cyc = [start]
            seen.add(start)
            nxt = self(start)
            while nxt != start:
                cyc.append(nxt)
                seen.add(nxt)
                nxt = self(nxt)
            out.append(tuple(cyc))
        return out

    def __str__(self) -> str:
        cyc = self.cycles()
        if not cyc:
            return "()"
        return "".join("(" + " ".join(map(str, c)) + ")" for c in cyc)


_CYCLE_RE = re.compile(r"\(([^()]*)\)")


def parse_permutation(text: str, degree: int) -> Perm:
    """Parse a product of disjoint cycles such as ``"(1 2 3)(4 5)"``.

    Points may be separated by spaces or commas; ``"()"`` is the identity.
    """
    if degree < 1:
        raise GroupFormatError("degree must be positive")
    stripped = text.strip()
    if not stripped:
        raise GroupFormatError("empty permutation text")
    pos = 0
    images = list(range(1, degree + 1))
    used: set[int] = set()
    compact = re.sub(r"\s+(?=\()|(?<=\))\s+", "", stripped)
    while pos < len(compact):
        m = _CYCLE_RE.match(compact, pos)
        if m is None:
            raise GroupFormatError(f"malformed cycle notation: {text!r}")
        pos = m.end()
        body = m.group(1).replace(",", " ").split()
        points = []
        for tok in body:
            if not tok.isdigit():
                raise GroupFormatError(f"bad point {tok!r} in {text!r}")
            pt = int(tok)
            if not 1 <= pt <= degree:
                raise GroupFormatError(f"point {pt} out of range 1..{degree}")
            if pt in used:
                raise GroupFormatError(f"point {pt} repeated in {text!r}")
            used.add(pt)
            points.append(pt)
        for a, b in zip(points, points[1:] + points[:1]):
            images[a - 1] = b
    return Perm(degree, tuple(images))


class ConcreteGroup:
    """A fully enumerated finite group.

    ``cayley[i][j]`` is the index of ``elements[i] ∘ elements[j]``.
    Instances are treated as immutable; ``cache`` only memoizes derived
    data (normal subgroup lattice, residuals, materialized subgroups).
    """

    __slots__ = ("elements", "cayley", "inverse", "generator_indices", "order", "cache", "_index")

    def __init__(
        self,
        elements: Sequence[Perm],
        cayley: Sequence[Sequence[int]],
        inverse: Sequence[int],
        generator_indices: Sequence[int],
    ) -> None:
        self.elements: tuple[Perm, ...] = tuple(elements)
        self.cayley: tuple[tuple[int, ...], ...] = tuple(tuple(row) for row in cayley)
        self.inverse: tuple[int, ...] = tuple(inverse)
        self.generator_indices: tuple[int, ...] = tuple(generator_indices)
        self.order = len(self.elements)
        self.cache: dict = {}
        self._index: Optional[dict[Perm, int]] = None

    def __repr__(self) -> str:
        return f"<ConcreteGroup order={self.order} degree={self.degree}>"

    def __len__(self) -> int:
        return self.order

    @property
    def degree(self) -> int:
        return self.elements[0].degree

    def index(self, perm: Perm) -> int:
        if self._index is None:
            self._index = {p: i for i, p in enumerate(self.elements)}
        try:
            return self._index[perm]
        except KeyError:
            raise ValueError(f"{perm} is not an element of this group") from None

    def mul(self, i: int, j: int) -> int:
        return self.cayley[i][j]

    def conj(self, x: int, g: int) -> int:
        """``g⁻¹ x g``."""
        c = self.cayley
        return c[c[self.inverse[g]][x]][g]

    def commutator(self, h: int, k: int) -> int:
        """``h⁻¹ k⁻¹ h k``."""
        c, inv = self.cayley, self.inverse
        return c[c[c[inv[h]][inv[k]]][h]][k]

    def check_index(self, i: int) -> None:
        if not 0 <= i < self.order:
            raise IndexError(f"element index {i} out of range for group of order {self.order}")

    @property
    def is_abelian(self) -> bool:
        c = self.cayley
        gens = self.generator_indices
        return all(c[a][b] == c[b][a] for a in gens for b in gens)


def build_group(
    generators: Iterable[Perm],
    degree: Optional[int] = None,
    max_order: Optional[int] = None,
) -> ConcreteGroup:
    """Enumerate the group generated by ``generators``.

    Elements are discovered breadth-first (by word length in the
    generators); each new layer is sorted by image tuple, so the ordering
    is reproducible.
    """
    gens = list(generators)
    if degree is None:
        if not gens:
            raise ValueError("cannot build a group from no generators without a degree")
        degree = gens[0].degree
    if any(g.degree != degree for g in gens):
        raise ValueError("all generators must share one degree")
    cap = config.max_order() if max_order is None else max_order

    ident = Perm.identity(degree)
    elements = [ident]
    index = {ident: 0}
    # parent[j], via[j]: elements[j] = elements[parent[j]] ∘ gens[via[j]]
    parent = [0]
    via = [-1]
    frontier = [0]
    while frontier:
        layer: dict[Perm, tuple[int, int]] = {}
        for x in frontier:
            px = elements[x]
            for s, g in enumerate(gens):
                y = px.compose(g)
                if y not in index and y not in layer:
                    layer[y] = (x, s)
        frontier = []
        for y in sorted(layer, key=lambda p: p.images):
            index[y] = len(elements)
            elements.append(y)
            parent.append(layer[y][0])
            via.append(layer[y][1])
            frontier.append(index[y])
            if len(elements) > cap:
                raise OrderCapExceeded(f"group order exceeds cap {cap}")

    n = len(elements)
    # right multiplication by each generator, then every column from its BFS parent
    gen_cols = [[index[elements[i].compose(g)] for i in range(n)] for g in gens]
    cols: list[list[int]] = [list(range(n))]
    for j in range(1, n):
        prev = cols[parent[j]]
        right = gen_cols[via[j]]
        cols.append([right[v] for v in prev])
    cayley = [[cols[j][i] for j in range(n)] for i in range(n)]
    inverse = [0] * n
    for i in range(n):
        row = cayley[i]
        for j in range(n):
            if row[j] == 0:
                inverse[i] = j
                break
    return ConcreteGroup(elements, cayley, inverse, [index[g] for g in gens])


def group_from_table(
    elements: Sequence[Perm], cayley: Sequence[Sequence[int]], generator_indices: Sequence[int]
) -> ConcreteGroup:
    """Wrap an already-known multiplication table; index 0 must be the identity."""
    n = len(elements)
    cayley = [list(row) for row in cayley]
    if cayley[0] != list(range(n)):
        raise ValueError("index 0 must be the identity")
    inverse = [row.index(0) for row in cayley]
    return ConcreteGroup(elements, cayley, inverse, generator_indices)


def element_order(G: ConcreteGroup, i: int) -> int:
    G.check_index(i)
    k, x = 1, i
    row = G.cayley
    while x != 0:
        x = row[x][i]
        k += 1
    return k


def conjugacy_classes(G: ConcreteGroup) -> list[list[int]]:
    """Orbits under conjugation, each sorted, listed by smallest member."""
    seen = [False] * G.order
    classes = []
    gens = G.generator_indices
    for start in range(G.order):
        if seen[start]:
            continue
        orbit = [start]
        seen[start] = True
        for x in orbit:
            for g in gens:
                y = G.conj(x, g)
                if not seen[y]:
                    seen[y] = True
                    orbit.append(y)
        classes.append(sorted(orbit))
    return classes


def p_part(n: int, p: int) -> int:
    out = 1
    while n % p == 0:
        n //= p
        out *= p
    return out


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    return all(p % d for d in range(2, math.isqrt(p) + 1))


def prime_divisors(n: int) -> list[int]:
    return [p for p in range(2, n + 1) if n % p == 0 and is_prime(p)]


def parse_group_text(text: str, max_order: Optional[int] = None) -> ConcreteGroup:
    """Parse the group file format: a degree line, then one generator per line."""
    lines = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if line:
            lines.append(line)
    if not lines:
        raise GroupFormatError("group file is empty")
    try:
        degree = int(lines[0])
    except ValueError:
        raise GroupFormatError(f"first line must be the degree, got {lines[0]!r}") from None
    if degree < 1:
        raise GroupFormatError("degree must be positive")
    gens = [parse_permutation(line, degree) for line in lines[1:]]
    return build_group(gens, degree=degree, max_order=max_order)


def load_group_file(path: str | Path, max_order: Optional[int] = None) -> ConcreteGroup:
    return parse_group_text(Path(path).read_text(), max_order=max_order)
