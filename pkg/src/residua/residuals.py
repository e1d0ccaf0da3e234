"""Formation descriptors and residual computation.

A residual ``G^F`` is the smallest normal subgroup of ``G`` whose quotient
lies in ``F``.  The generic engine filters the full normal-subgroup
lattice; the abelian, nilpotent and composite classes also have fast
paths that are checked against it.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from . import classifiers
from .group import ConcreteGroup, is_prime
from .subgroups import (
    Subgroup,
    as_group,
    derived_subgroup,
    embed,
    lower_central_series,
    normal_subgroups,
    quotient_group,
)

__all__ = ["FormationSpec", "parse_formation", "membership", "normal_subgroups", "residual"]

_SIMPLE = ("A", "N", "U", "E")
_PRIMED = ("pU", "pN")


@dataclass(frozen=True)
class FormationSpec:
    """One of the group classes A, N, U, pU(p), pN(p) = E_{p'}N_p, E, or a
    product ``X*F = {G : G^F in X}``."""

    kind: str
    p: Optional[int] = None
    left: Optional["FormationSpec"] = None
    right: Optional["FormationSpec"] = None

    def __post_init__(self) -> None:
        if self.kind in _SIMPLE:
            if self.p is not None or self.left or self.right:
                raise ValueError(f"class {self.kind} takes no parameters")
        elif self.kind in _PRIMED:
            if self.p is None or not is_prime(self.p):
                raise ValueError(f"class {self.kind} needs a prime, got {self.p!r}")
        elif self.kind == "composite":
            if self.left is None or self.right is None:
                raise ValueError("composite class needs two factors")
        else:
            raise ValueError(f"unknown class kind {self.kind!r}")

    @classmethod
    def product(cls, left: "FormationSpec", right: "FormationSpec") -> "FormationSpec":
        return cls("composite", left=left, right=right)

    def __str__(self) -> str:
        if self.kind in _PRIMED:
            return f"{self.kind}:{self.p}"
        if self.kind == "composite":
            return f"{self.left}*{self.right}"
        return self.kind


ABELIAN = FormationSpec("A")
NILPOTENT = FormationSpec("N")
SUPERSOLUBLE = FormationSpec("U")
ALL_GROUPS = FormationSpec("E")


def p_supersoluble(p: int) -> FormationSpec:
    return FormationSpec("pU", p)


def p_nilpotent(p: int) -> FormationSpec:
    return FormationSpec("pN", p)


def parse_formation(text: str) -> FormationSpec:
    """Parse ``A``, ``N``, ``U``, ``E``, ``pU:<p>``, ``pN:<p>`` or ``X*F``."""
    text = text.strip()
    if "*" in text:
        head, tail = text.split("*", 1)
        return FormationSpec.product(parse_formation(head), parse_formation(tail))
    if text in _SIMPLE:
        return FormationSpec(text)
    for kind in _PRIMED:
        if text.startswith(kind + ":"):
            raw = text[len(kind) + 1:]
            if not raw.isdigit():
                raise ValueError(f"bad prime in class name {text!r}")
            return FormationSpec(kind, int(raw))
    raise ValueError(f"unknown class name {text!r}")


def membership(G: ConcreteGroup, F: FormationSpec) -> bool:
    kind = F.kind
    if kind == "E":
        return True
    if kind == "A":
        return G.is_abelian
    if kind == "N":
        return classifiers.is_nilpotent(G)
    if kind == "U":
        return classifiers.is_supersoluble(G)
    if kind == "pU":
        return classifiers.is_p_supersoluble(G, F.p)
    if kind == "pN":
        return classifiers.is_p_nilpotent(G, F.p)
    R = residual(G, F.right)
    H, _ = as_group(R)
    return membership(H, F.left)


def residual_generic(G: ConcreteGroup, F: FormationSpec) -> Subgroup:
    """Intersection of the minimal normal ``N`` with ``G/N`` in ``F``."""
    admissible = [N for N in normal_subgroups(G) if membership(quotient_group(G, N).target, F)]
    minimal = [N for N in admissible if not any(M < N for M in admissible)]
    mask = (1 << G.order) - 1
    for N in minimal:
        mask &= N.mask
    out = Subgroup(G, mask)
    if out not in admissible:
        raise RuntimeError(f"admissible normal subgroups for {F} are not closed under intersection")
    return out


def residual(G: ConcreteGroup, F: FormationSpec, method: str = "auto") -> Subgroup:
    """``G^F`` as a subgroup of ``G``.

    ``method="generic"`` forces the lattice filter even where a fast path
    exists; ``"auto"`` uses the derived subgroup for A, the stable lower
    central term for N, and residual-of-residual for composites.
    """
    if method not in ("auto", "generic"):
        raise ValueError(f"unknown residual method {method!r}")
    key = (str(F), method)
    store = G.cache.setdefault("residuals", {})
    hit = store.get(key)
    if hit is not None:
        return hit
    if method == "generic" or F.kind in ("U", "pU", "pN"):
        out = residual_generic(G, F)
    elif F.kind == "E":
        out = Subgroup(G, 1)
    elif F.kind == "A":
        out = derived_subgroup(G)
    elif F.kind == "N":
        out = lower_central_series(G).last
    else:
        inner = residual(G, F.right)
        H, _ = as_group(inner)
        out = embed(inner, residual(H, F.left))
    store[key] = out
    return out


def residual_of(H: Subgroup, F: FormationSpec, method: str = "auto") -> Subgroup:
    """``H^F`` computed with ``H`` as a group in its own right, mapped back."""
    local, _ = as_group(H)
    return embed(H, residual(local, F, method))
