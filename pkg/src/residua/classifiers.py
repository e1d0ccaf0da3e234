"""Membership tests for the nilpotent, soluble, supersoluble, p-supersoluble
and p-nilpotent classes, plus chief series."""

from __future__ import annotations

from dataclasses import dataclass

from .group import ConcreteGroup, element_order, is_prime, p_part
from .subgroups import (
    Subgroup,
    SubgroupSeries,
    derived_series,
    generated_subgroup,
    lower_central_series,
    normal_subgroups,
    trivial_subgroup,
)


@dataclass(frozen=True)
class ChiefFactorProfile:
    series: SubgroupSeries
    factor_orders: tuple[int, ...]


def chief_series(G: ConcreteGroup) -> ChiefFactorProfile:
    """Ascending chief series ``1 = N0 < N1 < ... < Nk = G``.

    Each step takes the first normal subgroup of ``G`` (in (order, members)
    order) strictly containing the current term; by correspondence its
    image is a minimal normal subgroup of the current quotient.
    """
    hit = G.cache.get("chief")
    if hit is not None:
        return hit
    normals = normal_subgroups(G)
    terms = [trivial_subgroup(G)]
    while terms[-1].order < G.order:
        cur = terms[-1].mask
        nxt = next(M for M in normals if M.mask != cur and cur & ~M.mask == 0)
        terms.append(nxt)
    orders = tuple(b.order // a.order for a, b in zip(terms, terms[1:]))
    profile = ChiefFactorProfile(SubgroupSeries(G, tuple(terms), "chief"), orders)
    G.cache["chief"] = profile
    return profile


def is_nilpotent(G: ConcreteGroup) -> bool:
    return lower_central_series(G).last.is_trivial


def is_soluble(G: ConcreteGroup) -> bool:
    return derived_series(G).last.is_trivial


def is_supersoluble(G: ConcreteGroup) -> bool:
    return all(is_prime(f) for f in chief_series(G).factor_orders)


def _require_prime(p: int) -> None:
    if not is_prime(p):
        raise ValueError(f"{p} is not a prime")


def is_p_supersoluble(G: ConcreteGroup, p: int) -> bool:
    _require_prime(p)
    return all(f == p for f in chief_series(G).factor_orders if f % p == 0)


def p_complement_candidate(G: ConcreteGroup, p: int) -> Subgroup:
    """Subgroup generated by every element of order coprime to ``p``."""
    return generated_subgroup(G, [i for i in range(G.order) if element_order(G, i) % p != 0])


def is_p_nilpotent(G: ConcreteGroup, p: int) -> bool:
    """True iff ``G`` has a normal p-complement.

    A normal p-complement, if present, consists of exactly the p'-elements,
    so it exists iff those elements generate a group of the p'-part order.
    """
    _require_prime(p)
    return p_complement_candidate(G, p).order == G.order // p_part(G.order, p)
