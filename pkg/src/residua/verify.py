"""Theorem and lemma checks over factorizations, and the catalog census.

Every check returns a :class:`Verdict`; unmet hypotheses are reported as
``skipped`` rather than raised, so a census never aborts on an
inapplicable instance.
"""

from __future__ import annotations

import json
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Iterable, Optional

from . import classifiers, config
from .catalog import CatalogEntry, resolve_entry
from .factorization import CensusCapExceeded, Factorization, all_subgroups, factorizations, is_product
from .group import ConcreteGroup, prime_divisors
from .residuals import (
    NILPOTENT,
    SUPERSOLUBLE,
    ABELIAN,
    FormationSpec,
    p_nilpotent,
    p_supersoluble,
    residual,
    residual_of,
)
from .subgroups import (
    Subgroup,
    as_group,
    commutator_subgroup,
    derived_subgroup,
    embed,
    is_normal,
    is_subnormal,
    join,
    normal_closure,
    normal_subgroups,
    quotient_group,
)

HOLDS, FAILS, SKIPPED = "holds", "fails", "skipped"


@dataclass
class Verdict:
    claim: str
    status: str
    witness_orders: dict = field(default_factory=dict)
    witness: dict = field(default_factory=dict)
    note: str = ""


@dataclass
class VerificationReport:
    group: str
    factorization: Optional[str]
    verdicts: list[Verdict]

    @property
    def failed(self) -> bool:
        return any(v.status == FAILS for v in self.verdicts)


def _verdict(claim: str, ok: bool, orders: dict, subgroups: dict[str, Subgroup]) -> Verdict:
    if ok:
        return Verdict(claim, HOLDS, orders)
    return Verdict(claim, FAILS, orders, {k: H.describe() for k, H in subgroups.items()})


def _sub_is(H: Subgroup, test, *args) -> bool:
    local, _ = as_group(H)
    return test(local, *args)


# -- theorems -------------------------------------------------------------


def _theorem_check(F: Factorization, label: str, big: FormationSpec, small: FormationSpec) -> Verdict:
    G, A, B = F.parent, F.A, F.B
    top = residual(G, big)
    D = derived_subgroup(G)
    AB = commutator_subgroup(G, A, B)
    DX = residual_of(D, small)
    ABX = residual_of(AB, small)
    names = (f"G^{big}", f"(G')^{small}", f"[A,B]^{small}")
    orders = {names[0]: top.order, names[1]: DX.order, names[2]: ABX.order, "G'": D.order, "[A,B]": AB.order}
    ok = top == DX == ABX and is_normal(G, DX) and is_normal(G, ABX)
    return _verdict(label, ok, orders, dict(zip(names, (top, DX, ABX))))


def verify_theorem(F: Factorization, mode: str = "T1", p: Optional[int] = None) -> list[Verdict]:
    """Theorem check plus its corollary for one factorization.

    ``mode="T1"``: ``G^U = (G')^N = [A,B]^N`` and the nilpotent-commutator
    corollary.  ``mode="T2"`` with prime ``p``: the same with ``pU`` and
    ``E_{p'}N_p``.
    """
    G = F.parent
    if mode == "T1":
        label, cor = "T1", "C1.1"
        applies = F.supersoluble_factors and F.mutually_permutable
        big, small = SUPERSOLUBLE, NILPOTENT
        in_small = classifiers.is_nilpotent
        in_big = lambda H: classifiers.is_supersoluble(H)  # noqa: E731
        reason = "factors not both supersoluble" if not F.supersoluble_factors else "not mutually permutable"
    elif mode == "T2":
        if p is None:
            raise ValueError("T2 needs a prime")
        label, cor = f"T2:{p}", f"C2.1:{p}"
        hyp = p in F.p_supersoluble_factors or G.order % p != 0
        applies = hyp and F.mutually_permutable
        big, small = p_supersoluble(p), p_nilpotent(p)
        in_small = lambda H: classifiers.is_p_nilpotent(H, p)  # noqa: E731
        in_big = lambda H: classifiers.is_p_supersoluble(H, p)  # noqa: E731
        reason = f"factors not both {p}-supersoluble" if not hyp else "not mutually permutable"
    else:
        raise ValueError(f"unknown theorem mode {mode!r}")

    if not applies:
        return [Verdict(label, SKIPPED, note=reason), Verdict(cor, SKIPPED, note=reason)]
    out = [_theorem_check(F, label, big, small)]
    AB = commutator_subgroup(G, F.A, F.B)
    if not _sub_is(AB, in_small):
        out.append(Verdict(cor, SKIPPED, {"[A,B]": AB.order}, note=f"[A,B] not in {small}"))
    else:
        ok = in_big(G)
        out.append(_verdict(cor, ok, {"[A,B]": AB.order, f"G^{big}": residual(G, big).order}, {"[A,B]": AB}))
    return out


# -- lemmas ---------------------------------------------------------------


def _lemma1(F: Factorization) -> list[Verdict]:
    G, A, B = F.parent, F.A, F.B
    AB = commutator_subgroup(G, A, B)
    out = [_verdict("L1.1", is_normal(G, AB), {"[A,B]": AB.order}, {"[A,B]": AB})]

    checked, bad = 0, None
    for X in (A, B):
        local, _ = as_group(X)
        for N in normal_subgroups(local):
            J = join(embed(X, N), AB)
            checked += 1
            if not is_normal(G, J):
                bad = (embed(X, N), J)
                break
        if bad:
            break
    if bad is None:
        out.append(Verdict("L1.2", HOLDS, {"instances": checked}))
    else:
        out.append(_verdict("L1.2", False, {"instances": checked, "A1": bad[0].order}, {"A1": bad[0], "A1[A,B]": bad[1]}))

    D = derived_subgroup(G)
    prod = join(derived_subgroup(G, A), join(derived_subgroup(G, B), AB))
    out.append(_verdict("L1.3", D == prod, {"G'": D.order, "A'B'[A,B]": prod.order}, {"G'": D, "A'B'[A,B]": prod}))
    return out


def _lemma4(F: Factorization) -> Verdict:
    if not F.supersoluble_factors:
        return Verdict("L4", SKIPPED, note="factors not both supersoluble")
    G = F.parent
    GU = residual(G, SUPERSOLUBLE)
    AB = commutator_subgroup(G, F.A, F.B)
    return _verdict("L4", GU <= AB, {"G^U": GU.order, "[A,B]": AB.order}, {"G^U": GU, "[A,B]": AB})


def _quotient_classes(G: ConcreteGroup) -> list[FormationSpec]:
    return [ABELIAN, NILPOTENT, SUPERSOLUBLE] + [p_nilpotent(p) for p in prime_divisors(G.order)]


def _lemma2(G: ConcreteGroup) -> list[Verdict]:
    out = []
    checked, bad = 0, None
    for K in normal_subgroups(G):
        Q = quotient_group(G, K)
        for F in _quotient_classes(G):
            lhs = Q.push(residual(G, F))
            rhs = residual(Q.target, F)
            checked += 1
            if lhs != rhs:
                bad = (K, F, lhs, rhs)
                break
        if bad:
            break
    if bad is None:
        out.append(Verdict("L2.1", HOLDS, {"instances": checked}))
    else:
        K, F, lhs, rhs = bad
        out.append(
            Verdict(
                "L2.1",
                FAILS,
                {"K": K.order, "G^F K/K": lhs.order, "(G/K)^F": rhs.order},
                {"K": K.describe(), "class": str(F), "G^F K/K": lhs.describe(), "(G/K)^F": rhs.describe()},
            )
        )

    D = derived_subgroup(G)
    ok, orders, subs = True, {}, {}
    inner = [NILPOTENT] + [p_nilpotent(p) for p in prime_divisors(G.order)]
    for X in inner:
        comp = FormationSpec.product(X, ABELIAN)
        lhs = residual(G, comp, method="generic")
        rhs = residual_of(D, X)
        orders[f"G^({comp})"] = lhs.order
        orders[f"(G')^{X}"] = rhs.order
        if lhs != rhs:
            ok = False
            subs.update({f"G^({comp})": lhs, f"(G')^{X}": rhs})
    out.append(_verdict("L2.2", ok, orders, subs))

    ok, orders, subs = True, {}, {}
    na = residual(G, FormationSpec.product(NILPOTENT, ABELIAN))
    gu = residual(G, SUPERSOLUBLE)
    orders.update({"G^NA": na.order, "G^U": gu.order})
    if not na <= gu:
        ok = False
        subs.update({"G^NA": na, "G^U": gu})
    for p in prime_divisors(G.order):
        pu, pn = residual(G, p_supersoluble(p)), residual(G, p_nilpotent(p))
        orders.update({f"G^pU:{p}": pu.order, f"G^pN:{p}": pn.order})
        if not pu <= pn:
            ok = False
            subs.update({f"G^pU:{p}": pu, f"G^pN:{p}": pn})
    out.append(_verdict("L2.3", ok, orders, subs))
    return out


def _lemma3(G: ConcreteGroup) -> Verdict:
    try:
        subs = all_subgroups(G)
    except CensusCapExceeded:
        return Verdict("L3", SKIPPED, note="group above census cap")
    primes = prime_divisors(G.order)
    checked = 0
    for H in subs:
        if not is_subnormal(G, H):
            continue
        C = normal_closure(G, H)
        tests = [("N", classifiers.is_nilpotent, ())] + [
            (f"pN:{p}", classifiers.is_p_nilpotent, (p,)) for p in primes
        ]
        for name, test, args in tests:
            if _sub_is(H, test, *args):
                checked += 1
                if not _sub_is(C, test, *args):
                    return Verdict(
                        "L3",
                        FAILS,
                        {"H": H.order, "H^G": C.order},
                        {"H": H.describe(), "H^G": C.describe(), "class": name},
                    )
    return Verdict("L3", HOLDS, {"instances": checked})


def _lemma5(G: ConcreteGroup) -> Verdict:
    normals = normal_subgroups(G)
    classes = [NILPOTENT] + [p_nilpotent(p) for p in prime_divisors(G.order)]
    checked = 0
    for i, A in enumerate(normals):
        for B in normals[i:]:
            if not is_product(G, A, B):
                continue
            for X in classes:
                lhs = residual(G, X)
                rhs = join(residual_of(A, X), residual_of(B, X))
                checked += 1
                if lhs != rhs:
                    return Verdict(
                        "L5",
                        FAILS,
                        {"A": A.order, "B": B.order, f"G^{X}": lhs.order, "A^X B^X": rhs.order},
                        {"A": A.describe(), "B": B.describe(), "class": str(X), f"G^{X}": lhs.describe(),
                         "A^X B^X": rhs.describe()},
                    )
    return Verdict("L5", HOLDS, {"instances": checked})


def verify_lemmas(G: ConcreteGroup, F: Optional[Factorization] = None) -> list[Verdict]:
    """Factorization lemmas (L1.*, L4) when ``F`` is given, otherwise the
    group-level lemmas (L2.*, L3, L5)."""
    if F is not None:
        return _lemma1(F) + [_lemma4(F)]
    return _lemma2(G) + [_lemma3(G), _lemma5(G)]


# -- census ---------------------------------------------------------------


def relaxation_probe(F: Factorization) -> Optional[dict]:
    """Non-mutually-permutable supersoluble factorization with ``G^U != (G')^N``."""
    if not F.supersoluble_factors or F.mutually_permutable:
        return None
    G = F.parent
    GU = residual(G, SUPERSOLUBLE)
    DN = residual_of(derived_subgroup(G), NILPOTENT)
    if GU == DN:
        return None
    return {"factorization": F.describe(), "G^U": GU.order, "(G')^N": DN.order}


def verify_factorization(F: Factorization, t1: bool = True, t2: Iterable[int] = (), lemmas: bool = True) -> list[Verdict]:
    out = []
    if t1:
        out += verify_theorem(F, "T1")
    for p in t2:
        out += verify_theorem(F, "T2", p)
    if lemmas:
        out += verify_lemmas(F.parent, F)
    return out


def census_group(entry: CatalogEntry | str | dict) -> dict:
    """Full pipeline for one catalog group, as a JSON-ready dict."""
    if not isinstance(entry, CatalogEntry):
        entry = resolve_entry(entry)
    G = entry.group
    records = []
    summary = {"group": entry.name, "order": G.order, "truncated": False}

    def emit(fact: Optional[str], verdicts: list[Verdict]) -> None:
        for v in verdicts:
            records.append(
                {
                    "group": entry.name,
                    "factorization": fact,
                    "claim": v.claim,
                    "status": v.status,
                    "witness_orders": v.witness_orders,
                    **({"witness": v.witness} if v.witness else {}),
                    **({"note": v.note} if v.note else {}),
                }
            )

    emit(None, verify_lemmas(G))
    probe = []
    try:
        facts = factorizations(G)
    except CensusCapExceeded:
        summary["truncated"] = True
        facts = []
    primes = prime_divisors(G.order)
    for F in facts:
        emit(F.describe(), verify_factorization(F, t1=True, t2=primes, lemmas=True))
        hit = relaxation_probe(F)
        if hit:
            probe.append({"group": entry.name, **hit})
    mp_u = sum(F.mutually_permutable and F.supersoluble_factors for F in facts)
    supersoluble = classifiers.is_supersoluble(G)
    summary.update(
        factorizations=len(facts),
        proper=sum(F.proper for F in facts),
        mutually_permutable=sum(F.mutually_permutable for F in facts),
        mp_supersoluble=mp_u,
        supersoluble_group=supersoluble,
        mp_supersoluble_nonsupersoluble_group=0 if supersoluble else mp_u,
    )
    counts: dict[str, int] = {HOLDS: 0, FAILS: 0, SKIPPED: 0}
    for r in records:
        counts[r["status"]] += 1
    summary["verdicts"] = counts
    return {"summary": summary, "records": records, "relaxation_probe": probe}


def _entry_spec(entry: CatalogEntry) -> str | dict:
    if entry.path is not None:
        return {"name": entry.name, "file": str(entry.path)}
    return {"name": entry.name, "builtin": entry.source}


def run_census(entries: list[CatalogEntry], jobs: int = 1, include_skipped: bool = False) -> dict:
    """Census over the catalog; output order follows the catalog regardless of ``jobs``."""
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            parts = list(pool.map(census_group, [_entry_spec(e) for e in entries]))
    else:
        parts = [census_group(e) for e in entries]

    records, probe, groups = [], [], []
    by_claim: dict[str, dict[str, int]] = {}
    for part in parts:
        groups.append(part["summary"])
        probe.extend(part["relaxation_probe"])
        for r in part["records"]:
            family = r["claim"].split(":")[0]
            by_claim.setdefault(family, {HOLDS: 0, FAILS: 0, SKIPPED: 0})[r["status"]] += 1
            if include_skipped or r["status"] != SKIPPED:
                records.append(r)
    totals = {s: sum(c[s] for c in by_claim.values()) for s in (HOLDS, FAILS, SKIPPED)}
    return {
        "caps": {"max_order": config.max_order(), "census_cap": config.census_cap()},
        "groups": groups,
        "claims": dict(sorted(by_claim.items())),
        "totals": totals,
        "truncated": any(g["truncated"] for g in groups),
        "relaxation_probe": probe,
        "records": records,
    }


def dumps_report(report: dict) -> str:
    return json.dumps(report, indent=1, sort_keys=False, ensure_ascii=False) + "\n"


def format_census(report: dict) -> str:
    lines = []
    head = f"{'group':<12} {'|G|':>4} {'fact':>5} {'MP':>5} {'MP-U':>5} {'holds':>6} {'fails':>5} {'skip':>5}"
    lines.append(head)
    lines.append("-" * len(head))
    for g in report["groups"]:
        v = g["verdicts"]
        mark = " (truncated)" if g["truncated"] else ""
        lines.append(
            f"{g['group']:<12} {g['order']:>4} {g['factorizations']:>5} {g['mutually_permutable']:>5} "
            f"{g['mp_supersoluble']:>5} {v['holds']:>6} {v['fails']:>5} {v['skipped']:>5}{mark}"
        )
    lines.append("")
    lines.append("claims:")
    for claim, c in report["claims"].items():
        lines.append(f"  {claim:<5} holds={c['holds']} fails={c['fails']} skipped={c['skipped']}")
    interesting = [g["group"] for g in report["groups"] if g["mp_supersoluble_nonsupersoluble_group"]]
    lines.append("")
    lines.append("non-supersoluble groups with a mutually permutable supersoluble factorization: "
                 + (", ".join(interesting) if interesting else "none"))
    lines.append(f"relaxation probe ({len(report['relaxation_probe'])} factorizations with supersoluble, "
                 "non-mutually-permutable factors and G^U != (G')^N):")
    for hit in report["relaxation_probe"]:
        dn = hit["(G')^N"]
        lines.append(f"  {hit['group']}: {hit['factorization']}  |G^U|={hit['G^U']} |(G')^N|={dn}")
    t = report["totals"]
    lines.append("")
    lines.append(f"total: holds={t['holds']} fails={t['fails']} skipped={t['skipped']}"
                 + (" TRUNCATED" if report["truncated"] else ""))
    return "\n".join(lines) + "\n"
