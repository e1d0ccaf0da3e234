"""Command-line front end.

Exit codes: 0 when every non-skipped claim holds, 1 when any claim
fails, 2 on input or configuration errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Optional, Sequence

from . import classifiers
from .catalog import load_catalog, load_config, resolve_entry
from .factorization import factorizations
from .group import ResiduaError, prime_divisors
from .residuals import membership, parse_formation, residual
from .verify import (
    FAILS,
    dumps_report,
    format_census,
    run_census,
    verify_factorization,
    verify_lemmas,
)

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


def _group(name: str):
    entry = resolve_entry(name)
    return entry.name, entry.group


def cmd_catalog(args) -> int:
    for entry in load_catalog(load_config(args.config)):
        G = entry.group
        flags = []
        if classifiers.is_nilpotent(G):
            flags.append("nilpotent")
        if classifiers.is_supersoluble(G):
            flags.append("supersoluble")
        elif classifiers.is_soluble(G):
            flags.append("soluble")
        print(f"{entry.name:<12} order={G.order:<4} degree={G.degree:<3} {' '.join(flags)}")
    return EXIT_OK


def cmd_check(args) -> int:
    name, G = _group(args.group)
    F = parse_formation(args.cls)
    print(f"{name} in {F}: {'yes' if membership(G, F) else 'no'}")
    return EXIT_OK


def cmd_residual(args) -> int:
    name, G = _group(args.group)
    F = parse_formation(args.cls)
    R = residual(G, F, method="generic" if args.generic else "auto")
    print(f"{name}^{F}: order {R.order}, generated by {R.describe()}")
    return EXIT_OK


def cmd_factorize(args) -> int:
    name, G = _group(args.group)
    facts = factorizations(G, proper=args.proper, supersoluble=args.supersoluble,
                           mutually_permutable=args.mp, p=args.p)
    for F in facts:
        tags = []
        if F.mutually_permutable:
            tags.append("MP")
        if F.supersoluble_factors:
            tags.append("U-factors")
        if not F.proper:
            tags.append("improper")
        print(f"{F.describe()}  [{', '.join(tags)}]")
    print(f"{len(facts)} factorization(s) of {name}")
    return EXIT_OK


def cmd_verify(args) -> int:
    name, G = _group(args.group)
    run_all = not (args.t1 or args.t2 or args.lemmas)
    t1 = args.t1 or run_all
    t2 = args.t2 or (prime_divisors(G.order) if run_all else [])
    lemmas = args.lemmas or run_all
    records = []
    if lemmas:
        for v in verify_lemmas(G):
            records.append((None, v))
    for F in factorizations(G):
        for v in verify_factorization(F, t1=t1, t2=t2, lemmas=lemmas):
            records.append((F.describe(), v))
    failed = False
    for fact, v in records:
        if v.status == FAILS:
            failed = True
        if v.status == "skipped" and not args.show_skipped:
            continue
        where = fact or "(group)"
        orders = " ".join(f"|{k}|={n}" for k, n in v.witness_orders.items())
        print(f"{v.claim:<7} {v.status:<7} {where}  {orders}{('  ' + v.note) if v.note else ''}")
        if v.witness:
            for k, desc in v.witness.items():
                print(f"          {k} = {desc}")
    counts = {s: sum(v.status == s for _, v in records) for s in ("holds", "fails", "skipped")}
    print(f"{name}: holds={counts['holds']} fails={counts['fails']} skipped={counts['skipped']}")
    if args.json:
        payload = [
            {"group": name, "factorization": fact, "claim": v.claim, "status": v.status,
             "witness_orders": v.witness_orders, **({"witness": v.witness} if v.witness else {})}
            for fact, v in records
        ]
        Path(args.json).write_text(json.dumps(payload, indent=1, ensure_ascii=False) + "\n")
    return EXIT_FAIL if failed else EXIT_OK


def cmd_census(args) -> int:
    cfg = load_config(args.config)
    entries = load_catalog(cfg)
    jobs = args.jobs if args.jobs is not None else int(cfg.get("jobs", 1))
    report = run_census(entries, jobs=jobs, include_skipped=args.include_skipped)
    if args.json:
        Path(args.json).write_text(dumps_report(report))
    if not args.quiet:
        sys.stdout.write(format_census(report))
    return EXIT_FAIL if report["totals"]["fails"] else EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="residua", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    cat = sub.add_parser("catalog", help="list catalog groups")
    cat.add_argument("action", choices=["list"])
    cat.add_argument("--config", help="JSON catalog config")
    cat.set_defaults(func=cmd_catalog)

    for cmd, func, helptext in (
        ("check", cmd_check, "test membership in a group class"),
        ("residual", cmd_residual, "compute a formation residual"),
    ):
        p = sub.add_parser(cmd, help=helptext)
        p.add_argument("group", help="builtin name (e.g. 'S4', 'S3 x C2') or group file")
        p.add_argument("--class", dest="cls", required=True, help="A, N, U, E, pU:<p>, pN:<p> or X*F")
        if cmd == "residual":
            p.add_argument("--generic", action="store_true", help="force the lattice-filter engine")
        p.set_defaults(func=func)

    fac = sub.add_parser("factorize", help="enumerate factorizations G = AB")
    fac.add_argument("group")
    fac.add_argument("--mp", action="store_true", help="mutually permutable only")
    fac.add_argument("--supersoluble", action="store_true", help="supersoluble factors only")
    fac.add_argument("--proper", action="store_true", help="exclude A = G or B = G")
    fac.add_argument("--p", type=int, help="p-supersoluble factors only")
    fac.set_defaults(func=cmd_factorize)

    ver = sub.add_parser("verify", help="check theorems and lemmas on one group")
    ver.add_argument("group")
    ver.add_argument("--t1", action="store_true")
    ver.add_argument("--t2", type=int, action="append", metavar="P")
    ver.add_argument("--lemmas", action="store_true")
    ver.add_argument("--show-skipped", action="store_true")
    ver.add_argument("--json", metavar="OUT")
    ver.set_defaults(func=cmd_verify)

    cen = sub.add_parser("census", help="verify every catalog group")
    cen.add_argument("--config", help="JSON catalog config")
    cen.add_argument("--json", metavar="OUT", help="write the structured report here")
    cen.add_argument("--jobs", type=int, help="worker processes")
    cen.add_argument("--include-skipped", action="store_true", help="keep skipped records in the JSON")
    cen.add_argument("--quiet", action="store_true")
    cen.set_defaults(func=cmd_census)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ResiduaError, ValueError, OSError) as exc:
        print(f"residua: error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
