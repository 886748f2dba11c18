"""Command-line interface: classification, skeleton enumeration, curve
analysis, and the verification suite.

Exit codes: 0 success, 1 verification mismatch, 2 input error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction
from typing import List, Optional

from . import catalog, dessins, stability, weierstrass
from .exactcore import RatPoly
from .rootsystems import parse_singularities, print_singularities


def _threads() -> int:
    try:
        return max(1, int(os.environ.get("SEXTIC_THREADS", "1")))
    except ValueError:
        return 1


def _poly_str(p: RatPoly) -> str:
    if p.is_zero():
        return "0"
    terms = []
    for i, c in enumerate(p.coeffs):
        if c == 0:
            continue
        if i == 0:
            terms.append(str(c))
        else:
            x = "x" if i == 1 else f"x^{i}"
            terms.append(x if c == 1 else f"{c}*{x}")
    return " + ".join(terms).replace("+ -", "- ")


def _emit(report: dict, fmt: str) -> None:
    if fmt == "json":
        print(json.dumps(report, indent=2, sort_keys=True))
    else:
        _emit_md(report)


def _emit_md(report: dict) -> None:
    print(f"## {report['command']}")
    rows = report.get("rows", [])
    if rows:
        cols = list(rows[0].keys())
        print("| " + " | ".join(cols) + " |")
        print("|" + "|".join("---" for _ in cols) + "|")
        for r in rows:
            print("| " + " | ".join(str(r[c]) for c in cols) + " |")
    for k, v in report.get("verdicts", {}).items():
        print(f"- {k}: {v}")


# ---------------------------------------------------------------------------
# classify


def _classify_rows(verdicts) -> List[dict]:
    rows = []
    for v in verdicts:
        for r in v.rows:
            rows.append(
                {
                    "singularities": r.singularities,
                    "family": r.family_tag,
                    "kernel_orbit": [list(g) for g in r.kernel_orbit],
                    "orbit_size": r.orbit_size,
                    "group_order": r.report.order,
                    "group_label": r.report.label,
                    "kappa_order": r.report.kappa_order,
                    "kappa_faithful": r.report.kappa_faithful,
                    "orbits": [list(o) for o in r.report.orbit_partition],
                    "expected": r.expected_label,
                    "matches_expected": r.matches_expected,
                }
            )
        if not v.rows:
            rows.append(
                {
                    "singularities": v.singularities,
                    "family": v.family_tag,
                    "kernel_orbit": None,
                    "orbit_size": 0,
                    "group_order": None,
                    "group_label": None,
                    "kappa_order": None,
                    "kappa_faithful": None,
                    "orbits": None,
                    "expected": v.expected_label,
                    "matches_expected": False,
                }
            )
    return rows


def cmd_classify(args) -> int:
    fams = catalog.families()
    if args.set:
        want = print_singularities(parse_singularities(args.set))
        fams = [f for f in fams if f.essential == want]
        if not fams:
            print(f"unknown singularity set: {args.set}", file=sys.stderr)
            return 2
    with ThreadPoolExecutor(max_workers=_threads()) as pool:
        verdicts = list(
            pool.map(
                lambda f: stability.classify_family(
                    f.essential, f.tag, f.kernel_spec, f.expected_group
                ),
                fams,
            )
        )
    report = {
        "command": "classify",
        "schema": 1,
        "inputs": {"set": args.set or "all"},
        "rows": _classify_rows(verdicts),
        "verdicts": {
            v.singularities: ("matches" if v.matches_theorem else "MISMATCH")
            for v in verdicts
        },
    }
    _emit(report, args.format)
    return 0 if all(v.matches_theorem for v in verdicts) else 1


# ---------------------------------------------------------------------------
# dessins


def cmd_dessins(args) -> int:
    rows = []
    verdicts = {}
    if args.table1:
        for r in dessins.table1():
            rows.append(
                {
                    "fibers": dessins.print_fibers(r.fibers),
                    "irreducible": r.irreducible,
                    "isotrivial_degeneration": (
                        dessins.print_fibers(r.isotrivial_degeneration)
                        if r.isotrivial_degeneration
                        else None
                    ),
                }
            )
        verdicts["rows"] = len(rows)
        verdicts["irreducible"] = sum(1 for r in rows if r["irreducible"])
    else:
        if args.k is None:
            print("dessins needs --table1 or --k", file=sys.stderr)
            return 2
        max_unstable = 0 if args.stable else args.max_unstable
        sks = dessins.enumerate_skeletons(args.k, max_unstable)
        for sk in sks:
            rows.append(
                {
                    "fibers": dessins.print_fibers(dessins.fiber_multiset(sk)),
                    "components": dessins.component_count(sk),
                    "mirror_symmetric": sk.is_mirror_symmetric(),
                    "map": sk.to_json(),
                }
            )
        verdicts["skeletons"] = len(sks)
    report = {
        "command": "dessins",
        "schema": 1,
        "inputs": {
            "k": args.k,
            "max_unstable": args.max_unstable,
            "stable": args.stable,
            "table1": args.table1,
        },
        "rows": rows,
        "verdicts": verdicts,
    }
    _emit(report, args.format)
    return 0


# ---------------------------------------------------------------------------
# curve


def cmd_curve(args) -> int:
    try:
        with open(args.file) as fh:
            data = json.load(fh)
        c = weierstrass.curve_from_json(data)
    except (OSError, ValueError, KeyError, TypeError) as exc:
        print(f"bad curve file: {exc}", file=sys.stderr)
        return 2
    try:
        delta = weierstrass.discriminant(c)
        num, den = weierstrass.j_invariant(c)
        fibers = weierstrass.fiber_analysis(c)
        has_nonsimple = any(f.type is dessins.NON_SIMPLE for f in fibers)
        mu = None if has_nonsimple else weierstrass.milnor(c)
        report = {
            "command": "curve",
            "schema": 1,
            "inputs": {"file": os.path.basename(args.file), "k": c.k},
            "rows": [
                {
                    "place": str(r.place) if r.place == weierstrass.INFINITY else _poly_str(r.place),
                    "points": r.count,
                    "a": r.mults[0],
                    "b": r.mults[1],
                    "d": r.mults[2],
                    "type": r.type.label(),
                }
                for r in fibers
            ],
            "verdicts": {
                "delta": _poly_str(delta),
                "j_num": _poly_str(num),
                "j_den": _poly_str(den),
                "milnor": mu,
                "isotrivial": weierstrass.is_isotrivial(c),
                "stable": weierstrass.is_stable(c),
                "maximal": weierstrass.is_maximal(c),
            },
        }
    except weierstrass.ZeroDiscriminant as exc:
        print(f"degenerate curve: {exc}", file=sys.stderr)
        return 2
    _emit(report, args.format)
    return 0


# ---------------------------------------------------------------------------
# dump-families


def cmd_dump_families(args) -> int:
    rows = []
    for f in catalog.families():
        p, rank = f.kernel_spec
        rows.append(
            {
                "tag": f.tag,
                "essential": f.essential,
                "kernel_p": p,
                "kernel_rank": rank,
                "expected_group": f.expected_group,
                "note": f.note,
            }
        )
    report = {
        "command": "dump-families",
        "schema": 1,
        "inputs": {},
        "rows": rows,
        "verdicts": {"families": len(rows)},
    }
    _emit(report, args.format)
    return 0


# ---------------------------------------------------------------------------
# verify


def _check_theorem() -> List[str]:
    failures = []
    for v in stability.classify_catalog():
        if not v.matches_theorem:
            failures.append(f"classification mismatch for {v.singularities}")
    return failures


def _check_table1() -> List[str]:
    failures = []
    rows = dessins.table1()
    if len(rows) != 12:
        failures.append(f"table has {len(rows)} rows, wanted 12")
    irr = sum(1 for r in rows if r.irreducible)
    if irr != 5:
        failures.append(f"{irr} irreducible rows, wanted 5")
    if len(dessins.enumerate_skeletons(2, 0)) != 6:
        failures.append("stable k=2 skeleton count is not 6")
    if len(dessins.enumerate_skeletons(1, 1)) != 5:
        failures.append("k=1 skeleton count (<=1 unstable) is not 5")
    return failures


def _check_curve() -> List[str]:
    failures = []
    g2 = RatPoly([Fraction(-3, 4), 0, 0, -6])
    g3 = RatPoly([Fraction(-1, 4), 0, 0, 5, 0, 0, 2])
    c = weierstrass.WeierstrassCurve(2, g2, g3)
    if weierstrass.discriminant(c) != RatPoly([0, 0, 0, 108]) * RatPoly([-1, 0, 0, 1]) ** 3:
        failures.append("four-cusp curve: wrong discriminant")
    types = weierstrass.fiber_types(c)
    if sorted(t.label() for t in types) != ["A2~"] * 4:
        failures.append("four-cusp curve: fiber set is not 4A2~")
    if weierstrass.milnor(c) != 8 or not weierstrass.is_maximal(c) or weierstrass.is_isotrivial(c):
        failures.append("four-cusp curve: wrong verdicts")
    return failures


def _check_budget() -> List[str]:
    failures = []
    for k, mx in ((1, 1), (2, 0)):
        for sk in dessins.enumerate_skeletons(k, mx):
            deg = sum(f.discriminant_degree() for f in dessins.fiber_multiset(sk))
            if deg != 6 * k:
                failures.append(f"degree budget violated for a k={k} skeleton")
    return failures


_CHECKS = {
    "theorem": _check_theorem,
    "table1": _check_table1,
    "curve": _check_curve,
    "budget": _check_budget,
}


def cmd_verify(args) -> int:
    names = args.only.split(",") if args.only else list(_CHECKS)
    bad_names = [n for n in names if n not in _CHECKS]
    if bad_names:
        print(f"unknown checks: {', '.join(bad_names)}", file=sys.stderr)
        return 2
    verdicts = {}
    ok = True
    for name in names:
        failures = _CHECKS[name]()
        verdicts[name] = "pass" if not failures else "; ".join(failures)
        ok = ok and not failures
    report = {
        "command": "verify",
        "schema": 1,
        "inputs": {"only": args.only},
        "rows": [],
        "verdicts": verdicts,
    }
    _emit(report, args.format)
    return 0 if ok else 1


# ---------------------------------------------------------------------------


def main(argv: Optional[List[str]] = None) -> int:
    ap = argparse.ArgumentParser(prog="sexticsym")
    ap.add_argument("--format", choices=("json", "md"), default="json")
    sub = ap.add_subparsers(dest="cmd", required=True)

    p = sub.add_parser("classify", help="stable symmetry groups of candidate families")
    p.add_argument("--all", action="store_true", help="classify the full catalog (default)")
    p.add_argument("--set", help="restrict to one singularity set, e.g. 3E6")
    p.add_argument("--kernels", choices=("all",), default="all")
    p.set_defaults(fn=cmd_classify)

    p = sub.add_parser("dessins", help="skeleton enumeration and the fiber table")
    p.add_argument("--k", type=int)
    p.add_argument("--max-unstable", type=int, default=0)
    p.add_argument("--stable", action="store_true")
    p.add_argument("--table1", action="store_true")
    p.set_defaults(fn=cmd_dessins)

    p = sub.add_parser("curve", help="analyze a Weierstrass curve file")
    p.add_argument("file")
    p.set_defaults(fn=cmd_curve)

    p = sub.add_parser("verify", help="run the verification suite")
    p.add_argument("--only", help="comma-separated check names")
    p.set_defaults(fn=cmd_verify)

    p = sub.add_parser("dump-families", help="print the family catalog")
    p.set_defaults(fn=cmd_dump_families)

    args = ap.parse_args(argv)
    return args.fn(args)


if __name__ == "__main__":
    sys.exit(main())
