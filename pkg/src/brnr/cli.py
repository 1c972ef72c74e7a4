"""Command-line front end.

Exit codes: 0 success, 2 input error, 3 cap exceeded, 4 oracle mismatch or
internal identity violation.  All JSON output is canonically ordered and
byte-identical across runs and thread counts.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from .brauer import (
    BrauerReport,
    FieldProfile,
    algebraic_bound,
    bogomolov_multiplier,
    brnr_bound,
    preset,
    real_report,
    simple_group_report,
)
from .catalog import catalog, group_by_name
from .cohomology import (
    DEFAULT_COHOMOLOGY_CAP,
    QMODZ,
    Zmod,
    h2,
    sha1,
    sha2,
)
from .errors import BrnrError, CycFailed, OrderCapExceeded, TheoremViolation
from .groups import (
    FiniteGroup,
    abelianization,
    is_abelian_subset,
    maximal_subgroup_family,
    sylow_subgroup,
)
from .oracle import DEFAULT_DENSE_CAP, h2_dense, h2_dense_qmodz, sweep, sweep_to_json
from .zlattice import factorize

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_CAP = 3
EXIT_MISMATCH = 4


def _cap() -> int:
    env = os.environ.get("BRAUER_CAP")
    return int(env) if env else DEFAULT_COHOMOLOGY_CAP


def _load_group(spec: str) -> FiniteGroup:
    return group_by_name(spec)


def _parse_field(spec: str) -> FieldProfile:
    if spec in ("C", "R", "Q", "Q2"):
        return preset(spec)
    if spec.startswith("Qp:"):
        return preset("Qp", int(spec.split(":", 1)[1]))
    if spec.startswith("custom:"):
        path = Path(spec.split(":", 1)[1])
        return FieldProfile.from_json_obj(json.loads(path.read_text()))
    raise ValueError(f"unknown field spec {spec!r}")


def _parse_coeff(spec: str):
    if spec in ("q", "qz", "qmodz"):
        return QMODZ
    return Zmod(int(spec))


def _emit(obj, as_json: bool, text_lines) -> None:
    if as_json:
        print(json.dumps(obj, indent=2, sort_keys=True))
    else:
        for line in text_lines:
            print(line)


def _factors_str(factors) -> str:
    return " + ".join(f"Z/{d}" for d in factors) if factors else "0"


def cmd_group_info(args) -> int:
    g = _load_group(args.group)
    ab = abelianization(g)
    sylows = {}
    for p in sorted(factorize(g.order)):
        s = sylow_subgroup(g, p)
        sylows[str(p)] = {
            "order": len(s.elements),
            "abelian": is_abelian_subset(g, s.elements),
        }
    families = {}
    for kind in ("cyclic", "bicyclic", "abelian"):
        fam = maximal_subgroup_family(g, kind, cap=max(_cap(), g.order))
        families[kind] = {
            "members": len(fam.members),
            "sizes": sorted(len(m.elements) for m in fam.members),
        }
    obj = {
        "name": g.name or args.group,
        "order": g.order,
        "exponent": g.exponent(),
        "abelian": g.is_abelian(),
        "abelianization": list(ab.factors),
        "sylow": sylows,
        "families": families,
    }
    _emit(obj, args.json, [
        f"group {obj['name']}: order {g.order}, exponent {obj['exponent']}",
        f"abelian: {obj['abelian']}",
        f"abelianization: {_factors_str(ab.factors)}",
        "sylow: " + ", ".join(
            f"p={p}: order {v['order']}"
            + (" (abelian)" if v["abelian"] else " (non-abelian)")
            for p, v in sylows.items()
        ),
        "maximal families: " + ", ".join(
            f"{k}: {v['members']}" for k, v in families.items()
        ),
    ])
    return EXIT_OK


def cmd_b0(args) -> int:
    g = _load_group(args.group)
    group = bogomolov_multiplier(g, cap=_cap())
    obj = {
        "group": g.name or args.group,
        "b0": list(group.invariant_factors),
    }
    lines = [f"B0({obj['group']}) = {_factors_str(group.invariant_factors)}"]
    if args.oracle_check:
        if g.order > DEFAULT_DENSE_CAP:
            h2q = h2(g, QMODZ, cap=_cap())
            from .oracle import certify

            report = certify(h2q, g)
            obj["oracle"] = report.to_json_obj()
            lines.append(
                "oracle certification (dense cap exceeded; cocycle and "
                f"coboundary checks only): match={report.match}"
            )
            if not report.match:
                _emit(obj, args.json, lines + [f"MISMATCH: {report.witness}"])
                return EXIT_MISMATCH
        else:
            main_fp = h2(g, QMODZ, cap=_cap()).group.fingerprint()
            oracle_fp = h2_dense_qmodz(g).fingerprint()
            obj["oracle"] = {
                "h2_main": [list(main_fp[0]), main_fp[1]],
                "h2_dense": [list(oracle_fp[0]), oracle_fp[1]],
                "match": main_fp == oracle_fp,
            }
            lines.append(f"dual-path H^2 check: match={main_fp == oracle_fp}")
            if main_fp != oracle_fp:
                _emit(obj, args.json, lines)
                return EXIT_MISMATCH
    if args.dump_reps:
        res = h2(g, QMODZ, cap=_cap())
        obj["cocycles"] = [_cocycle_dump_obj(g, res.modulus, rep)
                           for rep in res.reps]
    _emit(obj, args.json, lines)
    return EXIT_OK


def _cocycle_dump_obj(g: FiniteGroup, modulus: int, rep) -> dict:
    w = g.order - 1
    vals = {}
    for a in range(1, g.order):
        for b in range(1, g.order):
            v = rep[(a - 1) * w + (b - 1)]
            if v:
                vals[f"{a},{b}"] = int(v)
    return {"modulus": modulus, "cocycle": vals}


def cmd_brnr(args) -> int:
    g = _load_group(args.group)
    profile = _parse_field(args.field)
    ab = abelianization(g)
    if not ab.factors and not profile.mu_all_roots:
        try:
            report = simple_group_report(g, profile, cap=_cap())
        except CycFailed:
            report = brnr_bound(g, profile, cap=_cap())
    else:
        report = brnr_bound(g, profile, cap=_cap())
    obj = report.to_json_obj()
    lines = [
        f"Brnr bound for {obj['inputs']['group']} over {profile.name}: "
        f"{_factors_str(report.group_or_bound.invariant_factors)} "
        f"[{report.status}]",
        "applied: " + ", ".join(report.applied),
    ] + [f"note: {n}" for n in report.notes]
    _emit(obj, args.json, lines)
    return EXIT_OK


def cmd_algebraic_bound(args) -> int:
    g = _load_group(args.group)
    report = algebraic_bound(g, args.r, cap=_cap())
    obj = report.to_json_obj()
    _emit(obj, args.json, [
        f"algebraic bound (r={args.r}) for {obj['inputs']['group']}: "
        f"{_factors_str(report.group_or_bound.invariant_factors)} "
        f"[{report.status}]",
    ] + [f"note: {n}" for n in report.notes])
    return EXIT_OK


def cmd_real(args) -> int:
    g = _load_group(args.group)
    report = real_report(g, cap=_cap())
    obj = report.to_json_obj()
    _emit(obj, args.json, [
        f"real bound for {obj['inputs']['group']}: "
        f"{_factors_str(report.group_or_bound.invariant_factors)} "
        f"[{report.status}]",
        "applied: " + ", ".join(report.applied),
    ] + [f"note: {n}" for n in report.notes])
    return EXIT_OK


def cmd_sha2(args) -> int:
    g = _load_group(args.group)
    coeff = _parse_coeff(args.coeff)
    res = sha2(g, coeff, args.kind, cap=_cap())
    obj = {
        "group": g.name or args.group,
        "coeff": coeff.describe(),
        "kind": args.kind,
        "sha2": list(res.group.invariant_factors),
        "family_sizes": sorted(len(m.elements) for m in res.witness_family.members),
    }
    _emit(obj, args.json, [
        f"Sha2_{args.kind}({obj['group']}, {obj['coeff']}) = "
        f"{_factors_str(res.group.invariant_factors)}",
        f"family: {len(res.witness_family.members)} maximal members",
    ])
    return EXIT_OK


def cmd_sha1(args) -> int:
    g = _load_group(args.group)
    coeff = _parse_coeff(args.coeff)
    group = sha1(g, coeff, args.kind)
    obj = {
        "group": g.name or args.group,
        "coeff": coeff.describe(),
        "kind": args.kind,
        "sha1": list(group.invariant_factors),
    }
    _emit(obj, args.json, [
        f"Sha1_{args.kind}({obj['group']}, {obj['coeff']}) = "
        f"{_factors_str(group.invariant_factors)}"
    ])
    return EXIT_OK


def _parse_grid(spec: str):
    """Grid syntax: 'order<=16,r=2,3,4' or 'order<=12,r=2,q'."""
    max_order = None
    coeffs = []
    for chunk in spec.split(","):
        chunk = chunk.strip()
        if chunk.startswith("order<="):
            max_order = int(chunk[len("order<="):])
        elif chunk.startswith("r="):
            coeffs.append(_parse_coeff(chunk[2:]))
        elif chunk:
            coeffs.append(_parse_coeff(chunk))
    if max_order is None or not coeffs:
        raise ValueError(f"bad grid {spec!r}; expected 'order<=N,r=2,3,...'")
    return max_order, coeffs


def cmd_sweep(args) -> int:
    from .catalog import catalog_groups

    max_order, coeffs = _parse_grid(args.grid)
    cells = []
    for name, g in catalog_groups(max_order=min(max_order, DEFAULT_DENSE_CAP)):
        for coeff in coeffs:
            cells.append((name, g, coeff))
    reports = sweep(cells, par=args.par)
    mismatches = [r for r in reports if not r.match]
    if args.json:
        print(sweep_to_json(reports))
    else:
        for r in reports:
            flag = "ok" if r.match else "MISMATCH"
            print(f"{r.target}: {flag}")
        print(f"{len(reports)} cells, {len(mismatches)} mismatches")
    return EXIT_MISMATCH if mismatches else EXIT_OK


def cmd_catalog(args) -> int:
    rows = []
    for name, entry in sorted(catalog().items(),
                              key=lambda kv: (kv[1].expected_order, kv[0])):
        rows.append({
            "name": name,
            "order": entry.expected_order,
            "description": entry.description,
        })
    _emit(rows, args.json,
          [f"{r['name']:>12}  order {r['order']:>4}  {r['description']}"
           for r in rows])
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="brnr",
        description="Exact Bogomolov-multiplier-type groups and unramified "
                    "Brauer bounds for SL_n/G.",
    )
    ap.add_argument("--json", action="store_true", help="machine output")
    ap.add_argument("--par", type=int, default=1,
                    help="worker threads for independent cells")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("group-info", help="orders, abelianization, families")
    p.add_argument("group")
    p.set_defaults(func=cmd_group_info)

    p = sub.add_parser("b0", help="full-roots invariant (dual-family check)")
    p.add_argument("group")
    p.add_argument("--oracle-check", action="store_true")
    p.add_argument("--dump-reps", action="store_true",
                   help="emit generator cocycles as JSON")
    p.set_defaults(func=cmd_b0)

    p = sub.add_parser("brnr", help="Brauer bound over a field profile")
    p.add_argument("group")
    p.add_argument("--field", required=True,
                   help="C | R | Q | Qp:<p> | Q2 | custom:<path>")
    p.set_defaults(func=cmd_brnr)

    p = sub.add_parser("algebraic-bound", help="character-kernel bound mod r")
    p.add_argument("group")
    p.add_argument("--r", type=int, required=True)
    p.set_defaults(func=cmd_algebraic_bound)

    p = sub.add_parser("real", help="bound over the reals with shortcuts")
    p.add_argument("group")
    p.set_defaults(func=cmd_real)

    p = sub.add_parser("sha2", help="restriction kernel of H^2")
    p.add_argument("group")
    p.add_argument("--coeff", required=True, help="integer r, or q for Q/Z")
    p.add_argument("--kind", default="bicyclic",
                   choices=["cyclic", "bicyclic", "abelian"])
    p.set_defaults(func=cmd_sha2)

    p = sub.add_parser("sha1", help="restriction kernel of characters")
    p.add_argument("group")
    p.add_argument("--coeff", required=True)
    p.add_argument("--kind", default="cyclic",
                   choices=["cyclic", "bicyclic", "abelian"])
    p.set_defaults(func=cmd_sha1)

    p = sub.add_parser("sweep", help="differential test: main vs dense path")
    p.add_argument("--grid", required=True, help="e.g. 'order<=16,r=2,3,4'")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("catalog", help="list built-in groups")
    p.set_defaults(func=cmd_catalog)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    try:
        return args.func(args)
    except OrderCapExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CAP
    except (TheoremViolation,) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_MISMATCH
    except (BrnrError, ValueError, KeyError, OSError,
            json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    raise SystemExit(main())
