"""Command-line front end.

Exit status: 0 success, 1 negative verdict (obstructed, tower incomplete,
failed regression check), 2 input error, 3 guard or budget error.
"""
from __future__ import annotations

import argparse
import json
import sys
from itertools import combinations

import numpy as np

from . import __version__
from .algebra import (
    FORM_SYMMETRIES,
    LieAlgebra,
    catalog,
    center,
    invariant_trilinear_forms,
    is_killing_zero,
    is_perfect,
    is_simple,
    is_unimodular,
    reduce_to_residue,
)
from .cochains import AdForm, cohomology
from .document import AlgebraDocument, load
from .errors import GuardError, InputError
from .lifting import FAMILY_ENUMERATION_GUARD, lift_family, lift_tower, obstruction
from .regression import run_checks
from .ring import Family

EXIT_OK, EXIT_NEGATIVE, EXIT_INPUT, EXIT_GUARD = 0, 1, 2, 3


# ---------------------------------------------------------------------------
# input

def _load_algebra(args) -> tuple[LieAlgebra, AlgebraDocument]:
    if args.input and args.catalog:
        raise InputError("give either an input file or --catalog, not both")
    if args.input:
        doc = load(args.input)
        A = doc.to_algebra(name=args.input)
    elif args.catalog:
        if args.p is None:
            raise InputError("--catalog needs --p")
        A = catalog(args.catalog, args.p, args.k, n=args.n, family=args.family)
        doc = AlgebraDocument.from_algebra(A)
    else:
        raise InputError("no algebra given: pass a JSON file or --catalog NAME --p P")
    if not isinstance(A, LieAlgebra):
        raise InputError("bracket fails the Jacobi identity")
    return A, doc


def _at_residue(A: LieAlgebra, command: str) -> LieAlgebra:
    if A.ring.k == 1:
        return A
    R = reduce_to_residue(A)
    print(f"notice: {command} works over the residue field; reducing {A.ring.label} input to {R.ring.label}",
          file=sys.stderr)
    return R


# ---------------------------------------------------------------------------
# payload helpers

def _form_entries(form: AdForm | None):
    """Nonzero values of a cochain as [{"args": [...], "value": ...}]."""
    if form is None:
        return None
    out = []
    for I, v in zip(combinations(range(form.algebra.n), form.degree), form.values()):
        if v.any():
            out.append({"args": list(I), "value": [int(x) for x in v] if form.coeffs == "ad" else int(v[0])})
    return out


def _ints(a) -> list:
    return np.asarray(a, dtype=np.int64).tolist()


def _doc(A) -> dict | None:
    return None if A is None else AlgebraDocument.from_algebra(A).to_json()


# ---------------------------------------------------------------------------
# commands; each returns (payload, exit status)

def cmd_cohomology(args, A: LieAlgebra):
    A = _at_residue(A, "cohomology")
    H = cohomology(A, args.coeffs)
    degrees = []
    for d in H.degrees:
        reps = [_form_entries(r) for r in H.representatives(d.degree)]
        degrees.append({"degree": d.degree, "dim": d.dim, "cochains": d.cochains,
                        "cocycles": d.cocycles, "coboundaries": d.coboundaries,
                        "representatives": reps})
    return {"algebra": A.name, "ring": A.ring.label, "coeffs": args.coeffs, "dims": H.dims,
            "euler_characteristic": H.euler_characteristic(), "degrees": degrees}, EXIT_OK


def _check_target(A: LieAlgebra, target: int | None):
    if target is not None and target != A.ring.k + 1:
        raise InputError(f"input is at level {A.ring.k}; obstruct goes to level {A.ring.k + 1} "
                         f"(use tower for level {target})")


def cmd_obstruct(args, A: LieAlgebra):
    _check_target(A, args.target_level)
    rep = obstruction(A)
    payload = {
        "source": A.ring.label,
        "target": A.ring.up().label,
        "verdict": "lifts" if rep.lifts else "obstructed",
        "jacobiator": _form_entries(rep.J),
        "class_coordinates": _ints(rep.class_coordinates),
        "witness": _form_entries(rep.witness),
        "lifted": _doc(rep.lifted_algebra),
    }
    return payload, EXIT_OK if rep.lifts else EXIT_NEGATIVE


def cmd_lifts(args, A: LieAlgebra):
    fam = lift_family(A, guard=args.guard)
    if fam is None:
        return {"verdict": "no lifts", "target": A.ring.up().label}, EXIT_NEGATIVE
    members = None
    if fam.members is not None:
        members = [{"h2_coordinates": list(key), "algebra": _doc(M)}
                   for key, M in sorted(fam.members.items())]
    payload = {
        "verdict": "lifts",
        "target": A.ring.up().label,
        "h2_dim": len(fam.h2_basis),
        "count": fam.count,
        "h2_basis": [_form_entries(h) for h in fam.h2_basis],
        "members": members,
    }
    return payload, EXIT_OK


def cmd_tower(args, A: LieAlgebra):
    report = lift_tower(A, args.levels)
    steps = [{"source_level": s.source_level, "target_level": s.target_level,
              "verdict": "lifts" if s.lifted else "obstructed",
              "witness": _form_entries(s.witness),
              "class_coordinates": _ints(s.class_coordinates)} for s in report.steps]
    payload = {"start_level": A.ring.k, "target_level": args.levels,
               "reached_level": report.reached_level, "complete": report.complete,
               "steps": steps, "top": _doc(report.top)}
    return payload, EXIT_OK if report.complete else EXIT_NEGATIVE


def cmd_structure(args, A: LieAlgebra):
    A = _at_residue(A, "structure")
    Z = center(A)
    forms = {s: invariant_trilinear_forms(A, s).dimension for s in FORM_SYMMETRIES}
    payload = {
        "algebra": A.name,
        "ring": A.ring.label,
        "dimension": A.n,
        "center_dim": int(Z.shape[0]),
        "center_basis": _ints(Z),
        "perfect": is_perfect(A),
        "simple": is_simple(A),
        "killing_zero": is_killing_zero(A),
        "unimodular": is_unimodular(A),
        "invariant_3forms": forms,
    }
    return payload, EXIT_OK


def cmd_verify_paper(args, A=None):
    results = run_checks()
    payload = {"checks": [r.to_json() for r in results],
               "passed": sum(r.passed for r in results), "total": len(results)}
    return payload, EXIT_OK if all(r.passed for r in results) else EXIT_NEGATIVE


COMMANDS = {
    "cohomology": cmd_cohomology,
    "obstruct": cmd_obstruct,
    "lifts": cmd_lifts,
    "tower": cmd_tower,
    "structure": cmd_structure,
    "verify-paper": cmd_verify_paper,
}


# ---------------------------------------------------------------------------
# rendering

def _echo(args) -> dict:
    skip = {"command", "format"}
    return {"name": args.command,
            "options": {k: v for k, v in sorted(vars(args).items()) if k not in skip}}


def build_report(args, payload: dict, doc: AlgebraDocument | None) -> dict:
    return {"command": _echo(args), "input_digest": doc.digest() if doc else None,
            "result": payload, "version": __version__}


def _text(report: dict) -> str:
    cmd = report["command"]["name"]
    r = report["result"]
    lines = [f"lieobstruct {report['version']} {cmd}"]
    if report["input_digest"]:
        lines.append(f"input sha256 {report['input_digest']}")
    if cmd == "cohomology":
        lines.append(f"{r['algebra']} over {r['ring']}, coefficients {r['coeffs']}")
        for d in r["degrees"]:
            lines.append(f"  H^{d['degree']}: dim {d['dim']}  (cocycles {d['cocycles']}, "
                         f"coboundaries {d['coboundaries']}, cochains {d['cochains']})")
        lines.append(f"  Euler characteristic {r['euler_characteristic']}")
    elif cmd == "obstruct":
        lines.append(f"{r['source']} -> {r['target']}: {r['verdict']}")
        if r["verdict"] == "obstructed":
            lines.append(f"  class coordinates in H^3: {r['class_coordinates']}")
        elif r["witness"] is not None:
            lines.append(f"  witness has {len(r['witness'])} nonzero entries")
    elif cmd == "lifts":
        if r["verdict"] == "no lifts":
            lines.append(f"no lifts to {r['target']}")
        else:
            lines.append(f"lifts to {r['target']}: dim H^2 = {r['h2_dim']}, {r['count']} classes")
            if r["members"] is None:
                lines.append("  members not materialized (above guard)")
    elif cmd == "tower":
        for s in r["steps"]:
            lines.append(f"  level {s['source_level']} -> {s['target_level']}: {s['verdict']}")
        lines.append(f"reached level {r['reached_level']} of {r['target_level']}")
    elif cmd == "structure":
        lines.append(f"{r['algebra']} over {r['ring']}, dimension {r['dimension']}")
        for key in ("center_dim", "perfect", "simple", "killing_zero", "unimodular"):
            lines.append(f"  {key}: {r[key]}")
        for s, dim in r["invariant_3forms"].items():
            lines.append(f"  invariant {s} 3-forms: {dim}")
    elif cmd == "verify-paper":
        width = max(len(c["name"]) for c in r["checks"])
        for c in r["checks"]:
            mark = "PASS" if c["passed"] else "FAIL"
            lines.append(f"  {mark}  {c['name']:<{width}}  expected {c['expected']}, got {c['observed']}")
        lines.append(f"{r['passed']}/{r['total']} checks passed")
    return "\n".join(lines)


def render(report: dict, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(report, sort_keys=True, indent=2)
    return _text(report)


# ---------------------------------------------------------------------------
# parser

def build_parser() -> argparse.ArgumentParser:
    fmt = argparse.ArgumentParser(add_help=False)
    fmt.add_argument("--format", choices=("text", "json"), default="text")

    source = argparse.ArgumentParser(add_help=False)
    source.add_argument("input", nargs="?", help="algebra document (JSON)")
    source.add_argument("--catalog", help="catalog name: abelian, heisenberg, sl, psl, nilpotent-triangular")
    source.add_argument("--n", type=int, help="size parameter of the catalog entry")
    source.add_argument("--p", type=int, help="residue characteristic")
    source.add_argument("--k", type=int, default=1, help="level of the coefficient ring")
    source.add_argument("--family", choices=[f.value for f in Family], default=Family.PADIC.value)

    parser = argparse.ArgumentParser(prog="lieobstruct",
                                     description="Lie algebra cohomology and lifting obstructions over F_p.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("cohomology", parents=[source, fmt], help="cohomology dimensions and representatives")
    p.add_argument("--coeffs", choices=("ad", "trivial"), default="ad")
    p = sub.add_parser("obstruct", parents=[source, fmt], help="obstruction to lifting one level")
    p.add_argument("--target-level", type=int, default=None)
    p = sub.add_parser("lifts", parents=[source, fmt], help="lifts up to identity-inducing isomorphism")
    p.add_argument("--guard", type=int, default=FAMILY_ENUMERATION_GUARD,
                   help="materialize members only up to this many")
    p = sub.add_parser("tower", parents=[source, fmt], help="lift level by level")
    p.add_argument("--levels", type=int, required=True)
    sub.add_parser("structure", parents=[source, fmt], help="center, perfectness, simplicity, forms")
    sub.add_parser("verify-paper", parents=[fmt], help="run the psl3(F3) regression checks")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        A, doc = (None, None) if args.command == "verify-paper" else _load_algebra(args)
        payload, status = COMMANDS[args.command](args, A)
    except GuardError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_GUARD
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    print(render(build_report(args, payload, doc), args.format))
    return status


if __name__ == "__main__":
    sys.exit(main())
