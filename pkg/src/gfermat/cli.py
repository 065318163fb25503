"""Batch command-line front end.

One verb per invocation, one self-describing JSON report on stdout.  All
output is deterministic: keys are sorted, sets are emitted in canonical
order, rationals are in lowest terms.  Exit codes: 0 success, 2 payload
validation failure, 3 mathematical precondition failure, 4 enumeration
budget exhausted.

JSON payloads are passed as positional arguments; an argument of the form
``@path`` reads the file, and ``-`` reads stdin.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction

from . import arrangement as arr_mod
from . import constructions as con_mod
from . import fermatgroup as fg_mod
from . import invariants as inv_mod
from . import modaction as act_mod
from .errors import BudgetExceeded, NotInGeneralPosition, TangencyError
from .exactfield import CyclotomicScalar, ExactMatrix, rational_to_string

EXIT_OK = 0
EXIT_VALIDATION = 2
EXIT_PRECONDITION = 3
EXIT_BUDGET = 4

DEFAULT_BUDGET_ENV = "GFERMAT_BUDGET"


class ValidationError(ValueError):
    """Malformed payload (bad JSON, bad schema, unparseable scalar)."""


def _read_payload_text(arg: str) -> str:
    if arg == "-":
        return sys.stdin.read()
    if arg.startswith("@"):
        try:
            with open(arg[1:], "r", encoding="utf-8") as handle:
                return handle.read()
        except OSError as exc:
            raise ValidationError(f"cannot read payload file: {exc}") from exc
    return arg


def _load_json(arg: str):
    try:
        return json.loads(_read_payload_text(arg))
    except json.JSONDecodeError as exc:
        raise ValidationError(f"malformed JSON payload: {exc}") from exc


def _parse_rational(value) -> Fraction:
    if isinstance(value, bool):
        raise ValidationError("booleans are not rationals")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise ValidationError(f"malformed rational {value!r}: {exc}") from exc
    raise ValidationError(f"expected a rational string, got {value!r}")


def _parse_parameter(data) -> arr_mod.StandardParameter:
    if not isinstance(data, dict):
        raise ValidationError("parameter payload must be an object")
    for key in ("d", "n", "lambda"):
        if key not in data:
            raise ValidationError(f"parameter payload is missing {key!r}")
    rows = data["lambda"]
    if not isinstance(rows, list) or not all(isinstance(r, list) for r in rows):
        raise ValidationError("'lambda' must be a list of rows")
    try:
        return arr_mod.StandardParameter(
            int(data["d"]),
            int(data["n"]),
            tuple(tuple(_parse_rational(x) for x in row) for row in rows),
        )
    except ValueError as exc:
        if isinstance(exc, ValidationError):
            raise
        raise ValidationError(str(exc)) from exc


def _parse_arrangement(data) -> arr_mod.Arrangement:
    if not isinstance(data, dict) or "d" not in data or "points" not in data:
        raise ValidationError("arrangement payload needs 'd' and 'points'")
    if not isinstance(data["points"], list):
        raise ValidationError("'points' must be a list of dual points")
    try:
        points = [
            tuple(_parse_rational(c) for c in q) for q in data["points"]
        ]
        return arr_mod.Arrangement(
            int(data["d"]),
            tuple(arr_mod.Hyperplane(q) for q in points),
        )
    except ValueError as exc:
        if isinstance(exc, ValidationError):
            raise
        raise ValidationError(str(exc)) from exc


def _parse_exponents(data, k: int) -> fg_mod.GroupElement:
    if not isinstance(data, list) or not all(isinstance(m, int) for m in data):
        raise ValidationError("exponents must be a list of integers")
    try:
        return fg_mod.GroupElement(k, tuple(data))
    except ValueError as exc:
        raise ValidationError(str(exc)) from exc


def _parse_matrix(data, k: int) -> ExactMatrix:
    if not isinstance(data, dict) or "entries" not in data:
        raise ValidationError("matrix payload needs 'entries'")
    rows = data["entries"]
    if not isinstance(rows, list) or not all(isinstance(r, list) for r in rows):
        raise ValidationError("'entries' must be a list of rows")

    def entry(cell):
        if isinstance(cell, dict):
            coeffs = cell.get("coeffs")
            if not isinstance(coeffs, list):
                raise ValidationError("cyclotomic entry needs a 'coeffs' list")
            try:
                order = int(cell.get("k", k))
            except (TypeError, ValueError) as exc:
                raise ValidationError("cyclotomic entry order must be an integer") from exc
            if order < 1:
                raise ValidationError("cyclotomic entry order must be positive")
            return CyclotomicScalar.from_poly(
                order, [_parse_rational(c) for c in coeffs]
            )
        return CyclotomicScalar.from_rational(k, _parse_rational(cell))

    try:
        return ExactMatrix.from_rows(
            [[entry(c) for c in row] for row in rows]
        )
    except ValueError as exc:
        if isinstance(exc, ValidationError):
            raise
        raise ValidationError(str(exc)) from exc


def _parse_degree(value) -> int:
    try:
        k = int(value)
    except ValueError as exc:
        raise ValidationError(f"degree must be an integer, got {value!r}") from exc
    if k < 2:
        raise ValidationError("degree k must be >= 2")
    return k


def _matrix_json(matrix: ExactMatrix):
    return matrix.to_json()


def _permutations_json(perms):
    return [list(p.one_line()) for p in sorted(perms, key=lambda p: p.images)]


# ---------------------------------------------------------------------------
# Verb handlers: each returns a JSON-able report dict.
# ---------------------------------------------------------------------------

def _cmd_normalize(args, budget):
    arrangement = _parse_arrangement(_load_json(args.arrangement))
    transform, par = arr_mod.normalize(arrangement)
    return {"T": _matrix_json(transform), "parameter": par.to_json()}


def _cmd_orbit(args, budget):
    par = _parse_parameter(_load_json(args.parameter))
    report = act_mod.orbit_and_stabilizer(par, budget=budget)
    return {
        "base": par.to_json(),
        "elements": [p.to_json() for p in report.elements],
        "orbit_size": report.orbit_size,
        "stabilizer": _permutations_json(report.stabilizer),
        "stabilizer_order": report.stabilizer_order,
        "kernel_note": report.kernel_note,
    }


def _cmd_stabilizer(args, budget):
    par = _parse_parameter(_load_json(args.parameter))
    report = act_mod.orbit_and_stabilizer(par, budget=budget)
    return {
        "stabilizer": _permutations_json(report.stabilizer),
        "stabilizer_order": report.stabilizer_order,
        "kernel_note": report.kernel_note,
    }


def _cmd_iso(args, budget):
    first = _parse_parameter(_load_json(args.first))
    second = _parse_parameter(_load_json(args.second))
    k = _parse_degree(args.degree) if args.degree is not None else None
    result = act_mod.are_isomorphic(first, second, k=k, budget=budget)
    return {
        "isomorphic": result.equivalent,
        "witness": list(result.witness.one_line()) if result.witness else None,
        "note": result.note,
    }


def _cmd_canon(args, budget):
    par = _parse_parameter(_load_json(args.parameter))
    return {"parameter": act_mod.canonical_representative(par, budget=budget).to_json()}


def _cmd_equations(args, budget):
    par = _parse_parameter(_load_json(args.parameter))
    k = _parse_degree(args.k)
    system = fg_mod.equations(par, k)
    report = system.to_json()
    report["smooth"] = fg_mod.smoothness_certificate(system)
    return report


def _cmd_fixed_locus(args, budget):
    gfm_type = _parse_type(args)
    element = _parse_exponents(_load_json(args.exponents), gfm_type.k)
    if element.n != gfm_type.n:
        raise ValidationError("exponent vector must have length n+1")
    return fg_mod.fixed_locus(element, gfm_type).to_json()


def _cmd_free(args, budget):
    gfm_type = _parse_type(args)
    data = _load_json(args.generators)
    if not isinstance(data, list):
        raise ValidationError("generators must be a list of exponent vectors")
    gens = [_parse_exponents(g, gfm_type.k) for g in data]
    for g in gens:
        if g.n != gfm_type.n:
            raise ValidationError("exponent vectors must have length n+1")
    result = fg_mod.subgroup_acts_freely(gens, gfm_type, budget=budget)
    bound = None
    if _is_prime(gfm_type.k):
        power, order = 0, result.subgroup_order
        while order % gfm_type.k == 0:
            order //= gfm_type.k
            power += 1
        if order == 1:
            r = gfm_type.n - power
            if r >= 1:
                bound = {
                    "p": gfm_type.k,
                    "r": r,
                    "feasible": fg_mod.bound_feasible(gfm_type.k, r, gfm_type.n),
                }
    return {
        "free": result.free,
        "offending": result.offending.to_json() if result.offending else None,
        "subgroup_order": result.subgroup_order,
        "bound": bound,
    }


def _cmd_aut_order(args, budget):
    par = _parse_parameter(_load_json(args.parameter))
    k = _parse_degree(args.k)
    return fg_mod.automorphism_order(par, k, budget=budget).to_json()


def _cmd_verify_matrix(args, budget):
    par = _parse_parameter(_load_json(args.parameter))
    k = _parse_degree(args.k)
    matrix = _parse_matrix(_load_json(args.matrix), k)
    return {"accepted": fg_mod.is_linear_automorphism(matrix, par, k)}


def _cmd_invariants(args, budget):
    gfm_type = fg_mod.GfmType(int(args.d), int(args.k), int(args.n))
    indices = (1, 2, 3)
    if args.pluri:
        try:
            indices = tuple(int(m) for m in args.pluri.split(","))
        except ValueError as exc:
            raise ValidationError("--pluri expects comma-separated integers") from exc
        if any(m < 1 for m in indices):
            raise ValidationError("plurigenus indices must be positive")
    return inv_mod.invariant_report(gfm_type, indices).to_json()


def _cmd_kummer(args, budget):
    values = [_parse_rational(v) for v in args.alpha]
    par = con_mod.kummer_parameters(values)
    return {
        "parameter": par.to_json(),
        "columns": [[rational_to_string(x) for x in col] for col in par.columns],
    }


def _cmd_restrict_line(args, budget):
    par = _parse_parameter(_load_json(args.parameter))
    rho_data = _load_json(args.rho)
    if not isinstance(rho_data, list) or len(rho_data) != 3:
        raise ValidationError("rho must be a list of three rationals")
    rho = tuple(_parse_rational(c) for c in rho_data)
    result = con_mod.restrict_to_line(par, rho, allow_singular=args.allow_singular)
    return result.to_json()


def _cmd_conic(args, budget):
    conic = con_mod.tangent_conic(_parse_rational(args.a))
    report = conic.to_json()
    report["matrix"] = _matrix_json(conic.matrix())
    report["dual_matrix"] = _matrix_json(conic.dual_matrix())
    return report


def _cmd_conic_eta(args, budget):
    par = _parse_parameter(_load_json(args.parameter))
    anchors = (1, 2, 3)
    if args.anchors:
        try:
            anchors = tuple(int(i) for i in args.anchors.split(","))
        except ValueError as exc:
            raise ValidationError("--anchors expects comma-separated indices") from exc
    result = con_mod.conic_curve_parameters(_parse_rational(args.a), par, anchors)
    return result.to_json()


def _cmd_classify_low_n(args, budget):
    try:
        d, n = int(args.d), int(args.n)
    except ValueError as exc:
        raise ValidationError("d and n must be integers") from exc
    return fg_mod.classify_low_n(d, n).to_json()


def _parse_type(args) -> fg_mod.GfmType:
    # domain violations (n <= d, k < 2) are mathematical preconditions
    return fg_mod.GfmType(int(args.d), int(args.k), int(args.n))


def _is_prime(k: int) -> bool:
    if k < 2:
        return False
    f = 2
    while f * f <= k:
        if k % f == 0:
            return False
        f += 1
    return True


def _build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--budget", type=int, default=None,
                        help="enumeration budget (default: env "
                             f"{DEFAULT_BUDGET_ENV} or {act_mod.DEFAULT_BUDGET})")
    common.add_argument("--pretty", action="store_true",
                        help="indent the JSON report")
    common.add_argument("--seed", type=int, default=0,
                        help="seed for sampling verbs (reserved)")

    parser = argparse.ArgumentParser(
        prog="gfermat",
        description="Exact computations with generalized Fermat manifolds",
    )
    sub = parser.add_subparsers(dest="verb", required=True)

    p = sub.add_parser("normalize", parents=[common],
                       help="normal form of an ordered arrangement")
    p.add_argument("arrangement")
    p.set_defaults(func=_cmd_normalize)

    p = sub.add_parser("orbit", parents=[common],
                       help="orbit and stabilizer of a parameter")
    p.add_argument("parameter")
    p.set_defaults(func=_cmd_orbit)

    p = sub.add_parser("stabilizer", parents=[common],
                       help="stabilizer of a parameter")
    p.add_argument("parameter")
    p.set_defaults(func=_cmd_stabilizer)

    p = sub.add_parser("iso", parents=[common],
                       help="orbit-equivalence test with witness")
    p.add_argument("first")
    p.add_argument("second")
    p.add_argument("--degree", default=None,
                   help="branch order k (flags the exceptional K3 triples)")
    p.set_defaults(func=_cmd_iso)

    p = sub.add_parser("canon", parents=[common],
                       help="canonical orbit representative")
    p.add_argument("parameter")
    p.set_defaults(func=_cmd_canon)

    p = sub.add_parser("equations", parents=[common],
                       help="defining forms of the variety")
    p.add_argument("parameter")
    p.add_argument("k")
    p.set_defaults(func=_cmd_equations)

    p = sub.add_parser("fixed-locus", parents=[common],
                       help="fixed locus of a deck-group element")
    p.add_argument("d", type=int)
    p.add_argument("k", type=int)
    p.add_argument("n", type=int)
    p.add_argument("exponents")
    p.set_defaults(func=_cmd_fixed_locus)

    p = sub.add_parser("free", parents=[common],
                       help="does the generated subgroup act freely?")
    p.add_argument("d", type=int)
    p.add_argument("k", type=int)
    p.add_argument("n", type=int)
    p.add_argument("generators")
    p.set_defaults(func=_cmd_free)

    p = sub.add_parser("aut-order", parents=[common],
                       help="order of the automorphism group")
    p.add_argument("parameter")
    p.add_argument("k")
    p.set_defaults(func=_cmd_aut_order)

    p = sub.add_parser("verify-matrix", parents=[common],
                       help="verify a candidate linear automorphism")
    p.add_argument("parameter")
    p.add_argument("k")
    p.add_argument("matrix")
    p.set_defaults(func=_cmd_verify_matrix)

    p = sub.add_parser("invariants", parents=[common],
                       help="cohomological invariant report")
    p.add_argument("d", type=int)
    p.add_argument("k", type=int)
    p.add_argument("n", type=int)
    p.add_argument("--pluri", default=None,
                   help="comma-separated plurigenus indices")
    p.set_defaults(func=_cmd_invariants)

    p = sub.add_parser("kummer", parents=[common],
                       help="Kummer-surface parameter from six branch values")
    p.add_argument("alpha", nargs=6)
    p.set_defaults(func=_cmd_kummer)

    p = sub.add_parser("restrict-line", parents=[common],
                       help="curve parameter cut out by a line")
    p.add_argument("parameter")
    p.add_argument("rho")
    p.add_argument("--allow-singular", action="store_true",
                   help="emit the parameter even for degenerate lines")
    p.set_defaults(func=_cmd_restrict_line)

    p = sub.add_parser("conic", parents=[common],
                       help="the conic tangent to the four canonical lines")
    p.add_argument("a")
    p.set_defaults(func=_cmd_conic)

    p = sub.add_parser("conic-eta", parents=[common],
                       help="curve parameter from conic tangency points")
    p.add_argument("a")
    p.add_argument("parameter")
    p.add_argument("--anchors", default=None,
                   help="three 1-based anchor indices, default 1,2,3")
    p.set_defaults(func=_cmd_conic_eta)

    p = sub.add_parser("classify-low-n", parents=[common],
                       help="the degenerate range 2 <= n <= d")
    p.add_argument("d")
    p.add_argument("n")
    p.set_defaults(func=_cmd_classify_low_n)

    return parser


def _emit(report, pretty: bool) -> None:
    if pretty:
        text = json.dumps(report, sort_keys=True, indent=2)
    else:
        text = json.dumps(report, sort_keys=True, separators=(",", ":"))
    sys.stdout.write(text + "\n")


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    budget = args.budget
    if budget is None:
        budget = int(os.environ.get(DEFAULT_BUDGET_ENV, act_mod.DEFAULT_BUDGET))
    try:
        report = args.func(args, budget)
    except ValidationError as exc:
        _emit({"error": {"kind": "validation", "message": str(exc)}}, args.pretty)
        return EXIT_VALIDATION
    except BudgetExceeded as exc:
        _emit({"error": {"kind": "budget", "message": str(exc)}}, args.pretty)
        return EXIT_BUDGET
    except (NotInGeneralPosition, TangencyError, ValueError) as exc:
        _emit({"error": {"kind": "precondition", "message": str(exc)}}, args.pretty)
        return EXIT_PRECONDITION
    _emit(report, args.pretty)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
