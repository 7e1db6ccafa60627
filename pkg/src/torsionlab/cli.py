"""Command-line front-end.

Exit codes: 0 success, 1 bad input (including unknown flags and malformed
files), 2 when a requested statement's hypothesis fails for the given
input, 3 when an internal invariant check fires.  Human-readable text goes
to stdout by default; ``--json`` switches to a machine report that
validates against ``data/report.schema.json``.
"""

from __future__ import annotations

import argparse
import sys

import mpmath

from . import fileio
from .errors import (HypothesisError, InputError, InternalInvariantError,
                     TorsionLabError)
from .foxcalc import abelianization_epsilon
from .knots import (build_twisted_complex, dual_torsion_check, order_report,
                    twisted_alexander)
from .complexes import alexander_invariant, homology
from .mapping_torus import (alexander_from_monodromy, monodromy_order_report,
                            torsion_from_monodromy)
from .ruelle import (evaluate_truncated, prediction_from_knot,
                     prediction_from_monodromy)
from .verify import SUITE_NAMES, run_verification

_TRUNCATE_NOTE = ("truncated Euler product over the supplied spectrum in its "
                  "convergence region; this is not a value at s = 0")


class _Parser(argparse.ArgumentParser):
    """Argument parser that reports usage problems as input errors."""

    def error(self, message):
        raise InputError(message)


def _poly_text(p) -> str:
    return p.to_literal()


def _ratfunc_text(f) -> str:
    if f.den.is_one():
        return _poly_text(f.num)
    return f"({_poly_text(f.num)}) / ({_poly_text(f.den)})"


def _emit(args, report: dict, lines) -> None:
    if getattr(args, "json", False):
        sys.stdout.write(fileio.dump_json(report))
    else:
        for line in lines:
            print(line)


def _load_knot_inputs(pres_path, rep_path):
    pres, aug = fileio.load_presentation(pres_path)
    rho = fileio.load_representation(rep_path, pres.generators)
    eps = aug if aug is not None else abelianization_epsilon(pres)
    return pres, rho, eps


# -- subcommand handlers -----------------------------------------------------------


def _cmd_twisted_alexander(args) -> int:
    pres, rho, eps = _load_knot_inputs(args.presentation, args.representation)
    delta = twisted_alexander(pres, rho, eps, column=args.column)
    report = {
        "kind": "twisted-alexander",
        "presentation": str(args.presentation),
        "representation": str(args.representation),
        "column": delta.column,
        "delta": fileio.ratfunc_to_json(delta.normalized),
        "raw": fileio.ratfunc_to_json(delta.value),
        "numerator_det": fileio.poly_to_json(delta.numerator_det),
        "denominator_det": fileio.poly_to_json(delta.denominator_det),
        "unit_power": delta.unit_power,
        "unit_scalar": delta.unit_scalar.to_literal(),
    }
    lines = [
        f"twisted Alexander polynomial, column {delta.column} "
        "(canonical up to units):",
        f"  {_ratfunc_text(delta.normalized)}",
        f"raw determinant ratio = ({delta.unit_scalar.to_literal()}) * "
        f"t^{delta.unit_power} * canonical",
    ]
    _emit(args, report, lines)
    return 0


def _cmd_torsion(args) -> int:
    pres, rho, eps = _load_knot_inputs(args.presentation, args.representation)
    rep = order_report(pres, rho, eps, precision_bits=args.precision_bits)
    if not rep.applicable:
        raise HypothesisError(rep.reason)
    delta = twisted_alexander(pres, rho, eps)
    dual = dual_torsion_check(pres, rho, eps)
    h0, h1, h2 = rep.cohomology_dims
    report = {
        "kind": "torsion",
        "presentation": str(args.presentation),
        "representation": str(args.representation),
        "delta": fileio.ratfunc_to_json(delta.normalized),
        "dual_torsion_inverts_delta": dual.holds,
        "ord_delta_at_one": rep.ord_delta,
        "neg_ord_dual_invariant": rep.neg_ord_dual_invariant,
        "orders_match": rep.orders_match,
        "cohomology_dims": [h0, h1, h2],
        "dim_h1": rep.dim_h1,
        "order_at_most_dim_h1": rep.inequality_holds,
        "semisimple_at_one": rep.semisimple_at_one,
        "order_equals_dim_h1": rep.equality_holds,
        "equality_matches_semisimplicity": rep.equality_matches_semisimplicity,
        "all_cohomology_vanishes": rep.all_cohomology_vanishes,
        "abs_torsion_at_one": fileio.number_to_json(rep.abs_torsion_at_one),
        "abs_inverse_delta_at_one":
            fileio.number_to_json(rep.abs_inverse_delta_at_one),
        "numeric_agreement": rep.numeric_agreement,
    }
    lines = [
        f"Delta(t) = {_ratfunc_text(delta.normalized)}  (canonical up to units)",
        f"dual complex torsion is unit-equal to 1/Delta: {dual.holds}",
        f"ord_(t=1) Delta = {rep.ord_delta}; "
        f"-ord of the dual invariant = {rep.neg_ord_dual_invariant} "
        f"(match: {rep.orders_match})",
        f"specialized cohomology dimensions (h0, h1, h2) = ({h0}, {h1}, {h2})",
        f"order <= dim h1: {rep.inequality_holds}; equality: {rep.equality_holds}; "
        f"semisimple at 1: {rep.semisimple_at_one} "
        f"(equality iff semisimple: {rep.equality_matches_semisimplicity})",
    ]
    if rep.all_cohomology_vanishes:
        lines.append(
            f"all cohomology vanishes: |torsion at 1| = "
            f"{mpmath.nstr(rep.abs_torsion_at_one, 17)} vs 1/|Delta(1)| = "
            f"{mpmath.nstr(rep.abs_inverse_delta_at_one, 17)} "
            f"(agree: {rep.numeric_agreement})")
    else:
        lines.append("cohomology does not vanish; no value at t = 1 is reported")
    _emit(args, report, lines)
    return 0


def _cmd_homology(args) -> int:
    pres, rho, eps = _load_knot_inputs(args.presentation, args.representation)
    tc = build_twisted_complex(pres, rho, eps)
    h = homology(tc.complex)
    torsion = h.is_torsion()
    alex = alexander_invariant(tc.complex, "chain") if torsion else None
    degrees = list(h.degrees())
    report = {
        "kind": "homology",
        "presentation": str(args.presentation),
        "representation": str(args.representation),
        "lo": h.lo,
        "degrees": degrees,
        "invariant_factors": [
            [fileio.poly_to_json(f) for f in h.factors(i)] for i in degrees],
        "free_ranks": [h.free_rank(i) for i in degrees],
        "is_torsion": torsion,
        "alexander_invariant":
            fileio.ratfunc_to_json(alex) if alex is not None else None,
    }
    lines = [f"twisted chain complex ranks: {list(tc.complex.ranks)} "
             f"starting in degree {tc.complex.lo}"]
    for i in degrees:
        facts = ", ".join(_poly_text(f) for f in h.factors(i)) or "-"
        lines.append(f"H_{i}: free rank {h.free_rank(i)}, "
                     f"invariant factors: {facts}")
    if alex is not None:
        lines.append(f"Alexander invariant (chain convention): "
                     f"{_ratfunc_text(alex)}")
    else:
        lines.append("homology is not torsion; no Alexander invariant")
    _emit(args, report, lines)
    return 0


def _cmd_mapping_torus(args) -> int:
    mono = fileio.load_monodromy(args.file)
    tors = torsion_from_monodromy(mono.matrix, precision_bits=args.precision_bits)
    rep = monodromy_order_report(mono, precision_bits=args.precision_bits)
    alex = alexander_from_monodromy(mono.matrix)
    report = {
        "kind": "mapping-torus",
        "file": str(args.file),
        "dimension": mono.dimension,
        "beta": rep.beta,
        "fixed_line_count": rep.i_dim,
        "alexander_invariant": fileio.ratfunc_to_json(alex),
        "ord_invariant_at_one": rep.ord_invariant,
        "neg_beta": rep.neg_beta,
        "orders_equal": rep.orders_equal,
        "strict_inequality": rep.strict_inequality,
        "semisimple_at_one": rep.semisimple_at_one,
        "globally_semisimple": rep.globally_semisimple,
        "equality_matches_semisimplicity": rep.equality_matches_semisimplicity,
        "torsion_abs": fileio.number_to_json(tors.value),
        "torsion_outside_hypothesis": tors.outside_hypothesis,
        "limit_checked": rep.limit_checked,
        "limit_value": fileio.number_to_json(rep.limit_value),
        "limit_agrees": rep.limit_agrees,
    }
    verdict = ("orders equal (semisimple at 1)" if rep.orders_equal
               else "strict inequality (not semisimple at 1)")
    lines = [
        f"monodromy of rank {mono.dimension}: fixed space dimension beta = "
        f"{rep.beta}",
        f"Alexander invariant A*(t) = {_ratfunc_text(alex)} "
        "(canonical up to units)",
        f"ord_(t=1) A* = {rep.ord_invariant} vs -beta = {rep.neg_beta}: "
        f"{verdict}",
        f"|torsion| = {mpmath.nstr(tors.value, 17)}"
        + (" (outside hypothesis: infinite)" if tors.outside_hypothesis else ""),
    ]
    if rep.limit_checked:
        lines.append(
            f"limit |(t-1)^beta A*(t)| at t = 1 = "
            f"{mpmath.nstr(rep.limit_value, 17)} (agrees with torsion: "
            f"{rep.limit_agrees})")
    else:
        lines.append("limit at t = 1 skipped: not semisimple at eigenvalue 1")
    _emit(args, report, lines)
    return 0


def _cmd_ruelle_predict(args) -> int:
    if args.source == "mapping-torus":
        if len(args.inputs) != 1:
            raise InputError(
                "--from mapping-torus needs exactly one monodromy file")
        mono = fileio.load_monodromy(args.inputs[0])
        pred = prediction_from_monodromy(mono, precision_bits=args.precision_bits)
    else:
        if len(args.inputs) != 2:
            raise InputError(
                "--from knot needs a presentation file and a representation file")
        pres, rho, eps = _load_knot_inputs(args.inputs[0], args.inputs[1])
        pred = prediction_from_knot(pres, rho, eps,
                                    precision_bits=args.precision_bits)
    report = {
        "kind": "ruelle-predict",
        "source": args.source,
        "inputs": [str(p) for p in args.inputs],
        "order": pred.order,
        "leading_abs": fileio.number_to_json(pred.leading_abs),
        "provenance": pred.provenance,
    }
    lines = [f"predicted vanishing order at s = 0: {pred.order}"]
    if pred.leading_abs is not None:
        lines.append("predicted |leading constant|: "
                     f"{mpmath.nstr(pred.leading_abs, 17)}")
    else:
        lines.append("leading constant not predicted")
    lines.append(f"({pred.provenance})")
    _emit(args, report, lines)
    return 0


def _parse_s(text: str) -> mpmath.mpc:
    parts = text.split(",")
    if len(parts) > 2:
        raise InputError(f"-s expects RE or RE,IM, got {text!r}")
    try:
        re = mpmath.mpf(parts[0].strip())
        im = mpmath.mpf(parts[1].strip()) if len(parts) == 2 else mpmath.mpf(0)
    except ValueError:
        raise InputError(f"-s expects decimal numbers, got {text!r}") from None
    return mpmath.mpc(re, im)


def _cmd_ruelle_truncate(args) -> int:
    spectrum = fileio.load_spectrum(args.spectrum, zeta_order=args.zeta_order)
    s = _parse_s(args.s)
    result = evaluate_truncated(spectrum, s, args.max_length,
                                precision_bits=args.precision_bits)
    report = {
        "kind": "ruelle-truncate",
        "spectrum": str(args.spectrum),
        "s": fileio.number_to_json(s),
        "max_length": mpmath.nstr(mpmath.mpf(args.max_length), 17),
        "terms_used": result.terms_used,
        "value": fileio.number_to_json(mpmath.mpc(result.value)),
        "last_factor_deviation":
            fileio.number_to_json(result.last_factor_deviation),
        "note": _TRUNCATE_NOTE,
    }
    lines = [
        f"truncated product over {result.terms_used} classes with length <= "
        f"{args.max_length}:",
        f"  {mpmath.nstr(result.value, 17)}",
        f"last factor deviates from 1 by "
        f"{mpmath.nstr(result.last_factor_deviation, 5)}",
        f"note: {_TRUNCATE_NOTE}",
    ]
    _emit(args, report, lines)
    return 0


def _cmd_verify(args) -> int:
    suites = SUITE_NAMES if args.suite == "all" else (args.suite,)
    run = run_verification(args.seed, suites=suites)
    report = run.to_jsonable()
    lines = [f"verification run, seed {run.seed}"]
    for name, (p, f) in sorted(run.properties.items()):
        mark = "ok " if f == 0 else "FAIL"
        lines.append(f"  [{mark}] {name}: {p} passed, {f} failed")
    lines.append("all properties passed" if run.ok
                 else f"{len(run.failures)} failing cases recorded")
    _emit(args, report, lines)
    return 0 if run.ok else 3


# -- parser ------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="torsionlab",
        description="Exact twisted Alexander polynomials, torsion of based "
                    "complexes and mapping tori, and order/leading-constant "
                    "predictions for dynamical L-products at s = 0.")
    sub = parser.add_subparsers(dest="command", required=True)

    def knot_flags(p):
        p.add_argument("-p", "--presentation", required=True,
                       help="presentation TOML file")
        p.add_argument("-r", "--representation", required=True,
                       help="representation TOML file")
        p.add_argument("--json", action="store_true",
                       help="machine-readable report on stdout")

    p = sub.add_parser("twisted-alexander",
                       help="twisted Alexander polynomial of a knot group")
    knot_flags(p)
    p.add_argument("--column", type=int, default=1,
                   help="1-based generator column to delete (default 1)")
    p.set_defaults(handler=_cmd_twisted_alexander)

    p = sub.add_parser("torsion",
                       help="torsion analysis of the twisted complex at t = 1")
    knot_flags(p)
    p.add_argument("--precision-bits", type=int, default=128)
    p.set_defaults(handler=_cmd_torsion)

    p = sub.add_parser("homology",
                       help="homology of the twisted chain complex")
    knot_flags(p)
    p.set_defaults(handler=_cmd_homology)

    p = sub.add_parser("mapping-torus",
                       help="torsion and order report for a monodromy matrix")
    p.add_argument("-f", "--file", required=True, help="monodromy TOML file")
    p.add_argument("--precision-bits", type=int, default=128)
    p.add_argument("--json", action="store_true")
    p.set_defaults(handler=_cmd_mapping_torus)

    p = sub.add_parser("ruelle", help="order/leading predictions at s = 0 "
                                      "and truncated products")
    rsub = p.add_subparsers(dest="ruelle_command", required=True)

    rp = rsub.add_parser("predict",
                         help="predict order and leading constant at s = 0")
    rp.add_argument("--from", dest="source", required=True,
                    choices=("mapping-torus", "knot"))
    rp.add_argument("inputs", nargs="+",
                    help="monodromy file, or presentation and representation")
    rp.add_argument("--precision-bits", type=int, default=128)
    rp.add_argument("--json", action="store_true")
    rp.set_defaults(handler=_cmd_ruelle_predict)

    rt = rsub.add_parser("truncate",
                         help="evaluate the truncated product over a spectrum")
    rt.add_argument("--spectrum", required=True, help="spectrum CSV file")
    rt.add_argument("-s", required=True, metavar="RE[,IM]",
                    help="evaluation point")
    rt.add_argument("--max-length", type=float, required=True)
    rt.add_argument("--zeta-order", type=int, default=1,
                    help="cyclotomic order for holonomy literals (default 1)")
    rt.add_argument("--precision-bits", type=int, default=128)
    rt.add_argument("--json", action="store_true")
    rt.set_defaults(handler=_cmd_ruelle_truncate)

    p = sub.add_parser("verify", help="run the randomized verification suites")
    p.add_argument("--suite", default="all",
                   choices=("all",) + SUITE_NAMES)
    p.add_argument("--seed", type=int, default=42)
    p.add_argument("--json", action="store_true")
    p.set_defaults(handler=_cmd_verify)

    return parser


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
        return args.handler(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except HypothesisError as exc:
        print(f"not applicable: {exc}", file=sys.stderr)
        return 2
    except InternalInvariantError as exc:
        print(f"internal invariant violated: {exc}", file=sys.stderr)
        return 3
    except TorsionLabError as exc:  # a new subclass someone forgot to map
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
