"""Command-line front end: coin inspection, periods, simulation, sweeps.

Exit codes: 0 success, 1 domain error, 2 usage error, 3 period-method
disagreement, 4 verification failure.
"""

from __future__ import annotations

import argparse
import io
import json
import math
import sys
from fractions import Fraction

import numpy as np

from . import coins as _coins
from . import period as _period
from . import verify as _verify
from . import walk as _walk
from .errors import LivelyWalkError

PERM_LABELS = tuple(f"P{i}" for i in range(1, 7))


def _add_common(parser: argparse.ArgumentParser, tmax_help: str = "brute-force step bound",
                tmax_required: bool = False) -> None:
    parser.add_argument("--tol", type=float, default=1e-10, help="orthogonality/unitarity tolerance")
    parser.add_argument("--tmax", type=int, required=tmax_required,
                        default=None if tmax_required else _period.TMAX_DEFAULT, help=tmax_help)
    parser.add_argument("--qmax", type=int, default=_period.QMAX_DEFAULT, help="denominator bound for rational angles")
    parser.add_argument("--seed", type=int, default=0, help="seed for sampled suites")
    parser.add_argument("--output", type=str, default=None, help="write the document to this path instead of stdout")


def _add_coin_spec(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--perm", choices=PERM_LABELS, help="permutation matrix coin")
    parser.add_argument("--grover", choices=PERM_LABELS, help="Grover-type coin (2/3)J - P")
    parser.add_argument("--negate", action="store_true", help="negate a --grover coin")
    parser.add_argument("--family", choices=_coins.FAMILIES, help="parametric family")
    parser.add_argument("--theta", type=float, help="family angle in radians")
    parser.add_argument("--theta-frac", type=str, help="family angle as M/Q meaning theta = 2*pi*M/Q")
    parser.add_argument("--rational", type=str, help="rational parameter r for the exact constructor")
    parser.add_argument("--signs", choices=("++", "+-", "-+", "--"), default="++",
                        help="sign pair for the exact rational constructor")
    parser.add_argument("--matrix-file", type=str, help="path to a coin JSON document")


def _parse_coin(args, parser) -> _coins.Coin3:
    chosen = [name for name, val in (
        ("perm", args.perm), ("grover", args.grover),
        ("family", args.family), ("matrix-file", args.matrix_file),
    ) if val is not None]
    if len(chosen) != 1:
        parser.error(f"exactly one coin source required, got {chosen or 'none'}")
    if args.perm:
        return _coins.perm_matrix(int(args.perm[1]))
    if args.grover:
        return _coins.grover_type(int(args.grover[1]), negate=args.negate)
    if args.matrix_file:
        with open(args.matrix_file) as fh:
            try:
                doc = json.load(fh)
            except json.JSONDecodeError as exc:
                parser.error(f"cannot parse coin file {args.matrix_file}: {exc}")
        try:
            return _coins.coin_from_json(doc)
        except (KeyError, TypeError) as exc:
            parser.error(f"coin file {args.matrix_file} does not match the schema: {exc}")
    angle_opts = [v for v in (args.theta, args.theta_frac, args.rational) if v is not None]
    if len(angle_opts) != 1:
        parser.error("--family needs exactly one of --theta, --theta-frac, --rational")
    if args.theta is not None:
        return _coins.coin_from_theta(args.family, args.theta)
    if args.theta_frac is not None:
        try:
            frac = Fraction(args.theta_frac)
        except (ValueError, ZeroDivisionError):
            parser.error(f"cannot parse --theta-frac {args.theta_frac!r} as M/Q")
        return _coins.coin_from_theta_frac(args.family, frac)
    try:
        r = Fraction(args.rational)
    except (ValueError, ZeroDivisionError):
        parser.error(f"cannot parse --rational {args.rational!r} as a rational number")
    s1 = 1 if args.signs[0] == "+" else -1
    s2 = 1 if args.signs[1] == "+" else -1
    return _coins.coin_from_rational(args.family, r, s1, s2)


def _emit(text: str, args) -> None:
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _scalar_json(v):
    if isinstance(v, Fraction):
        return f"{v.numerator}/{v.denominator}"
    c = complex(v)
    return c.real if abs(c.imag) < 1e-12 else [c.real, c.imag]


def cmd_coin(args, parser) -> int:
    coin = _parse_coin(args, parser)
    cls = _coins.classify(coin.matrix, tol=args.tol)
    coeffs = _coins.decompose_linear_sum(coin.matrix, tol=args.tol)
    doc = {
        "coin": _coins.coin_to_json(coin),
        "classification": {
            "family": cls.family,
            "basis": cls.basis,
            "x": _scalar_json(cls.x),
            "y": _scalar_json(cls.y),
            "z": _scalar_json(cls.z),
            "is_permutation": cls.is_permutation,
            "is_grover_type": cls.is_grover_type,
            "is_rational": cls.is_rational,
        },
        "linear_sum": {
            "basis": coeffs.basis,
            "x": _scalar_json(coeffs.x),
            "y": _scalar_json(coeffs.y),
            "z": _scalar_json(coeffs.z),
        },
    }
    _emit(json.dumps(doc, indent=2) + "\n", args)
    return 0


def _methods_of(args, parser):
    methods = tuple(m.strip() for m in args.methods.split(",") if m.strip())
    for m in methods:
        if m not in _period.METHODS:
            parser.error(f"unknown method {m!r}; choose from {', '.join(_period.METHODS)}")
    return methods


def cmd_period(args, parser) -> int:
    coin = _parse_coin(args, parser)
    spec = _walk.WalkSpec(n=args.n, a=args.a, coin=coin)
    cv = _period.cross_validate(spec, tmax=args.tmax, qmax=args.qmax, methods=_methods_of(args, parser))
    _emit(json.dumps(_period.report_json(cv), indent=2) + "\n", args)
    return 0 if cv.agreement else 3


def cmd_simulate(args, parser) -> int:
    coin = _parse_coin(args, parser)
    spec = _walk.WalkSpec(n=args.n, a=args.a, coin=coin)
    if args.state_file and (args.start is not None or args.coinstate is not None):
        parser.error("give either --start/--coinstate or --state-file, not both")
    if args.state_file:
        with open(args.state_file) as fh:
            try:
                doc = json.load(fh)
            except json.JSONDecodeError as exc:
                parser.error(f"cannot parse state file {args.state_file}: {exc}")
        try:
            amps = doc["amplitudes"] if isinstance(doc, dict) else doc
            psi0 = np.array([complex(re, im) for re, im in amps])
        except (KeyError, TypeError, ValueError) as exc:
            parser.error(f"state file {args.state_file} does not match the schema: {exc}")
    else:
        if args.start is None or args.coinstate is None:
            parser.error("simulate needs --start and --coinstate, or --state-file")
        psi0 = _walk.basis_state(spec.n, args.start, args.coinstate)
    buf = io.StringIO()
    _walk.write_distribution_csv(spec, psi0, args.tmax, buf)
    _emit(buf.getvalue(), args)
    return 0


def _int_list(text: str, parser, what: str):
    try:
        return [int(v) for v in text.split(",") if v.strip()]
    except ValueError:
        parser.error(f"cannot parse {what} list {text!r}")


def cmd_table(args, parser) -> int:
    thetas = []  # (kind, value): exact fractions keep the analytic route exact
    if args.theta_list:
        try:
            thetas = [("float", float(v)) for v in args.theta_list.split(",") if v.strip()]
        except ValueError:
            parser.error(f"cannot parse --theta-list {args.theta_list!r}")
    elif args.theta_grid:
        try:
            start, stop, count = args.theta_grid.split(":")
            start, stop, count = float(start), float(stop), int(count)
        except ValueError:
            parser.error(f"--theta-grid wants START:STOP:COUNT, got {args.theta_grid!r}")
        thetas = [("float", v) for v in np.linspace(start, stop, count)]
    elif args.rational_grid:
        qbound = args.rational_grid
        for q in range(1, qbound + 1):
            for m in range(q):
                if math.gcd(m, q) == 1:
                    thetas.append(("frac", Fraction(m, q)))
    else:
        parser.error("table needs one of --theta-list, --theta-grid, --rational-grid")

    reports = []
    for n in _int_list(args.n_list, parser, "n"):
        for a in _int_list(args.a_list, parser, "a"):
            for kind, value in thetas:
                if kind == "frac":
                    coin = _coins.coin_from_theta_frac(args.family, value)
                else:
                    coin = _coins.coin_from_theta(args.family, value)
                spec = _walk.WalkSpec(n=n, a=a, coin=coin)
                cv = _period.cross_validate(spec, tmax=args.tmax, qmax=args.qmax,
                                            methods=_methods_of(args, parser))
                reports.append(_period.report_json(cv))
    _emit(json.dumps(reports, indent=2) + "\n", args)
    return 0 if all(r["agreement"] for r in reports) else 3


def cmd_verify(args, parser) -> int:
    names = _verify.SUITES if args.suite == "all" else (args.suite,)
    lines = []
    all_ok = True
    for name in names:
        result = _verify.run_suite(name, seed=args.seed, samples=args.samples)
        all_ok = all_ok and result.passed
        lines.append(
            f"{'PASS' if result.passed else 'FAIL'} {result.name}: "
            f"{result.checks - result.failures}/{result.checks} checks"
            + (f" (worst defect {result.worst:.3e})" if result.worst else "")
        )
    _emit("\n".join(lines) + "\n", args)
    return 0 if all_ok else 4


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="livelywalk",
        description="Three-state lively quantum walks on cycles with permutative orthogonal coins.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_coin = sub.add_parser("coin", help="construct and classify a coin")
    _add_coin_spec(p_coin)
    _add_common(p_coin)

    p_period = sub.add_parser("period", help="compute the walk period by all methods")
    _add_coin_spec(p_period)
    p_period.add_argument("--n", type=int, required=True)
    p_period.add_argument("--a", type=int, default=0)
    p_period.add_argument("--methods", type=str, default=",".join(_period.METHODS))
    _add_common(p_period)

    p_sim = sub.add_parser("simulate", help="emit t,position,probability CSV")
    _add_coin_spec(p_sim)
    p_sim.add_argument("--n", type=int, required=True)
    p_sim.add_argument("--a", type=int, default=0)
    p_sim.add_argument("--start", type=int, help="start vertex of a localized state")
    p_sim.add_argument("--coinstate", type=int, help="coin state of a localized state")
    p_sim.add_argument("--state-file", type=str, help="JSON file with an amplitudes array")
    _add_common(p_sim, tmax_help="largest time step to emit", tmax_required=True)

    p_table = sub.add_parser("table", help="period reports over a parameter sweep")
    p_table.add_argument("--family", choices=_coins.FAMILIES, required=True)
    p_table.add_argument("--theta-list", type=str, help="comma-separated angles in radians")
    p_table.add_argument("--theta-grid", type=str, help="START:STOP:COUNT grid of angles")
    p_table.add_argument("--rational-grid", type=int,
                         help="all theta = 2*pi*m/q with q <= bound and gcd(m, q) = 1")
    p_table.add_argument("--n-list", type=str, required=True)
    p_table.add_argument("--a-list", type=str, default="0")
    p_table.add_argument("--methods", type=str, default=",".join(_period.METHODS))
    _add_common(p_table)

    p_verify = sub.add_parser("verify", help="run a sampled invariant suite")
    p_verify.add_argument("--suite", choices=_verify.SUITES + ("all",), required=True)
    p_verify.add_argument("--samples", type=int, default=None)
    _add_common(p_verify)

    return parser


_HANDLERS = {
    "coin": cmd_coin,
    "period": cmd_period,
    "simulate": cmd_simulate,
    "table": cmd_table,
    "verify": cmd_verify,
}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return _HANDLERS[args.command](args, parser)
    except LivelyWalkError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
