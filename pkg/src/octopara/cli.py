"""``octopara`` command-line front end.

Exit codes:
    0  success
    1  verify found failing properties
    2  usage error or unknown suite
    3  operator is not self-adjoint
    4  an eigenvalue is not standard strong
    5  input could not be parsed
    6  function table misses a spectrum point
"""

from __future__ import annotations

import argparse
import sys

import numpy as np

from . import serialization as S
from .errors import (
    FnDomainError,
    NotSelfAdjoint,
    NotStandardStrong,
    ParseError,
    SpectrumMismatch,
    UnknownSuite,
)
from .funcalc import SpectrumFunction, phi, psi
from .paralinear import adjoint, operator_norm
from .polarization import QuadraticFormProbe, reconstruct_operator
from .spectral import decompose
from .verify import SUITES, run_suites

EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_USAGE = 2
EXIT_NOT_SELF_ADJOINT = 3
EXIT_NOT_STANDARD_STRONG = 4
EXIT_PARSE = 5
EXIT_FN_DOMAIN = 6


def _emit(obj, output: str | None) -> None:
    text = S.dumps(obj)
    if output:
        with open(output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _load_operator(path: str):
    return S.operator_from_json(S.read_json(path))


def cmd_verify(args) -> int:
    report = run_suites(args.suites, trials=args.trials, seed=args.seed, tol=args.tol)
    _emit(report.to_json(), args.output)
    return report.exit_code


def cmd_decompose(args) -> int:
    T = _load_operator(args.input)
    d = decompose(T, tol=args.tol if args.tol is not None else 1e-10, seed=args.seed)
    _emit(d.to_json(), args.output)
    return EXIT_OK


def cmd_polarize(args) -> int:
    T = _load_operator(args.input)
    R = reconstruct_operator(QuadraticFormProbe.from_operator(T))
    dev = float(np.abs(R.matrix - T.matrix).max())
    _emit({"operator": S.operator_to_json(R), "max_deviation": dev}, args.output)
    return EXIT_OK


def _fn_table(args, points) -> SpectrumFunction:
    if args.table:
        f = S.function_from_json(S.read_json(args.table))
        for lam in points:
            if not f.covers(lam):
                raise FnDomainError(f"function table has no entry for spectrum point {lam!r}")
        return f
    coeffs = args.poly
    if coeffs and len(coeffs) == 1 and coeffs[0].lstrip().startswith("["):
        parsed = S.loads(coeffs[0])
        cs = [float(c) if np.isscalar(c) else np.asarray(c, dtype=float) for c in parsed]
    else:
        try:
            cs = [float(c) for c in coeffs]
        except ValueError as e:
            raise ParseError(f"bad polynomial coefficient: {e}") from e
    for c in cs:
        if not np.isscalar(c) and np.shape(c) != (8,):
            raise ParseError("octonion coefficients need 8 entries")
    return SpectrumFunction.polynomial(cs, points)


def cmd_funcalc(args) -> int:
    T = _load_operator(args.input)
    d = decompose(T, tol=args.tol if args.tol is not None else 1e-10, seed=args.seed)
    f = _fn_table(args, d.spectrum())
    out = phi(f, d) if args.side == "right" else psi(f, d)
    _emit(S.operator_to_json(out), args.output)
    return EXIT_OK


def cmd_adjoint(args) -> int:
    _emit(S.operator_to_json(adjoint(_load_operator(args.input))), args.output)
    return EXIT_OK


def cmd_norm(args) -> int:
    _emit({"norm": operator_norm(_load_operator(args.input))}, args.output)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--tol", type=float, default=None, help="tolerance (default 1e-10; verify keeps per-property thresholds unless given)")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--trials", type=int, default=500)
    common.add_argument("--format", choices=["json"], default="json")
    common.add_argument("-o", "--output", default=None, help="write to this file instead of stdout")

    p = argparse.ArgumentParser(prog="octopara", description="Octonionic para-linear operator toolkit.")
    sub = p.add_subparsers(dest="command", required=True)

    v = sub.add_parser("verify", parents=[common], help="run randomized property suites")
    v.add_argument("suites", nargs="*", help=f"suites to run (default all): {', '.join(SUITES)}")
    v.set_defaults(func=cmd_verify)

    d = sub.add_parser("decompose", parents=[common], help="spectral decomposition of a self-adjoint operator")
    d.add_argument("input")
    d.set_defaults(func=cmd_decompose)

    pz = sub.add_parser("polarize", parents=[common], help="rebuild an operator from its quadratic form")
    pz.add_argument("input")
    pz.set_defaults(func=cmd_polarize)

    f = sub.add_parser("funcalc", parents=[common], help="apply the functional calculus")
    f.add_argument("input")
    g = f.add_mutually_exclusive_group(required=True)
    g.add_argument("--poly", nargs="+", help="coefficients c0 c1 ... of sum q^k c_k, or one JSON list")
    g.add_argument("--table", help="JSON function table file")
    f.add_argument("--side", choices=["left", "right"], default="right")
    f.set_defaults(func=cmd_funcalc)

    a = sub.add_parser("adjoint", parents=[common], help="adjoint operator")
    a.add_argument("input")
    a.set_defaults(func=cmd_adjoint)

    nm = sub.add_parser("norm", parents=[common], help="operator norm")
    nm.add_argument("input")
    nm.set_defaults(func=cmd_norm)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UnknownSuite as e:
        print(f"error: unknown suite {e.args[0]!r} (known: {', '.join(SUITES)})", file=sys.stderr)
        return EXIT_USAGE
    except NotSelfAdjoint as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_NOT_SELF_ADJOINT
    except NotStandardStrong as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_NOT_STANDARD_STRONG
    except ParseError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_PARSE
    except (FnDomainError, SpectrumMismatch) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_FN_DOMAIN


if __name__ == "__main__":
    sys.exit(main())
