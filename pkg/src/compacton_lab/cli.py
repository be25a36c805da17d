"""Command-line frontend.

Subcommands: classify, profile, quadrature, verify, roots, catalog.

Exit codes
  0  success
  2  invalid flags or parameters
  3  parameters violate the family's validity conditions
  4  parity obstruction (even root of a negative base)
  5  at least one verification check failed (the report is still written)
  6  no positive root of the potential, or a divergent half-width integral
"""

from __future__ import annotations

import argparse
import io
import json
import math
import os
import sys
import tempfile
import warnings
from fractions import Fraction
from typing import Dict, List, Optional, Sequence

import numpy as np

from . import __version__
from . import specfun as sf
from .classify import Kind, classify_pointwise, quadrature_case
from .errors import (CompactonError, DivergentIntegral, NoRoot, NonCompact, ParityError,
                     ValidityError)
from .families import (FAMILY_TABLE, SOLITARY, FamilyId, catalog_admissible, evaluate,
                       family_cutoff_power, make_profile, validity_failures)
from .params import (ReducedConstants, as_rational, check_dimensions, fmt_rational,
                     kinematics, make_equation, make_wave, reduced_constants)
from .quadrature import NotASolutionWarning, PotentialSpec, invert_profile, solve_quadrature

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_VALIDITY = 3
EXIT_PARITY = 4
EXIT_CHECK = 5
EXIT_ROOT = 6

FLOAT_FMT = "%.12e"


class UsageError(Exception):
    """Bad flag values detected after argparse accepted them."""


# ---------------------------------------------------------------------------
# formatting and output
# ---------------------------------------------------------------------------

def fmt(x) -> str:
    return FLOAT_FMT % float(x)


def _jsonable(obj):
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, Fraction):
        return fmt_rational(obj)
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        v = float(obj)
        if math.isnan(v):
            return "nan"
        if math.isinf(v):
            return "inf" if v > 0 else "-inf"
        # fixed formatting keeps output byte-identical across runs
        return float(fmt(v))
    if hasattr(obj, "value"):
        return obj.value
    return obj


def dump_json(obj) -> str:
    return json.dumps(_jsonable(obj), indent=2, sort_keys=True, ensure_ascii=False) + "\n"


def emit(text: str, path: Optional[str]) -> None:
    """Write to ``path`` atomically, or to stdout."""
    if not path:
        sys.stdout.write(text)
        return
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".tmp-", suffix=".part")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def csv_table(header: Sequence[str], columns: Sequence[np.ndarray]) -> str:
    buf = io.StringIO()
    buf.write(",".join(header) + "\n")
    for row in zip(*columns):
        buf.write(",".join(fmt(v) for v in row) + "\n")
    return buf.getvalue()


def symmetric_grid(half: float, samples: int) -> np.ndarray:
    """Odd number of points on [-half, half] with exact 0 and exact mirror pairs."""
    k = max(1, (samples - 1) // 2)
    pos = half * np.arange(1, k + 1) / k
    return np.concatenate([-pos[::-1], [0.0], pos])


# ---------------------------------------------------------------------------
# parsing
# ---------------------------------------------------------------------------

def _rational_arg(text: str) -> Fraction:
    try:
        return as_rational(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}") from None


def _float_list(text: str) -> List[float]:
    if text.strip() == "":
        return []
    try:
        return [float(v) for v in text.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma separated numbers: {text!r}") from None


def _key_val(text: str):
    key, sep, val = text.partition("=")
    if not sep or not key:
        raise argparse.ArgumentTypeError(f"expected key=value, got {text!r}")
    try:
        return key.strip(), float(val)
    except ValueError:
        raise argparse.ArgumentTypeError(f"value of {key} is not a number") from None


def _add_equation(p: argparse.ArgumentParser, required: bool = True) -> None:
    g = p.add_argument_group("equation and wave")
    g.add_argument("--a", type=float, required=required, help="convection coefficient")
    g.add_argument("--b", type=float, required=required, help="dispersion coefficient")
    g.add_argument("--s", type=int, choices=(-1, 0, 1), required=required,
                   help="sign of the transverse term")
    g.add_argument("--m", type=_rational_arg, required=required, help="convection power, e.g. 3/2")
    g.add_argument("--n", type=_rational_arg, required=required, help="dispersion power")
    g.add_argument("--mu", type=_float_list, default=None,
                   help="transverse slopes, comma separated (N-1 values)")
    g.add_argument("--nu", type=float, required=required, help="wave parameter nu")
    g.add_argument("--N", type=int, default=None, help="space dimension (default len(mu)+1)")


def _add_family(p: argparse.ArgumentParser) -> None:
    p.add_argument("--family", required=True, choices=[f.value for f in FamilyId])
    p.add_argument("--extra", type=_key_val, action="append", default=[],
                   metavar="KEY=VAL", help="family extras such as alpha=1.5 (repeatable)")


def _add_output(p: argparse.ArgumentParser, formats=("csv", "json"), default="csv") -> None:
    p.add_argument("--format", choices=formats, default=default)
    p.add_argument("--output", "-o", default=None, help="output file (default stdout)")


def equation_from(args):
    mu = args.mu if args.mu is not None else []
    N = args.N if args.N is not None else len(mu) + 1
    eq = make_equation(args.a, args.b, args.s, args.m, args.n, N)
    wave = make_wave(mu, args.nu)
    check_dimensions(eq, wave)
    return eq, wave


def _has_equation(args) -> bool:
    return all(getattr(args, k, None) is not None for k in ("a", "b", "s", "m", "n", "nu"))


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="compacton-lab",
        description="Travelling waves of the K_N(m,n) equation: catalog, "
                    "classification, quadrature oracle and verification.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("classify", help="admissible families and solution classes")
    _add_equation(p)
    p.add_argument("--C2", type=float, default=0.0, help="integration constant C2")
    p.add_argument("--C3", type=float, default=0.0, help="integration constant C3")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--output", "-o", default=None)

    p = sub.add_parser("profile", help="sample a catalog profile")
    _add_family(p)
    _add_equation(p)
    p.add_argument("--samples", type=int, default=401)
    p.add_argument("--with-V", action="store_true", help="add a V = U^n column")
    p.add_argument("--window", type=float, default=10.0,
                   help="solitary profiles: half-window in units of the width")
    _add_output(p)

    p = sub.add_parser("quadrature", help="numeric profile from the quadrature")
    _add_equation(p, required=False)
    for name in ("E", "C", "B", "A"):
        p.add_argument(f"--{name}", type=float, default=None,
                       help=f"potential coefficient {name} (needs --m/--n)")
    p.add_argument("--C2", type=float, default=0.0)
    p.add_argument("--C3", type=float, default=0.0)
    p.add_argument("--samples", type=int, default=200)
    p.add_argument("--compare", choices=[f.value for f in FamilyId], default=None,
                   help="closed form to compare against (needs the equation flags)")
    p.add_argument("--extra", type=_key_val, action="append", default=[], metavar="KEY=VAL")
    _add_output(p, default="json")

    p = sub.add_parser("verify", help="run the verification suite on a catalog profile")
    _add_family(p)
    _add_equation(p)
    p.add_argument("--checks", default=None,
                   help="comma separated subset of residual,singular,weakform2,"
                        "weakform4,conslaw,power")
    p.add_argument("--tol", type=_key_val, action="append", default=[], metavar="NAME=VAL",
                   help="tolerance override (repeatable)")
    p.add_argument("--seed", type=int, default=0, help="seed for random test functions")
    p.add_argument("--tests", type=int, default=20, help="number of random bump functions")
    p.add_argument("--output", "-o", default=None)

    p = sub.add_parser("roots", help="tan fixed points and elliptic constants")
    p.add_argument("--count", type=int, default=3)
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--output", "-o", default=None)

    p = sub.add_parser("catalog", help="list the families")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--output", "-o", default=None)
    return parser


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------

def _family_class(family: FamilyId, eq, wave) -> str:
    if family in SOLITARY:
        return "solitary (unbounded support)"
    p = family_cutoff_power(family, eq)
    return str(classify_pointwise(p, eq, wave))


def _case_report(eq, wave, C2: float, C3: float):
    rc = reduced_constants(eq, wave, C2=C2, C3=C3)
    return rc, quadrature_case(rc, eq)


def cmd_classify(args) -> int:
    eq, wave = equation_from(args)
    kin = kinematics(eq, wave)
    families = catalog_admissible(eq, wave)
    rc, case = _case_report(eq, wave, args.C2, args.C3)
    rows = [(f.value, _family_class(f, eq, wave)) for f in families]
    if args.format == "json":
        out = {"schema": 1, "command": "classify",
               "kinematics": {"kappa": kin.kappa, "speed": kin.speed, "theta": kin.theta,
                              "phi": kin.phi},
               "constants": {"E": rc.E, "C": rc.C, "B": rc.B, "A": rc.A},
               "quadrature_case": case.as_dict(),
               "families": [{"family": f, "class": c} for f, c in rows]}
        emit(dump_json(out), args.output)
        return EXIT_OK
    lines = [f"kappa = {fmt(kin.kappa)}", f"speed = {fmt(kin.speed)}",
             f"theta = {fmt(kin.theta)}"]
    if kin.phi is not None:
        lines.append(f"phi = {fmt(kin.phi)}")
    lines.append(f"constants E={fmt(rc.E)} C={fmt(rc.C)} B={fmt(rc.B)} A={fmt(rc.A)}")
    lines.append(f"quadrature case: {case.quadrature_case} (weak={case.exists_weak}, "
                 f"compacton={case.exists_compacton})")
    if case.vmax is not None:
        lines.append(f"V_max = {fmt(case.vmax)}")
    lines.append("admissible families:" if rows else "admissible families: none")
    lines.extend(f"  {f:<16s} {c}" for f, c in rows)
    emit("\n".join(lines) + "\n", args.output)
    return EXIT_OK


def _profile_from(args):
    eq, wave = equation_from(args)
    return make_profile(args.family, eq, wave, dict(args.extra))


def cmd_profile(args) -> int:
    if args.samples < 3:
        raise UsageError("--samples must be at least 3")
    prof = _profile_from(args)
    half = 1.1 * prof.L if prof.compact else args.window * prof.width
    xs = symmetric_grid(half, args.samples)
    u = evaluate(prof, xs)
    cols, header = [xs, u], ["xi", "u"]
    if args.with_V:
        cols.append(sf.signed_pow(u, prof.eq.n))
        header.append("V")
    if args.format == "csv":
        emit(csv_table(header, cols), args.output)
        return EXIT_OK
    kin = kinematics(prof.eq, prof.wave)
    meta = {"family": prof.family.value, "L": prof.L, "p": prof.p,
            "sign_class": prof.sign_class, "kappa": kin.kappa, "speed": kin.speed,
            "theta": kin.theta, "phi": kin.phi, "C1": prof.C1, "C2": prof.C2,
            "nodes": list(prof.nodes), "extras": dict(prof.extras)}
    data = {name: list(col) for name, col in zip(header, cols)}
    emit(dump_json({"schema": 1, "command": "profile", "metadata": meta, "samples": data}),
         args.output)
    return EXIT_OK


def cmd_quadrature(args) -> int:
    if args.samples < 16:
        raise UsageError("--samples must be at least 16")
    direct = [getattr(args, k) for k in ("E", "C", "B", "A")]
    eq = wave = None
    if _has_equation(args):
        eq, wave = equation_from(args)
    if any(v is not None for v in direct):
        if args.m is None or args.n is None:
            raise UsageError("--E/--C/--B/--A need --m and --n")
        E, C, B, A = (0.0 if v is None else v for v in direct)
        rc = ReducedConstants(E, C, B, A)
        m, n = args.m, args.n
    elif eq is not None:
        rc = reduced_constants(eq, wave, C2=args.C2, C3=args.C3)
        m, n = eq.m, eq.n
    else:
        raise UsageError("give either the equation flags or --E/--C/--B/--A with --m/--n")
    if m <= 0 or n <= 0:
        raise UsageError("powers must be positive")
    if rc.A == 0.0:
        raise NoRoot("A=0: no positive root exists")
    spec = PotentialSpec(rc, m, n)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", NotASolutionWarning)
        sol = solve_quadrature(spec)
    numeric = invert_profile(spec, args.samples)
    out: Dict = {"schema": 1, "command": "quadrature",
                 "constants": {"E": rc.E, "C": rc.C, "B": rc.B, "A": rc.A},
                 "m": m, "n": n, "V_max": sol.vmax, "L": sol.L, "warning": sol.warning}
    if rc.E != 0.0:
        out["classification"] = str(Kind.NOT_A_SOLUTION)
    if args.compare:
        if eq is None:
            raise UsageError("--compare needs the equation flags")
        from .verify import oracle_deviation
        prof = make_profile(args.compare, eq, wave, dict(args.extra))
        dev, ldev = oracle_deviation(prof, numeric)
        out["compare"] = {"family": args.compare, "sup_deviation": dev,
                          "L_relative_error": ldev}
        sys.stderr.write(f"sup-norm deviation vs {args.compare}: {fmt(dev)}; "
                         f"L relative error: {fmt(ldev)}\n")
    if sol.warning:
        sys.stderr.write(f"warning: {sol.warning}\n")
    if args.format == "csv":
        emit(csv_table(["xi", "V", "u"], [numeric.grid, numeric.V, numeric.U]), args.output)
    else:
        out["samples"] = {"xi": list(numeric.grid), "V": list(numeric.V), "u": list(numeric.U)}
        emit(dump_json(out), args.output)
    return EXIT_OK


def cmd_verify(args) -> int:
    from . import verify

    checks = verify.CHECKS
    if args.checks:
        checks = tuple(c.strip() for c in args.checks.split(",") if c.strip())
        unknown = [c for c in checks if c not in verify.CHECKS]
        if unknown:
            raise UsageError(f"unknown checks: {', '.join(unknown)}")
    overrides = {}
    for key, val in args.tol:
        if key not in verify.DEFAULT_TOLERANCES:
            raise UsageError(f"unknown tolerance name {key!r}")
        overrides[key] = val
    if args.tests < 1:
        raise UsageError("--tests must be positive")
    try:
        verify.tolerances()
    except ValueError as exc:
        raise UsageError(f"{verify.TOLERANCE_ENV}: {exc}") from None
    prof = _profile_from(args)
    report = verify.run_checks(prof, checks, overrides, seed=args.seed, n_tests=args.tests)
    emit(dump_json(report.as_dict()), args.output)
    for e in report.entries:
        if not e.passed:
            sys.stderr.write(f"FAIL {e.check_name}: {fmt(e.measured)} > {fmt(e.tolerance)}\n")
    return EXIT_OK if report.passed else EXIT_CHECK


def cmd_roots(args) -> int:
    if args.count < 1:
        raise UsageError("--count must be at least 1")
    roots = sf.tan_fixed_points(args.count)
    K = sf.elliptic_K(1.0 / math.sqrt(2.0))
    K2i = sf.arcsn_zero_imag(1.0)
    if args.format == "json":
        emit(dump_json({"schema": 1, "command": "roots", "tan_fixed_points": roots,
                        "K(1/sqrt2)": K, "2K(i)": K2i}), args.output)
        return EXIT_OK
    lines = [f"z{j} = {fmt(z)}" for j, z in enumerate(roots, start=1)]
    lines += [f"K(1/sqrt2) = {fmt(K)}", f"2K(i) = {fmt(K2i)}"]
    emit("\n".join(lines) + "\n", args.output)
    return EXIT_OK


def cmd_catalog(args) -> int:
    rows = []
    for fam, info in FAMILY_TABLE.items():
        rows.append({"family": fam.value, "summary": info.summary,
                     "expected_class": info.expected_class or "solitary",
                     "extras": dict(info.extras)})
    if args.format == "json":
        emit(dump_json({"schema": 1, "command": "catalog", "families": rows}), args.output)
        return EXIT_OK
    lines = []
    for r in rows:
        lines.append(f"{r['family']:<16s} {r['expected_class']:<15s} {r['summary']}")
        for k, v in r["extras"].items():
            lines.append(f"{'':<16s}   {k}: {v}")
    emit("\n".join(lines) + "\n", args.output)
    return EXIT_OK


COMMANDS = {"classify": cmd_classify, "profile": cmd_profile, "quadrature": cmd_quadrature,
            "verify": cmd_verify, "roots": cmd_roots, "catalog": cmd_catalog}


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_USAGE
    except ParityError as exc:
        sys.stderr.write(f"parity error: {exc}\n")
        return EXIT_PARITY
    except ValidityError as exc:
        sys.stderr.write(f"validity error: {exc}\n")
        return EXIT_VALIDITY
    except (NoRoot, DivergentIntegral) as exc:
        sys.stderr.write(f"no profile: {exc}\n")
        return EXIT_ROOT
    except (CompactonError, NonCompact) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
