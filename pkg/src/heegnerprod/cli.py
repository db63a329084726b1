"""Command line interface and the coefficient-table file format.

Exit codes: 0 success, 1 verification failure, 2 usage error, 3 precondition violation.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from typing import List, Optional, Sequence, TextIO

from .algebra import QSeries, format_number, is_fundamental_discriminant
from .borcherds import ExponentData, dlog_expansion, twisted_product
from .errors import PreconditionError, VerificationError
from .heegner import BQF, genus_char, genus_char_oracle, twisted_divisor, classes
from .vvforms import VVCoeffs, hecke_Tp

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_PRECONDITION = 0, 1, 2, 3


class UsageError(Exception):
    pass


# --------------------------------------------------------------------------
# coefficient-table files


def dump_table(table: VVCoeffs) -> str:
    doc = {
        "N": table.N,
        "sigma": table.sigma,
        "k": str(table.k),
        "entries": [{"n": str(n), "h": h, "c": str(c)} for (n, h), c in table.entries.items()],
    }
    return json.dumps(doc, indent=1) + "\n"


def parse_table(text: str) -> VVCoeffs:
    try:
        doc = json.loads(text)
        entries = {(Fraction(e["n"]), int(e["h"])): Fraction(e["c"]) for e in doc["entries"]}
        return VVCoeffs(int(doc["N"]), int(doc["sigma"]), Fraction(doc["k"]), entries)
    except (KeyError, TypeError, ValueError, json.JSONDecodeError) as exc:
        if isinstance(exc, PreconditionError):
            raise
        raise UsageError(f"malformed coefficient table: {exc}") from None


def _read_table(path: str) -> VVCoeffs:
    try:
        with open(path, encoding="utf-8") as fh:
            return parse_table(fh.read())
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None


# --------------------------------------------------------------------------
# helpers


def series_lines(series: QSeries) -> List[str]:
    return [f"q^{{{e}}}: {format_number(c)}" for e, c in series.items()]


def _qexp(form: str, prec: int) -> QSeries:
    from . import modforms as mf

    simple = {
        "eta": mf.eta_series,
        "theta": mf.theta_series,
        "E4": lambda p: mf.eisenstein_series(4, p),
        "E6": lambda p: mf.eisenstein_series(6, p),
        "j": mf.j_series,
        "j6star": lambda p: mf.level6_forms(p)[0],
        "delta6": lambda p: mf.level6_forms(p)[1],
        "omega": lambda p: mf.mock_series(p).omega,
    }
    if form in simple:
        return simple[form](prec)
    if form.startswith("fd:"):
        try:
            d = int(form[3:])
        except ValueError:
            raise UsageError(f"bad plus-space index in {form!r}") from None
        basis = mf.plus_space_basis(d, max(prec, abs(d) + 1))
        return next(pf.series for pf in basis if pf.d == d).truncate(prec)
    raise UsageError(f"unknown form {form!r}")


def _exponent_data(args, prec: int) -> ExponentData:
    source = args.exponents
    if source.startswith("builtin:"):
        from .scenarios import mock6_data, zagier5_data

        builders = {"zagier5": zagier5_data, "mock6": mock6_data}
        name = source[len("builtin:"):]
        if name not in builders:
            raise UsageError(f"unknown builtin exponent set {name!r}")
        data = builders[name](prec)
        for flag, value in (("delta", data.delta), ("root", data.r), ("level", data.N)):
            given = getattr(args, flag)
            if given is not None and given != value:
                raise UsageError(f"--{flag} {given} conflicts with builtin:{name} ({value})")
        return data
    if None in (args.delta, args.root, args.level):
        raise UsageError("--delta, --root and --level are required with an exponent file")
    table = _read_table(source)
    if table.N != args.level:
        raise UsageError("exponent table level differs from --level")
    # c(n) = c^+(|delta| n^2 / 4N, r n)
    c_plus = {n: table[(Fraction(abs(args.delta) * n * n, 4 * args.level), args.root * n)]
              for n in range(1, prec)}
    return ExponentData(args.delta, args.root, args.level, c_plus)


def _parse_ints(text: str, count: int, what: str) -> List[int]:
    try:
        values = [int(x) for x in text.split(",")]
    except ValueError:
        raise UsageError(f"{what} must be {count} comma separated integers") from None
    if len(values) != count:
        raise UsageError(f"{what} must be {count} comma separated integers")
    return values


# --------------------------------------------------------------------------
# subcommands


def cmd_qexp(args, out: TextIO) -> int:
    for line in series_lines(_qexp(args.form, args.prec)):
        print(line, file=out)
    return EXIT_OK


def cmd_heegner(args, out: TextIO) -> int:
    delta = args.delta
    if delta == 1:
        found = classes(args.level, args.disc, args.root)
        scale = 2 if args.normalize_w2 else 1
        rows = [(cl, Fraction(scale, cl.w)) for cl in found]
    else:
        if args.disc % delta:
            raise PreconditionError("--delta must divide --disc")
        d = args.disc // delta
        sgn = 1 if delta > 0 else -1
        div = twisted_divisor(delta, args.root_delta, args.level, Fraction(d, 4 * args.level * sgn),
                              _h_for(args, d), normalize_w2=args.normalize_w2)
        rows = div.entries
    print(f"classes: {len(rows)}", file=out)
    for cl, weight in rows:
        print(f"{cl.rep}  point={format_number(cl.point)}  w={cl.w}  weight={weight}", file=out)
    return EXIT_OK


def _h_for(args, d: int) -> int:
    """Find ``h`` with ``r_delta * h = root (mod 2N)``."""
    mod = 2 * args.level
    for h in range(mod):
        if (args.root_delta * h - args.root) % mod == 0 and (d - h * h) % (4 * args.level) == 0:
            return h
    raise PreconditionError("no h with r_delta * h = root (mod 2N) and matching congruence")


def cmd_genus_char(args, out: TextIO) -> int:
    a, b, c = _parse_ints(args.form, 3, "--form")
    q = BQF(a, b, c)
    fn = genus_char_oracle if args.oracle else genus_char
    print(fn(args.delta, q, args.level), file=out)
    return EXIT_OK


def cmd_product(args, out: TextIO) -> int:
    data = _exponent_data(args, args.prec)
    series = twisted_product(data, args.prec)
    for line in series_lines(series):
        print(line, file=out)
    return EXIT_OK


def cmd_dlog(args, out: TextIO) -> int:
    data = _exponent_data(args, args.prec)
    for line in series_lines(dlog_expansion(data, args.prec)):
        print(line, file=out)
    return EXIT_OK


def cmd_lvalue(args, out: TextIO) -> int:
    from .lfun import EllipticCurve, l_central, l_derivative, newform_an, required_coefficients

    curve = EllipticCurve(tuple(_parse_ints(args.curve, 5, "--curve")), args.cond)
    if not is_fundamental_discriminant(args.twist):
        raise PreconditionError(f"{args.twist} is not a fundamental discriminant")
    M = required_coefficients(args.cond, args.twist, args.tol)
    G = newform_an(curve, M)
    fn = l_derivative if args.derivative else l_central
    print(f"{fn(G, args.twist, args.tol):.12f}", file=out)
    return EXIT_OK


def cmd_verify(args, out: TextIO) -> int:
    from . import scenarios

    kwargs = {}
    if args.prec is not None:
        # --prec P checks every coefficient up to and including q^P
        kwargs["prec"] = args.prec + 1
    if args.tol is not None:
        if args.scenario != "gross37":
            raise UsageError("--tol only applies to gross37")
        kwargs["tol"] = args.tol
    runner = {"zagier5": scenarios.verify_zagier5, "mock6": scenarios.verify_mock6,
              "gross37": scenarios.verify_gross37}[args.scenario]
    result = runner(**kwargs)
    print(result.report(), file=out)
    return EXIT_OK if result.passed else EXIT_FAIL


def cmd_hecke(args, out: TextIO) -> int:
    table = _read_table(args.input)
    result = hecke_Tp(table, args.p)
    with open(args.out, "w", encoding="utf-8") as fh:
        fh.write(dump_table(result))
    print(f"wrote {len(result.entries)} entries to {args.out}", file=out)
    return EXIT_OK


# --------------------------------------------------------------------------


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="heegnerprod", description="Twisted Borcherds products and Heegner divisors.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("qexp", help="print a q-expansion")
    p.add_argument("form", help="eta, theta, E4, E6, j, j6star, delta6, fd:<d> or omega")
    p.add_argument("--prec", type=int, required=True)
    p.set_defaults(func=cmd_qexp)

    p = sub.add_parser("heegner", help="list Heegner classes of discriminant D")
    p.add_argument("--level", type=int, required=True)
    p.add_argument("--disc", type=int, required=True)
    p.add_argument("--root", type=int, required=True)
    p.add_argument("--delta", type=int, default=1, help="twist the weights by chi_delta")
    p.add_argument("--root-delta", type=int, default=None,
                   help="r with delta = r^2 mod 4N (defaults to the smallest)")
    p.add_argument("--normalize-w2", action="store_true")
    p.set_defaults(func=cmd_heegner)

    p = sub.add_parser("genus-char", help="evaluate the genus character")
    p.add_argument("--delta", type=int, required=True)
    p.add_argument("--form", required=True, help="a,b,c")
    p.add_argument("--level", type=int, default=1)
    p.add_argument("--oracle", action="store_true", help="use the brute-force oracle")
    p.set_defaults(func=cmd_genus_char)

    for name, func in (("product", cmd_product), ("dlog", cmd_dlog)):
        p = sub.add_parser(name, help=f"expand the twisted {'product' if name == 'product' else 'log-derivative'}")
        p.add_argument("--delta", type=int)
        p.add_argument("--root", type=int)
        p.add_argument("--level", type=int)
        p.add_argument("--exponents", required=True, help="FILE or builtin:zagier5 / builtin:mock6")
        p.add_argument("--prec", type=int, required=True)
        p.set_defaults(func=func)

    p = sub.add_parser("lvalue", help="twisted L-value or derivative at s = 1")
    p.add_argument("--curve", required=True, help="a1,a2,a3,a4,a6")
    p.add_argument("--cond", type=int, required=True)
    p.add_argument("--twist", type=int, required=True)
    p.add_argument("--tol", type=float, default=1e-10)
    p.add_argument("--derivative", action="store_true")
    p.set_defaults(func=cmd_lvalue)

    p = sub.add_parser("verify", help="run a worked example end to end")
    p.add_argument("scenario", choices=["zagier5", "mock6", "gross37"])
    p.add_argument("--prec", type=int)
    p.add_argument("--tol", type=float)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("hecke", help="apply T(p) to a coefficient table")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_hecke)
    return parser


def run(argv: Optional[Sequence[str]] = None, out: TextIO = None, err: TextIO = None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        args = build_parser().parse_args(argv)
        if args.command == "heegner" and args.delta != 1 and args.root_delta is None:
            mod = 4 * args.level
            args.root_delta = next((r for r in range(2 * args.level) if (args.delta - r * r) % mod == 0), None)
            if args.root_delta is None:
                raise PreconditionError(f"{args.delta} is not a square mod {mod}")
        if getattr(args, "prec", None) is not None and args.prec <= 0:
            raise UsageError("--prec must be positive")
        return args.func(args, out)
    except UsageError as exc:
        print(f"usage error: {exc}", file=err)
        return EXIT_USAGE
    except PreconditionError as exc:
        print(f"precondition violated: {exc}", file=err)
        return EXIT_PRECONDITION
    except VerificationError as exc:
        print(f"verification failed: {exc}", file=err)
        return EXIT_FAIL


def main() -> None:
    sys.exit(run())
