"""Command-line front end.

Exit codes: 0 on success, 1 when a verification sweep finds a failing
congruence, 2 for usage or configuration errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from typing import Optional, Sequence

from . import kloos, padic
from .ff import FieldError, make_field
from .sweeps import CHECKS, JobError, VerificationJob, emit_report, run_verification


class FieldSpecError(ValueError):
    pass


def parse_field_spec(text: str) -> tuple[int, int, Optional[tuple[int, ...]]]:
    """Parse 'p=<int>,n=<int>[,mod=<c0>,<c1>,...]' into field parameters."""
    parts = text.split(",")
    seen: dict[str, int] = {}
    modulus: Optional[tuple[int, ...]] = None
    i = 0
    while i < len(parts):
        part = parts[i]
        key, eq, val = part.partition("=")
        if not eq:
            raise FieldSpecError(
                f"field spec {text!r}: expected key=value at position {i + 1}, got {part!r}")
        if key in seen:
            raise FieldSpecError(f"field spec {text!r}: duplicate key {key!r}")
        if key == "mod":
            tail = [val] + parts[i + 1:]
            try:
                modulus = tuple(int(c) for c in tail)
            except ValueError:
                raise FieldSpecError(
                    f"field spec {text!r}: modulus coefficients must be integers") from None
            seen[key] = i
            break
        if key not in ("p", "n"):
            raise FieldSpecError(
                f"field spec {text!r}: unknown key {key!r} at position {i + 1}")
        try:
            seen[key] = int(val)
        except ValueError:
            raise FieldSpecError(
                f"field spec {text!r}: {key} must be an integer, got {val!r}") from None
        i += 1
    if "p" not in seen or "n" not in seen:
        raise FieldSpecError(f"field spec {text!r}: both p and n are required")
    return seen["p"], seen["n"], modulus


def _parse_element(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(c) for c in text.split(","))
    except ValueError:
        raise FieldSpecError(
            f"element {text!r}: expected comma-separated integers") from None


def _open_out(path: Optional[str]):
    if path is None:
        return sys.stdout, False
    return open(path, "w"), True


def _field_from_args(args) -> tuple:
    p, n, modulus = parse_field_spec(args.field)
    return make_field(p, n, modulus)


def _poly_payload(poly) -> dict:
    return {"coeffs": list(poly.coeffs), "degree": poly.degree, "text": str(poly)}


def _cmd_kloosterman(args) -> int:
    ctx = _field_from_args(args)
    a = ctx.element(_parse_element(args.a))
    kv = kloos.kloosterman(ctx, a)
    rational = kv.as_int()
    if args.format == "json-lines":
        print(json.dumps({
            "a": list(a.coeffs), "counts": list(kv.counts),
            "coords": list(kv.value.coords), "rational": rational,
        }))
    else:
        print(f"a = {a}")
        print(f"counts = {kv.counts}")
        print(f"value = {kv.value}" + (f" = {rational}" if rational is not None else ""))
    return 0


def _cmd_minpoly(args) -> int:
    ctx = _field_from_args(args)
    a = ctx.element(_parse_element(args.a))
    res = kloos.min_poly(ctx, a)
    if args.format == "json-lines":
        print(json.dumps({
            "a": list(a.coeffs), "min_poly": _poly_payload(res.min_poly),
            "multiplicity": res.multiplicity, "char_poly": _poly_payload(res.char_poly),
        }))
    else:
        print(f"min poly  = {res.min_poly}")
        print(f"multiplicity = {res.multiplicity}")
        print(f"char poly = {res.char_poly}")
    return 0


def _cmd_charpoly(args) -> int:
    ctx = _field_from_args(args)
    a = ctx.element(_parse_element(args.a))
    poly = kloos.char_poly(ctx, a)
    if args.format == "json-lines":
        print(json.dumps({"a": list(a.coeffs), "char_poly": _poly_payload(poly)}))
    else:
        print(poly)
    return 0


def _cmd_gauss(args) -> int:
    ctx = _field_from_args(args)
    uctx = padic.lift_field(ctx, args.precision)
    g = padic.gauss_sum(uctx, args.j)
    wt = padic.p_weight(args.j, ctx.p)
    arguments = padic._gamma_arguments(uctx, args.j)
    fracs = [str(arg.rational) for arg in arguments]
    gammas = [padic.gamma_p(arg.residue).residue for arg in arguments]
    if args.format == "json-lines":
        print(json.dumps({
            "j": args.j, "weight": wt, "fractions": fracs, "gammas": gammas,
            "pi_exponent": g.pi_exponent, "unit": list(g.unit.coords),
            "precision": args.precision,
        }))
    else:
        print(f"j = {args.j}  weight = {wt}")
        print(f"gamma arguments = {fracs}")
        print(f"gamma values mod {uctx.pk} = {gammas}")
        print(f"g(j) = pi^{g.pi_exponent} * {g.unit.coords}")
    return 0


def _cmd_gamma(args) -> int:
    if "/" in args.x:
        num, _, den = args.x.partition("/")
        frac = Fraction(int(num), int(den))
        value = padic.padic_from_rational(frac.numerator, frac.denominator,
                                          args.p, args.precision)
    else:
        value = padic.PadicInt(args.p, args.precision, int(args.x))
    out = padic.gamma_p(value)
    if args.format == "json-lines":
        print(json.dumps({"p": args.p, "precision": args.precision,
                          "argument": value.residue, "gamma": out.residue}))
    else:
        print(f"gamma_{args.p}({value.residue} mod {value.pk}) = {out.residue}")
    return 0


def _cmd_spectrum(args) -> int:
    ctx = _field_from_args(args)
    job = VerificationJob(ctx.p, ctx.n, "spectrum", modulus=ctx.modulus,
                          scope=("all",), jobs=args.jobs)
    report = run_verification(job)
    stream, close = _open_out(args.out)
    try:
        emit_report(report, args.format, stream, records="all")
    finally:
        if close:
            stream.close()
    print(f"# elapsed {report.wall_time:.3f}s", file=sys.stderr)
    return 0 if not report.failures else 1


def _cmd_verify(args) -> int:
    p, n, modulus = parse_field_spec(args.field)
    chosen = [s for s in (args.all, args.a is not None, args.j is not None,
                          args.sample is not None) if s]
    if len(chosen) != 1:
        raise JobError("choose exactly one of --all, --a, --j, --sample")
    if args.all:
        scope: tuple = ("all",)
    elif args.a is not None:
        scope = ("element", _parse_element(args.a))
    elif args.j is not None:
        scope = ("exponent", args.j)
    else:
        scope = ("sample", args.sample, args.seed)
    job = VerificationJob(p, n, args.check, modulus=modulus, scope=scope,
                          jobs=args.jobs, precision=args.precision)
    report = run_verification(job)
    stream, close = _open_out(args.out)
    try:
        emit_report(report, args.format, stream, records=args.records)
    finally:
        if close:
            stream.close()
    print(f"# elapsed {report.wall_time:.3f}s", file=sys.stderr)
    return 0 if not report.failures else 1


def _add_field_arg(sp) -> None:
    sp.add_argument("--field", required=True,
                    help="field spec: p=<int>,n=<int>[,mod=<c0>,<c1>,...]")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ksum",
        description="Exact Kloosterman sums, minimal polynomials, and "
                    "p-adic congruence verification over F_{p^n}.")
    sub = parser.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("kloosterman", help="one Kloosterman sum, exactly")
    _add_field_arg(sp)
    sp.add_argument("--a", required=True, help="element coords, constant first")
    sp.add_argument("--format", choices=["summary", "json-lines"], default="summary")
    sp.set_defaults(handler=_cmd_kloosterman)

    sp = sub.add_parser("minpoly", help="minimal polynomial of K(a) over Q")
    _add_field_arg(sp)
    sp.add_argument("--a", required=True)
    sp.add_argument("--format", choices=["summary", "json-lines"], default="summary")
    sp.set_defaults(handler=_cmd_minpoly)

    sp = sub.add_parser("charpoly", help="product of (x - K) over the conjugates")
    _add_field_arg(sp)
    sp.add_argument("--a", required=True)
    sp.add_argument("--format", choices=["summary", "json-lines"], default="summary")
    sp.set_defaults(handler=_cmd_charpoly)

    sp = sub.add_parser("gauss", help="Gauss sum in pi-power normal form")
    _add_field_arg(sp)
    sp.add_argument("--j", type=int, required=True, help="character index in [1, q-2]")
    sp.add_argument("--precision", type=int, default=3, help="base-p digits")
    sp.add_argument("--format", choices=["summary", "json-lines"], default="summary")
    sp.set_defaults(handler=_cmd_gauss)

    sp = sub.add_parser("gamma", help="p-adic gamma at an integer or fraction")
    sp.add_argument("--p", type=int, required=True)
    sp.add_argument("--precision", type=int, default=3)
    sp.add_argument("--x", required=True, help="integer residue or num/den")
    sp.add_argument("--format", choices=["summary", "json-lines"], default="summary")
    sp.set_defaults(handler=_cmd_gamma)

    sp = sub.add_parser("spectrum", help="value frequencies over the whole field")
    _add_field_arg(sp)
    sp.add_argument("--jobs", type=int, default=None)
    sp.add_argument("--format", choices=["summary", "json-lines", "csv"],
                    default="summary")
    sp.add_argument("--out", default=None)
    sp.set_defaults(handler=_cmd_spectrum)

    sp = sub.add_parser("verify", help="run a congruence check over a scope")
    _add_field_arg(sp)
    sp.add_argument("--check", required=True, choices=sorted(CHECKS))
    sp.add_argument("--all", action="store_true", help="sweep the whole domain")
    sp.add_argument("--a", default=None, help="single element coords")
    sp.add_argument("--j", type=int, default=None, help="single Gauss-sum index")
    sp.add_argument("--sample", type=int, default=None, help="sample this many witnesses")
    sp.add_argument("--seed", type=int, default=0, help="sample seed")
    sp.add_argument("--jobs", type=int, default=None, help="worker processes")
    sp.add_argument("--precision", type=int, default=None, help="base-p digits")
    sp.add_argument("--format", choices=["summary", "json-lines", "csv"],
                    default="summary")
    sp.add_argument("--records", choices=["failures", "all"], default="failures",
                    help="json-lines: which cases to emit")
    sp.add_argument("--out", default=None, help="write the report here instead of stdout")
    sp.set_defaults(handler=_cmd_verify)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.handler(args)
    except (FieldSpecError, FieldError, JobError, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except OSError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
