"""``frobx`` command line.

Exit codes: 0 success, 1 usage or session schema error, 2 mathematical
precondition violated (or a selftest criterion failed), 3 polynomial parse
error, 4 I/O failure.
"""

from __future__ import annotations

import argparse
import logging
import sys

from . import acceptance
from .graded import (
    NotFiniteLengthError,
    end_degree,
    h0_summary,
    hilbert_numerator,
    is_finite_length,
    krull_dimension,
    length_of_quotient,
)
from .ideals import NotHomogeneousError, frobenius_power, saturate_irrelevant
from .lab import (
    TrickElementError,
    ann_exponent,
    brenner_bound,
    chudnovsky_check,
    eghk_estimate,
    element_trick_length,
    fekete_violations,
    frobenius_closure_probe,
    frobenius_profile,
    powers_profile,
    tight_closure_witness_search,
)
from .poly import ParseError
from .report import FORMATS, Report, emit_report
from .ring import ExponentOverflowError
from .session import SessionError, SessionParseError, load_session, parse_rational

EXIT_USAGE, EXIT_MATH, EXIT_PARSE, EXIT_IO = 1, 2, 3, 4
OBSERVED = "observed, not proven"


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _positive(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if v < 1:
        raise argparse.ArgumentTypeError("must be positive")
    return v


def _nonneg(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if v < 0:
        raise argparse.ArgumentTypeError("must be nonnegative")
    return v


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="frobx", description="Frobenius and local cohomology invariants of graded rings over F_p.")
    ap.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(p, session=True):
        if session:
            p.add_argument("--session", required=True, help="JSON session file")
            p.add_argument("--ideal", required=True, help="ideal name in the session")
        p.add_argument("--format", choices=FORMATS, default="human")
        p.add_argument("--out", help="write the report here instead of stdout")

    p = sub.add_parser("hilbert", help="Hilbert series numerator and function")
    common(p)
    p.add_argument("--max-degree", type=_nonneg, default=10)

    p = sub.add_parser("h0", help="saturation and H^0_m(R/J)")
    common(p)

    p = sub.add_parser("frobenius", help="profile over Frobenius powers I^[q]")
    common(p)
    p.add_argument("--emax", type=_positive, required=True)
    p.add_argument("--trick-element", help="homogeneous s for the two-length cross-check")
    p.add_argument("--threads", type=_positive, default=1)

    p = sub.add_parser("powers", help="profile over ordinary (or symbolic) powers I^n")
    common(p)
    p.add_argument("--nmax", type=_positive, required=True)
    p.add_argument("--symbolic", action="store_true", help="treat I as a prime of dimension one")
    p.add_argument("--threads", type=_positive, default=1)
    p.add_argument("--chudnovsky-n", type=_positive, help="also test (alpha(I)+N-1)/N <= alpha(I^(n))/n")

    p = sub.add_parser("closure", help="Frobenius closure probe and tight closure witness search")
    common(p)
    p.add_argument("--element", required=True)
    p.add_argument("--emax", type=_positive, required=True)
    p.add_argument("--witness-cap", type=_nonneg, default=4)

    p = sub.add_parser("bound", help="closed-form annihilation bound for two-generated ideals")
    common(p, session=False)
    p.add_argument("--curve-degree", type=_positive, required=True)
    p.add_argument("--gen-degrees", required=True, help="D1,D2")
    p.add_argument("--e", required=True, help="rational, e.g. 0 or -1 or 1/3")

    p = sub.add_parser("selftest", help="run the embedded acceptance corpus")
    p.add_argument("--quick", action="store_true")
    return ap


def _load(args):
    session = load_session(args.session)
    return session, session.ideal(args.ideal)


def _inputs(args, ideal=None) -> dict:
    out = {}
    if ideal is not None:
        out["ring"] = str(ideal.presentation)
        out["ideal"] = f"{args.ideal} = {ideal}"
    return out


def cmd_hilbert(args) -> Report:
    _, I = _load(args)
    N = hilbert_numerator(I)
    rep = Report("hilbert", _inputs(args, I), ["d", "hilbert_function"])
    for d in range(args.max_degree + 1):
        rep.rows.append({"d": d, "hilbert_function": N.hilbert_function(d)})
    rep.add("numerator", str(N))
    rep.add("dimension", krull_dimension(I))
    if is_finite_length(I):
        rep.add("length", length_of_quotient(I))
        rep.add("end", end_degree(I))
    return rep


def cmd_h0(args) -> Report:
    _, I = _load(args)
    I.require_homogeneous("h0")
    sat, step = saturate_irrelevant(I)
    h0 = h0_summary(I, sat)
    rep = Report("h0", _inputs(args, I), ["d", "dim_h0"])
    for d, c in enumerate(h0.diff):
        if c:
            rep.rows.append({"d": d, "dim_h0": c})
    rep.add("saturation", str(sat.basis))
    rep.add("stabilization_step", step)
    rep.add("length", h0.length)
    rep.add("end", h0.end)
    rep.add("ann_exp", ann_exponent(I))
    return rep


def cmd_frobenius(args) -> Report:
    session, I = _load(args)
    prof = frobenius_profile(I, args.emax, threads=args.threads)
    cols = ["e", "q", "h0_length", "h0_end", "ann_exp", "v", "ratio_hk", "ratio_v"]
    inputs = _inputs(args, I)
    inputs["emax"] = args.emax
    s = None
    if args.trick_element:
        s = session.presentation.parse(args.trick_element)
        inputs["trick_element"] = str(s)
        cols.append("trick_length")
    rep = Report("frobenius", inputs, cols)
    for r in prof.rows:
        row = {
            "e": r.e, "q": r.q, "h0_length": r.h0_length, "h0_end": r.h0_end,
            "ann_exp": r.ann_exp, "v": r.v, "ratio_hk": r.ratio_hk, "ratio_v": r.ratio_v,
        }
        if s is not None:
            row["trick_length"] = element_trick_length(I, s, "frobenius", r.e)
            if row["trick_length"] != r.h0_length:
                rep.warnings.append(f"trick length differs from H^0 length at e={r.e}")
        rep.rows.append(row)
    rep.add("dim", prof.dim)
    rep.add("b_hat", prof.b_hat, OBSERVED)
    rep.add("c_hat", prof.c_hat, OBSERVED)
    if len(prof.rows) >= 2:
        est = eghk_estimate(prof)
        rep.add("e_gHK", est.value, est.flag)
    return rep


def cmd_powers(args) -> Report:
    _, I = _load(args)
    prof = powers_profile(I, args.nmax, symbolic=args.symbolic, threads=args.threads)
    inputs = _inputs(args, I)
    inputs["nmax"] = args.nmax
    inputs["symbolic"] = args.symbolic
    cols = ["n", "h0_length", "ann_exp", "alpha_sat", "ratio_alpha", "ratio_len"]
    rep = Report("powers", inputs, cols)
    for r in prof.rows:
        rep.rows.append({c: getattr(r, c) for c in cols})
    rep.add("d_hat", prof.d_hat, OBSERVED)
    rep.add("waldschmidt_upper", prof.waldschmidt_upper, "upper bound from computed rows")
    bad = fekete_violations(prof)
    rep.add("fekete_ok", not bad)
    if args.chudnovsky_n:
        al = prof.rows[0].alpha_sat
        rep.add("chudnovsky", chudnovsky_check(prof, al, args.chudnovsky_n))
    rep.warnings.extend(prof.warnings)
    return rep


def cmd_closure(args) -> Report:
    session, I = _load(args)
    x = session.presentation.parse(args.element)
    probe = frobenius_closure_probe(x, I, args.emax)
    tight = tight_closure_witness_search(x, I, args.witness_cap, args.emax)
    inputs = _inputs(args, I)
    inputs["element"] = str(x)
    inputs["emax"] = args.emax
    inputs["witness_cap"] = args.witness_cap
    rep = Report("closure", inputs, ["e", "q", "x^q in I^[q]"])
    for e in range(args.emax + 1):
        member = frobenius_power(I, e).contains(x.frobenius(e))
        rep.rows.append({"e": e, "q": I.ring.p**e, "x^q in I^[q]": member})
    rep.add("frobenius_member", probe.frobenius_text)
    rep.add("tight_witness", tight.tight_text, "evidence only" if tight.tight_witness is not None else "")
    return rep


def cmd_bound(args) -> Report:
    try:
        d1, d2 = (parse_rational(t) for t in args.gen_degrees.split(","))
    except ValueError:
        raise UsageError("--gen-degrees expects D1,D2") from None
    try:
        e = parse_rational(args.e)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    a, b = brenner_bound(args.curve_degree, d1, d2, e)
    inputs = {"curve_degree": args.curve_degree, "gen_degrees": f"{d1},{d2}", "e": e}
    rep = Report("bound", inputs, [])
    rep.add("alpha", a)
    rep.add("beta", b)
    return rep


COMMANDS = {
    "hilbert": cmd_hilbert,
    "h0": cmd_h0,
    "frobenius": cmd_frobenius,
    "powers": cmd_powers,
    "closure": cmd_closure,
    "bound": cmd_bound,
}


def run_selftest(quick: bool, out=None) -> int:
    out = out or sys.stdout

    def echo(r):
        out.write(r.line() + "\n")
        for c in r.checks:
            if not c.ok:
                out.write(f"    FAIL {c.name}: {c.detail}\n")
        out.flush()

    results = acceptance.run_all(quick, echo)
    passed = sum(r.passed for r in results)
    out.write(f"{passed}/{len(results)} criteria passed\n")
    return 0 if passed == len(results) else EXIT_MATH


def run_command(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except UsageError as exc:
        sys.stderr.write(f"frobx: {exc}\n")
        return EXIT_USAGE
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(message)s")
    try:
        if args.command == "selftest":
            return run_selftest(args.quick)
        report = COMMANDS[args.command](args)
        emit_report(report, args.format, args.out)
        return 0
    except UsageError as exc:
        sys.stderr.write(f"frobx: {exc}\n")
        return EXIT_USAGE
    except SessionParseError as exc:
        sys.stderr.write(f"frobx: parse error in {exc}\n")
        return EXIT_PARSE
    except ParseError as exc:
        sys.stderr.write(f"frobx: parse error: {exc}\n")
        return EXIT_PARSE
    except SessionError as exc:
        sys.stderr.write(f"frobx: {exc}\n")
        return EXIT_USAGE
    except (NotHomogeneousError, NotFiniteLengthError, TrickElementError, ExponentOverflowError) as exc:
        sys.stderr.write(f"frobx: {exc}\n")
        return EXIT_MATH
    except OSError as exc:
        sys.stderr.write(f"frobx: I/O error: {exc}\n")
        return EXIT_IO
    except ValueError as exc:
        sys.stderr.write(f"frobx: {exc}\n")
        return EXIT_MATH


def main() -> None:
    sys.exit(run_command())


if __name__ == "__main__":
    main()
