"""Command-line interface: ``bspec <subcommand> [flags]``.

Exit status 0 on success, 1 on domain errors, 2 on usage errors.
Results go to standard output, diagnostics to standard error.
"""

from __future__ import annotations

import argparse
import os
import random
import shlex
import sys
from fractions import Fraction
from typing import Optional, Sequence

from . import families as fam
from .errors import InvalidArgument, ResourceLimit, UnsupportedClassification
from .exact import LambdaParam, format_rational, parse_rational
from .figures import FIGURE_FLAGS, scan_argv
from .maximality import is_member_gamma1, non_orthogonal_witness
from .oracle import are_orthogonal, check_family, decompose_zero, zero_witnesses
from .parseval import ScanConfig, peak_report, read_csv, scan, write_csv, write_svg
from .transform import EvalParams, as_fraction, default_precision, moment, nu_hat

DOMAIN_ERRORS = (InvalidArgument, UnsupportedClassification, ResourceLimit)


def _lambda(text: str) -> LambdaParam:
    try:
        return LambdaParam.of(text)
    except InvalidArgument as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _rational(text: str) -> Fraction:
    try:
        return parse_rational(text)
    except InvalidArgument as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _rational_list(text: str) -> list[Fraction]:
    return [_rational(p) for p in text.split(",") if p.strip()]


def _int_list(text: str) -> list[int]:
    try:
        return [int(p) for p in text.split(",") if p.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def _real(text: str) -> Fraction:
    try:
        return as_fraction(text)
    except (InvalidArgument, ValueError):
        raise argparse.ArgumentTypeError(f"expected a real number, got {text!r}") from None


def _range(text: str) -> tuple[float, float]:
    try:
        lo, hi = text.split(":")
        lo, hi = float(lo), float(hi)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected lo:hi, got {text!r}") from None
    if not lo < hi:
        raise argparse.ArgumentTypeError("range needs lo < hi")
    return lo, hi


def _positive_int(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
    if v < 1:
        raise argparse.ArgumentTypeError("expected a positive integer")
    return v


def _nonneg_int(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
    if v < 0:
        raise argparse.ArgumentTypeError("expected a nonnegative integer")
    return v


def _positive_float(text: str) -> float:
    try:
        v = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a number, got {text!r}") from None
    if not v > 0:
        raise argparse.ArgumentTypeError("expected a positive number")
    return v


def _add_family_flags(p: argparse.ArgumentParser, lam_default: str = "3/4") -> None:
    p.add_argument(
        "--family", "--kind", dest="family", required=True,
        choices=["lambda-k", "gamma-k", "even-b", "quarter-onb", "lambda-union", "custom"],
    )
    p.add_argument("--lambda", dest="lam", type=_lambda, default=_lambda(lam_default))
    p.add_argument("--k", type=_positive_int, help="index k for lambda-k / gamma-k")
    p.add_argument("--ks", type=_int_list, help="indices merged by lambda-union")
    p.add_argument("--members", type=_rational_list, help="frequencies of a custom family")
    p.add_argument("--exclude", type=_rational_list, default=[])
    p.add_argument("--translate", type=_rational, default=Fraction(0))


def _build_family(args, count: int) -> fam.FrequencyFamily:
    kw = dict(exclusions=frozenset(args.exclude), translation=args.translate)
    if args.family in ("lambda-k", "gamma-k"):
        if args.k is None:
            raise InvalidArgument(f"--family {args.family} needs --k")
        ctor = fam.FrequencyFamily.lambda_k if args.family == "lambda-k" else fam.FrequencyFamily.gamma_k
        if args.lam != fam.THREE_QUARTERS:
            raise InvalidArgument(f"{args.family} is defined for lambda = 3/4")
        return ctor(args.k, **kw)
    if args.family == "even-b":
        return fam.FrequencyFamily.even_b(args.lam, **kw)
    if args.family == "quarter-onb":
        if args.lam != fam.ONE_QUARTER:
            raise InvalidArgument("quarter-onb is defined for lambda = 1/4")
        return fam.FrequencyFamily.quarter_onb(**kw)
    if args.family == "lambda-union":
        if not args.ks:
            raise InvalidArgument("--family lambda-union needs --ks")
        if args.lam != fam.THREE_QUARTERS:
            raise InvalidArgument("lambda-union is defined for lambda = 3/4")
        parts = [fam.FrequencyFamily.lambda_k(k) for k in args.ks]
        union = fam.union_family(parts, count + len(args.exclude), args.exclude)
        return fam.FrequencyFamily.custom(
            union.members, args.lam, exclusions=union.exclusions, translation=args.translate
        )
    if not args.members:
        raise InvalidArgument("--family custom needs --members")
    return fam.FrequencyFamily.custom(args.members, args.lam, **kw)


def cmd_check(args, out) -> int:
    if args.pair is not None:
        if len(args.pair) != 2:
            raise InvalidArgument("--pair takes exactly two frequencies")
        ok = are_orthogonal(args.pair[0], args.pair[1], args.lam)
        out.write("orthogonal\n" if ok else "not orthogonal\n")
        return 0
    if args.freqs is None:
        raise InvalidArgument("check needs --pair or --freqs")
    report = check_family(args.freqs, args.lam)
    if report.ok:
        out.write("ok\n")
    else:
        a, b = report.violation
        out.write(f"violation {format_rational(a)} {format_rational(b)}\n")
    return 0


def cmd_decompose(args, out) -> int:
    ws = zero_witnesses(args.t, args.lam) if args.all else [decompose_zero(args.t, args.lam)]
    ws = [w for w in ws if w is not None]
    if not ws:
        out.write("not in zero set\n")
    for w in ws:
        out.write(f"n={w.n} k={w.k}\n")
    return 0


def cmd_family(args, out) -> int:
    family = _build_family(args, args.count)
    if args.out:
        with open(args.out, "w", newline="\n") as fh:
            fam.write_family(fh, family, args.count)
    else:
        fam.write_family(out, family, args.count)
    return 0


def cmd_classify(args, out) -> int:
    out.write(fam.classify_lambda(args.lam).verdict + "\n")
    return 0


def cmd_search(args, out) -> int:
    res = fam.max_set_search(args.lam, args.n_max, args.k_max)
    out.write(f"size {res.size} (exact within window n<={res.n_max}, |k|<={res.k_max}, "
              f"{res.n_candidates} candidates)\n")
    for m in res.members:
        out.write(format_rational(m) + "\n")
    return 0


def cmd_witness(args, out) -> int:
    res = non_orthogonal_witness(args.x)
    out.write(f"gamma={format_rational(res.witness)} case={res.case_tag}\n")
    return 0


def cmd_nuhat(args, out) -> int:
    params = EvalParams(args.min_factors, args.target_width, args.precision or default_precision())
    enc = nu_hat(args.t, args.lam, params)
    out.write(f"{enc.lo!r} {enc.hi!r}\n")
    return 0


def cmd_moments(args, out) -> int:
    for k in range(args.k + 1):
        out.write(f"{k} {format_rational(moment(k, args.lam))}\n")
    return 0


def _scan_config(args) -> ScanConfig:
    family = _build_family(args, args.terms)
    t_min, t_max = args.range
    return ScanConfig(family, t_min, t_max, args.step, args.terms, args.factors, args.lam)


def config_from_argv(argv: Sequence[str]) -> ScanConfig:
    """ScanConfig described by a ``scan`` argument vector (e.g. a figure's)."""
    args = build_parser().parse_args(list(argv))
    if args.command != "scan":
        raise InvalidArgument("expected a scan command line")
    return _scan_config(args)


def cmd_scan(args, out) -> int:
    config = _scan_config(args)
    rows = scan(config, jobs=args.jobs, contributions=args.contributions)
    if args.out:
        with open(args.out, "w", newline="\n") as fh:
            write_csv(fh, rows, args.contributions)
    else:
        write_csv(out, rows, args.contributions)
    if args.svg:
        with open(args.svg, "w", newline="\n") as fh:
            write_svg(fh, rows)
    return 0


def cmd_peaks(args, out) -> int:
    with open(args.input) as fh:
        rows = read_csv(fh)
    for t, q in peak_report(rows, args.threshold):
        out.write(f"{t!r},{q!r}\n")
    return 0


def cmd_repro(args, out) -> int:
    os.makedirs(args.outdir, exist_ok=True)
    for name in FIGURE_FLAGS:
        argv = scan_argv(name, os.path.join(args.outdir, f"{name}.csv"))
        if args.jobs is not None:
            argv += ["--jobs", str(args.jobs)]
        out.write(shlex.join(["bspec", *argv]) + "\n")
        code = main(argv, out=out)
        if code:
            return code
    return 0


def cmd_fuzz(args, out) -> int:
    """Randomized cross-check of the exact oracle against certified enclosures
    and of the maximality witnesses."""
    rng = random.Random(args.seed)
    lam = LambdaParam(3, 4)
    params = EvalParams()
    mismatches = 0
    for _ in range(args.count):
        t = Fraction(rng.randint(-1000, 1000) or 1, 3 ** rng.randint(0, 6))
        zero = decompose_zero(t, lam) is not None
        if zero != (nu_hat(t, lam, params).abs_lower() == 0.0):
            mismatches += 1
            out.write(f"oracle/enclosure mismatch at t={format_rational(t)}\n")
        if not is_member_gamma1(t):
            non_orthogonal_witness(t)
    out.write(f"{args.count} samples, {mismatches} mismatches (seed {args.seed})\n")
    return 1 if mismatches else 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="bspec",
        description="Orthogonal exponentials for Bernoulli convolution measures.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", help="orthogonality of a pair or a family")
    p.add_argument("--lambda", dest="lam", type=_lambda, required=True)
    p.add_argument("--pair", type=_rational_list)
    p.add_argument("--freqs", type=_rational_list)
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("decompose", help="zero-set witness (n, k) of a rational")
    p.add_argument("--lambda", dest="lam", type=_lambda, required=True)
    p.add_argument("--t", type=_rational, required=True)
    p.add_argument("--all", action="store_true", help="list every witness")
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("family", help="enumerate a frequency family")
    _add_family_flags(p)
    p.add_argument("--count", type=_positive_int, default=10)
    p.add_argument("--out")
    p.set_defaults(func=cmd_family)

    p = sub.add_parser("classify", help="finite-only vs infinite orthogonal families")
    p.add_argument("--lambda", dest="lam", type=_lambda, required=True)
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("search", help="maximum orthogonal set in a window")
    p.add_argument("--lambda", dest="lam", type=_lambda, required=True)
    p.add_argument("--n-max", type=_nonneg_int, required=True)
    p.add_argument("--k-max", type=_nonneg_int, required=True)
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("witness", help="Gamma_1 element not orthogonal to x")
    p.add_argument("--x", type=_rational, required=True)
    p.set_defaults(func=cmd_witness)

    p = sub.add_parser("nuhat", help="certified enclosure of the transform")
    p.add_argument("--lambda", dest="lam", type=_lambda, required=True)
    p.add_argument("--t", type=_real, required=True)
    p.add_argument("--min-factors", type=_positive_int, default=1)
    p.add_argument("--target-width", type=_positive_float, default=1e-12)
    p.add_argument("--precision", type=_positive_int)
    p.set_defaults(func=cmd_nuhat)

    p = sub.add_parser("moments", help="exact moments m_0..m_k")
    p.add_argument("--lambda", dest="lam", type=_lambda, required=True)
    p.add_argument("--k", type=_nonneg_int, required=True)
    p.set_defaults(func=cmd_moments)

    p = sub.add_parser("scan", help="Parseval sum over a grid, CSV output")
    _add_family_flags(p)
    p.add_argument("--range", type=_range, required=True)
    p.add_argument("--step", type=_positive_float, required=True)
    p.add_argument("--terms", type=_positive_int, default=40)
    p.add_argument("--factors", type=_positive_int, default=40)
    p.add_argument("--out")
    p.add_argument("--svg")
    p.add_argument("--contributions", action="store_true")
    p.add_argument("--jobs", type=_positive_int, default=None)
    p.set_defaults(func=cmd_scan)

    p = sub.add_parser("peaks", help="local maxima of a scan CSV")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--threshold", type=float, default=0.9)
    p.set_defaults(func=cmd_peaks)

    p = sub.add_parser("repro", help="write fig1.csv .. fig4.csv and quarter.csv")
    p.add_argument("--outdir", default=".")
    p.add_argument("--jobs", type=_positive_int, default=None)
    p.set_defaults(func=cmd_repro)

    p = sub.add_parser("fuzz", help="randomized oracle/enclosure/witness cross-check")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--count", type=_positive_int, default=200)
    p.set_defaults(func=cmd_fuzz)
    return parser


def main(argv: Optional[Sequence[str]] = None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args, out)
    except DOMAIN_ERRORS as exc:
        print(f"bspec: error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"bspec: error: {exc}", file=sys.stderr)
        return 1


def run() -> None:
    sys.exit(main())
