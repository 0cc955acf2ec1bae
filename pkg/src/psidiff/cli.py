"""Command-line front end with deterministic, machine-readable output.

Exit codes: 0 success, 1 domain error (bad input, precondition failure),
2 undecided comparison (the precision cap was reached). Errors print as JSON
objects with a machine-readable ``code``.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from fractions import Fraction

from . import imf, theorems
from .errors import PsidiffError, UndecidedSignError
from .exact import PHI, TAU, c_enclosure, render_decimal, sqrt_tau_enclosure
from .numspec import parse_number


@dataclass(frozen=True)
class RunConfig:
    digits: int = 12
    precision_cap_bits: int = 4096
    max_depth: int = 200
    output: str = "json"

    def __post_init__(self) -> None:
        if self.digits < 1:
            raise ValueError("--digits must be >= 1")
        if self.precision_cap_bits < 64:
            raise ValueError("--precision-cap-bits must be >= 64")


def _config(args: argparse.Namespace) -> RunConfig:
    return RunConfig(
        digits=args.digits,
        precision_cap_bits=args.precision_cap_bits,
        max_depth=getattr(args, "max_depth", 200),
        output=getattr(args, "output", "json"),
    )


def cmd_constants(args: argparse.Namespace) -> dict:
    cfg = _config(args)
    d = cfg.digits
    return {
        "tau": render_decimal(TAU, d),
        "phi": render_decimal(PHI, d),
        "K": render_decimal(lambda bits: sqrt_tau_enclosure(bits) - 1, d),
        "C": render_decimal(c_enclosure, d),
        "2C+1": render_decimal(lambda bits: c_enclosure(bits) * 2 + 1, d),
    }


def cmd_expand(args: argparse.Namespace) -> dict:
    cf = parse_number(args.number)
    return {
        "number": args.number,
        "expansion": str(cf),
        "a0": cf.a0,
        "preperiod": list(cf.preperiod),
        "period": list(cf.period),
    }


def cmd_psi(args: argparse.Namespace) -> dict:
    cfg = _config(args)
    cf = parse_number(args.number)
    value = imf.psi(cf, args.t)
    return {
        "number": args.number,
        "t": args.t,
        "index": value.index,
        "q": value.q,
        "psi": render_decimal(value.value, cfg.digits),
        "inv_psi": render_decimal(value.inv_value, cfg.digits),
        "psi_exact": str(value.value),
        "inv_psi_exact": str(value.inv_value),
    }


def cmd_profile(args: argparse.Namespace) -> dict | str:
    cfg = _config(args)
    alpha = parse_number(args.alpha)
    beta = parse_number(args.beta)
    profile = imf.breakpoint_profile(alpha, beta, args.from_t, args.bound)
    if cfg.output == "csv":
        return imf.profile_to_csv(profile, cfg.digits)
    return {
        "alpha": args.alpha,
        "beta": args.beta,
        "t_min": profile.t_min,
        "t_max": profile.t_max,
        "entries": [
            {
                "t": entry.t,
                "inv_psi_alpha": render_decimal(entry.inv_psi_alpha, cfg.digits),
                "inv_psi_beta": render_decimal(entry.inv_psi_beta, cfg.digits),
                "d": entry.d.render(cfg.digits),
            }
            for entry in profile.entries
        ],
        "sign_changes": imf.sign_changes(profile, cfg.precision_cap_bits),
    }


def cmd_witness(args: argparse.Namespace) -> dict:
    cfg = _config(args)
    alpha = parse_number(args.alpha)
    beta = parse_number(args.beta)
    witness = theorems.find_witness(
        alpha, beta, args.from_t, args.bound, cfg.precision_cap_bits
    )
    payload = witness.to_json(cfg.digits)
    payload["parameters"] = {"alpha": args.alpha, "beta": args.beta,
                             "from": args.from_t, "bound": args.bound}
    return payload


def cmd_word(args: argparse.Namespace) -> dict:
    alpha = parse_number(args.alpha)
    beta = parse_number(args.beta)
    word = imf.merged_word(alpha, beta, args.count)
    return {
        "alpha": args.alpha,
        "beta": args.beta,
        "count": args.count,
        "word": ",".join(letter.kind for letter in word.letters),
        "letters": [
            {"kind": letter.kind, "n": letter.n, "s": letter.s, "value": letter.value}
            for letter in word.letters
        ],
    }


def cmd_lemmas(args: argparse.Namespace) -> dict:
    cfg = _config(args)
    alpha = parse_number(args.alpha)
    beta = parse_number(args.beta)
    depth = cfg.max_depth
    cap = cfg.precision_cap_bits
    return {
        "alpha": args.alpha,
        "beta": args.beta,
        "depth": depth,
        "conseq": [list(pair) for pair in theorems.scan_lemma_conseq(alpha, beta, depth)],
        "conseq1": [list(pair) for pair in theorems.scan_lemma_conseq1(alpha, beta, depth)],
        "interleave_gap": [
            cert.to_json(cfg.digits)
            for cert in theorems.scan_interleave_gap(alpha, beta, depth, cap)
        ],
        "dichotomy": [
            record.to_json(cfg.digits)
            for record in theorems.scan_dichotomy(alpha, beta, depth, cap)
        ],
    }


def cmd_construct_optimal(args: argparse.Namespace) -> dict:
    cfg = _config(args)
    pair = theorems.construct_optimal(Fraction(args.epsilon), cfg.precision_cap_bits)
    return pair.to_json(cfg.digits)


def cmd_verify_optimal(args: argparse.Namespace) -> dict:
    cfg = _config(args)
    pair = theorems.construct_optimal(Fraction(args.epsilon), cfg.precision_cap_bits)
    slack = Fraction(args.slack) if args.slack is not None else None
    report = theorems.verify_near_optimality(
        pair, args.from_t, args.bound, slack, cfg.precision_cap_bits
    )
    return {"pair": pair.to_json(cfg.digits), "report": report.to_json(cfg.digits)}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="psidiff",
        description="Exact irrationality-measure computations for quadratic irrationals.",
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--digits", type=int, default=12, help="decimal digits in output")
    common.add_argument("--precision-cap-bits", type=int, default=4096,
                        help="refinement cap for undecidable comparisons")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("constants", parents=[common], help="render tau, phi, K, C")
    p.set_defaults(func=cmd_constants)

    p = sub.add_parser("expand", parents=[common], help="continued-fraction expansion")
    p.add_argument("--number", required=True)
    p.set_defaults(func=cmd_expand)

    p = sub.add_parser("psi", parents=[common], help="psi and 1/psi at an integer t")
    p.add_argument("--number", required=True)
    p.add_argument("--t", type=int, required=True)
    p.set_defaults(func=cmd_psi)

    p = sub.add_parser("profile", parents=[common], help="breakpoint profile of d(t)")
    p.add_argument("--alpha", required=True)
    p.add_argument("--beta", required=True)
    p.add_argument("--from", dest="from_t", type=int, default=1)
    p.add_argument("--bound", type=int, default=1000)
    p.add_argument("--output", choices=("json", "csv"), default="csv")
    p.set_defaults(func=cmd_profile)

    p = sub.add_parser("witness", parents=[common], help="find t with |d(t)| >= C t")
    p.add_argument("--alpha", required=True)
    p.add_argument("--beta", required=True)
    p.add_argument("--from", dest="from_t", type=int, default=1)
    p.add_argument("--bound", type=int, default=10**12)
    p.set_defaults(func=cmd_witness)

    p = sub.add_parser("word", parents=[common], help="merged word over {B, Q, T}")
    p.add_argument("--alpha", required=True)
    p.add_argument("--beta", required=True)
    p.add_argument("--count", type=int, default=20)
    p.set_defaults(func=cmd_word)

    p = sub.add_parser("lemmas", parents=[common], help="coincidence and gap scans")
    p.add_argument("--alpha", required=True)
    p.add_argument("--beta", required=True)
    p.add_argument("--max-depth", type=int, default=200)
    p.set_defaults(func=cmd_lemmas)

    p = sub.add_parser("construct-optimal", parents=[common],
                       help="build the near-optimal companion of tau")
    p.add_argument("--epsilon", required=True)
    p.set_defaults(func=cmd_construct_optimal)

    p = sub.add_parser("verify-optimal", parents=[common],
                       help="verify |d| <= (C+slack) t over a range")
    p.add_argument("--epsilon", required=True)
    p.add_argument("--from", dest="from_t", type=int, default=10**6)
    p.add_argument("--bound", type=int, default=10**12)
    p.add_argument("--slack", default=None)
    p.set_defaults(func=cmd_verify_optimal)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if not exc.code else 1
    try:
        payload = args.func(args)
    except UndecidedSignError as exc:
        print(json.dumps({"error": {"code": exc.code, "message": str(exc)}}, indent=2))
        return 2
    except PsidiffError as exc:
        print(json.dumps({"error": {"code": exc.code, "message": str(exc)}}, indent=2))
        return 1
    except (ValueError, ZeroDivisionError) as exc:
        print(json.dumps({"error": {"code": "invalid_input", "message": str(exc)}}, indent=2))
        return 1
    if isinstance(payload, str):
        sys.stdout.write(payload)
    else:
        print(json.dumps(payload, indent=2))
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
