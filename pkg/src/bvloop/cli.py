from __future__ import annotations

import argparse
import json
import os
import sys

from . import bv
from .ring import RingError, build_presentation
from .spaces import SpaceSpec, UnsupportedSpaceError
from .tables import RingTable, parse_degrees
from .verify import DEFAULT_SEED, SUITES, run_suite

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _space(text: str) -> SpaceSpec:
    try:
        return SpaceSpec.parse(text)
    except UnsupportedSpaceError as exc:
        raise UsageError(str(exc)) from None


def _degrees(text: str | None) -> range | None:
    if text is None:
        return None
    try:
        return parse_degrees(text)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _max_q(requested: int | None) -> int:
    max_q = requested if requested is not None else bv.DEFAULT_MAX_Q
    cap = os.environ.get("BVLOOP_MAX_Q")
    if cap:
        try:
            max_q = min(max_q, int(cap))
        except ValueError:
            raise UsageError(f"BVLOOP_MAX_Q must be an integer, got {cap!r}") from None
    if max_q < 0:
        raise UsageError("max-q must be nonnegative")
    return max_q


def _emit(args, text: str, payload: dict):
    blob = json.dumps(payload, indent=2, ensure_ascii=False)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(blob + "\n")
    print(blob if args.format == "json" else text)


def cmd_ring(args) -> int:
    table = RingTable.build(_space(args.space), _degrees(args.degrees))
    _emit(args, table.render(), table.to_dict())
    return EXIT_OK


def cmd_delta(args) -> int:
    space = _space(args.space)
    ring = build_presentation(space)
    try:
        element = ring.parse(args.monomial)
    except RingError as exc:
        raise UsageError(str(exc)) from None
    result = bv.delta(element)
    if element.is_zero():
        print(f"note: {args.monomial} is zero in {ring.name}", file=sys.stderr)
    payload = {"space": space.label, "input": args.monomial, "normal_form": str(element), "delta": str(result)}
    _emit(args, str(result), payload)
    return EXIT_OK


def cmd_verify(args) -> int:
    try:
        report = run_suite(_space(args.space), args.suite, max_q=_max_q(args.max_q),
                           degrees=_degrees(args.degrees), seed=args.seed)
    except UnsupportedSpaceError as exc:
        raise UsageError(str(exc)) from None
    _emit(args, report.render(), report.to_dict())
    return EXIT_OK if report.passed else EXIT_FAIL


def cmd_derive(args) -> int:
    space = _space(args.space)
    try:
        d = bv.assemble_delta(space, _max_q(args.max_q))
    except bv.DerivationInconsistencyError as exc:
        print(f"derivation inconsistent: {exc}", file=sys.stderr)
        return EXIT_FAIL
    verdict = "Δ table matches Theorem" if d.matches_theorem else "Δ table does NOT match Theorem"
    closed = bv.theorem_table(space).formula
    summary = f"ν = {d.nu.describe()}; λ={d.lam}; ρ₁={d.rho.rho1}; {verdict}\nc(p,q) = {closed}"
    payload = {
        "space": space.label,
        "nu": d.nu.describe(),
        "lambda": d.lam,
        "l": str(d.l),
        "rho0": d.rho.rho0,
        "rho1": d.rho.rho1,
        "formula": d.table.formula,
        "closed_form": closed,
        "matches_theorem": d.matches_theorem,
    }
    _emit(args, summary + "\n" + d.transcript(), payload)
    return EXIT_OK if d.matches_theorem else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--space", required=True, help="hp:n, op2, s4 or s8")
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--out", help="also write the JSON form to this file")

    parser = argparse.ArgumentParser(prog="bvloop", description="BV structure on loop homology")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("ring", parents=[common], help="presentation and additive table")
    p.add_argument("--degrees", help="loop degrees a..b")
    p.set_defaults(func=cmd_ring)

    p = sub.add_parser("delta", parents=[common], help="Delta of a monomial a^p*b*x^q")
    p.add_argument("monomial")
    p.set_defaults(func=cmd_delta)

    p = sub.add_parser("verify", parents=[common], help="run verification suites")
    p.add_argument("--suite", choices=SUITES, default="all")
    p.add_argument("--degrees", help="total homology degrees a..b for the spectral sequence suite")
    p.add_argument("--max-q", type=int, default=None, help="x-exponent bound for sweeps")
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("derive", parents=[common], help="re-derive the Delta table")
    p.add_argument("--max-q", type=int, default=None)
    p.set_defaults(func=cmd_derive)
    return parser


def _glue_negative_ranges(argv: list[str]) -> list[str]:
    """Let ``--degrees -8..12`` through; argparse would read -8..12 as a flag."""
    out = []
    it = iter(argv)
    for tok in it:
        if tok == "--degrees":
            nxt = next(it, None)
            out.append(tok if nxt is None else f"--degrees={nxt}")
        else:
            out.append(tok)
    return out


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    argv = sys.argv[1:] if argv is None else list(argv)
    try:
        args = parser.parse_args(_glue_negative_ranges(argv))
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        return args.func(args)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"bvloop: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
