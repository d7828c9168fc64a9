"""Command-line front end wiring every module into deterministic reports.

Exit codes: 0 success, 1 domain negatives (NOT FOUND, UNPROVABLE, invalid
program verdicts), 2 usage/parse/IO errors. All numeric output is exact —
bit strings and p/q rationals, never floating point — and two invocations
with equal inputs produce byte-identical reports.
"""

from __future__ import annotations

import argparse
import os
import sys
from fractions import Fraction
from pathlib import Path

from . import elegant, enumerator, omega, reals, theory, vm

EXIT_OK = 0
EXIT_DOMAIN = 1
EXIT_USAGE = 2

DEFAULT_OMEGA_BITS = 16


class UsageError(Exception):
    """Bad input or I/O failure; reported on stderr with exit code 2."""


def _bits_value(text: str) -> str:
    if text in ("", "-"):
        return ""
    if any(c not in "01" for c in text):
        raise argparse.ArgumentTypeError("expected a bit string of 0/1 (or '-' for empty)")
    return text


def _nonneg_int(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
    if value < 0:
        raise argparse.ArgumentTypeError("expected a non-negative integer")
    return value


def _pos_int(text: str) -> int:
    value = _nonneg_int(text)
    if value < 1:
        raise argparse.ArgumentTypeError("expected a positive integer")
    return value


def _rational(text: str) -> Fraction:
    numer, sep, denom = text.partition("/")
    try:
        if sep:
            return Fraction(int(numer), int(denom))
        return Fraction(int(numer))
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(
            f"expected an integer ratio 'p/q' (no decimals), got {text!r}"
        ) from None


def _frac(value: Fraction) -> str:
    return f"{value.numerator}/{value.denominator}"


def parse_points_file(path: str | Path) -> list[Fraction]:
    """One 'p/q' (or bare integer) per line; '#' comments; decimals rejected."""
    try:
        text = Path(path).read_text(encoding="ascii")
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc}") from exc
    points: list[Fraction] = []
    for num, line in enumerate(text.splitlines(), start=1):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        numer, sep, denom = stripped.partition("/")
        try:
            if sep:
                points.append(Fraction(int(numer), int(denom)))
            else:
                points.append(Fraction(int(numer)))
        except (ValueError, ZeroDivisionError):
            raise UsageError(
                f"{path}: line {num}: expected integer ratio 'p/q', got {stripped!r}"
            ) from None
    return points


def _read_programs_file(path: str | Path) -> list[str]:
    try:
        text = Path(path).read_text(encoding="ascii")
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc}") from exc
    programs: list[str] = []
    for num, line in enumerate(text.splitlines(), start=1):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        if any(c not in "01" for c in stripped):
            raise UsageError(f"{path}: line {num}: expected a bit string, got {stripped!r}")
        programs.append(stripped)
    return programs


def _worker_count(requested: int | None) -> int:
    workers = requested if requested is not None else 1
    cap = os.environ.get("OMEGALAB_THREADS")
    if cap is not None:
        try:
            cap_value = int(cap)
        except ValueError:
            raise UsageError(f"OMEGALAB_THREADS must be an integer, got {cap!r}") from None
        if cap_value < 1:
            raise UsageError("OMEGALAB_THREADS must be >= 1")
        workers = min(workers, cap_value)
    return workers


def _emit(lines: list[str]) -> None:
    sys.stdout.write("\n".join(lines) + "\n")


def _load_checkpoint(path: str) -> enumerator.EnumState:
    try:
        return enumerator.load(path)
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc}") from exc
    except enumerator.CheckpointError as exc:
        raise UsageError(f"{path}: {exc}") from exc


def cmd_enumerate(args: argparse.Namespace) -> int:
    workers = _worker_count(args.workers)
    checkpoint = Path(args.checkpoint)
    if args.resume and checkpoint.exists():
        state = _load_checkpoint(args.checkpoint)
        if args.max_len < state.max_len_done or args.budget < state.budget:
            raise UsageError(
                f"cannot resume below the saved frontier "
                f"(len<={state.max_len_done}, budget {state.budget})"
            )
        state = enumerator.extend(state, args.max_len, args.budget, workers)
    else:
        state = enumerator.enumerate_programs(args.max_len, args.budget, workers)
    try:
        enumerator.save(state, checkpoint)
    except OSError as exc:
        raise UsageError(f"cannot write {checkpoint}: {exc}") from exc
    scanned = 2 ** (state.max_len_done + 1) - 2
    valid = len(state.records) + len(state.pending)
    _emit(
        [
            f"ENUMERATED len<={state.max_len_done} budget={state.budget}"
            f" scanned={scanned} invalid={scanned - valid}"
            f" halting={len(state.records)} pending={len(state.pending)}"
        ]
    )
    return EXIT_OK


def cmd_omega(args: argparse.Namespace) -> int:
    state = _load_checkpoint(args.checkpoint)
    check = omega.kraft_check(state.records)
    if not check.ok:
        detail = (
            f"prefix pair {check.violation[0]} / {check.violation[1]}"
            if check.violation
            else f"mass {_frac(check.mass)} >= 1"
        )
        raise UsageError(f"{args.checkpoint}: census fails the Kraft check ({detail})")
    bound = omega.from_state(state)
    _emit([omega.format_report(bound, len(state.records), len(state.pending), args.bits)])
    return EXIT_OK


def cmd_elegant(args: argparse.Namespace) -> int:
    verdict = elegant.find_elegant(args.target, args.max_len, args.budget)
    if verdict is None:
        _emit(["NOT FOUND"])
        return EXIT_DOMAIN
    lines = [f"TARGET {args.target or '-'}", f"MINIMAL {len(verdict.witnesses[0])}"]
    lines.extend(f"WITNESS {w}" for w in verdict.witnesses)
    if verdict.certified:
        lines.append("CERTIFIED")
    else:
        lines.append("UNCERTIFIED")
        lines.extend(f"UNRESOLVED {p}" for p in verdict.unresolved)
    _emit(lines)
    return EXIT_OK


def cmd_compress(args: argparse.Namespace) -> int:
    report = elegant.compression_report(args.facts, args.max_len, args.budget)
    _emit(
        [
            f"FACTS {report.facts or '-'}",
            f"BASELINE {report.baseline_bits}",
            f"BEST {report.best_bits}",
            f"PROGRAM {report.best_program}",
            f"RATIO {_frac(report.ratio)}",
            "NOTE literal baseline costs 2 bits per fact bit plus a logarithmic header",
        ]
    )
    return EXIT_OK


def cmd_run(args: argparse.Namespace) -> int:
    try:
        outcome = vm.run(args.program, args.budget)
    except vm.InvalidProgram as exc:
        _emit([f"INVALID reason={exc.reason.value}"])
        return EXIT_DOMAIN
    if isinstance(outcome, vm.Halted):
        _emit([f"HALTED output={outcome.output or '-'} steps={outcome.steps}"])
    else:
        _emit([f"RUNNING budget={outcome.budget}"])
    return EXIT_OK


def cmd_diag(args: argparse.Namespace) -> int:
    programs = _read_programs_file(args.programs)
    streams: list[reals.DigitStream] = []
    for program in programs:
        try:
            streams.append(reals.DigitStream(program))
        except vm.InvalidProgram as exc:
            raise UsageError(f"{args.programs}: invalid program {program}: {exc}") from exc
    if len(streams) < args.digits:
        raise UsageError(f"need {args.digits} programs, file lists {len(streams)}")
    diag = reals.diagonal(streams, args.digits, args.budget)
    unverified = [str(i + 1) for i, ok in enumerate(diag.verified) if not ok]
    _emit(
        [
            "0." + "".join(str(d) for d in diag.digits),
            "UNVERIFIED " + (" ".join(unverified) if unverified else "-"),
        ]
    )
    return EXIT_OK


def cmd_cover(args: argparse.Namespace) -> int:
    points = parse_points_file(args.points)
    try:
        report = reals.borel_cover(points, args.epsilon)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    lines = [f"COVER epsilon={_frac(report.epsilon)} points={len(report.intervals)}"]
    lines.extend(
        f"{iv.index} center={_frac(iv.center)} width={_frac(iv.width)}"
        for iv in report.intervals
    )
    lines.append(f"TOTAL {_frac(report.total_length)}")
    _emit(lines)
    return EXIT_OK


def cmd_borel(args: argparse.Namespace) -> int:
    lines = []
    for k in range(1, args.prefix + 1):
        text = reals.borel_string(k)
        lines.append(f"{k} {text} {reals.classify_text(text, args.budget)}")
    _emit(lines)
    return EXIT_OK


def _load_theory(path: str, budget: int) -> theory.Theory:
    try:
        return theory.load_theory(path, budget)
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc}") from exc
    except (theory.TheoryFileError, theory.UncertifiableFact) as exc:
        raise UsageError(f"{path}: {exc}") from exc


def cmd_theory_prove(args: argparse.Namespace) -> int:
    th = _load_theory(args.theory, args.budget)
    try:
        goal = theory.parse_statement(args.goal)
    except theory.StatementParseError as exc:
        raise UsageError(f"bad goal: {exc}") from exc
    result = theory.prove(th, goal)
    if isinstance(result, theory.Proof):
        lines = [f"PROVED {result.goal.canonical()}", f"RULE {result.rule}"]
        lines.extend(f"PREMISE {p.canonical()}" for p in result.premises)
        _emit(lines)
        return EXIT_OK
    lines = [f"UNPROVABLE {result.goal.canonical()}"]
    lines.extend(f"MISSING {q}" for q in result.missing)
    _emit(lines)
    return EXIT_DOMAIN


def cmd_theory_frontier(args: argparse.Namespace) -> int:
    th = _load_theory(args.theory, args.budget)
    report = theory.elegance_frontier(th)
    lines = [f"N {report.theory_bits} FRONTIER {report.frontier}"]
    lines.extend(f"PROVEN (elegant {p})" for p in report.proven)
    _emit(lines)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="omegalab",
        description="A desk-scale laboratory for program-size experiments "
        "on a fixed prefix-free toy machine.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("enumerate", help="scan all programs up to a length at a step budget")
    p.add_argument("--max-len", type=_nonneg_int, required=True)
    p.add_argument("--budget", type=_nonneg_int, required=True)
    p.add_argument("--checkpoint", required=True)
    p.add_argument("--resume", action="store_true", help="extend an existing checkpoint")
    p.add_argument("--workers", type=_pos_int, default=None)
    p.set_defaults(handler=cmd_enumerate)

    p = sub.add_parser("omega", help="halting-probability lower bound from a checkpoint")
    p.add_argument("--checkpoint", required=True)
    p.add_argument("--bits", type=_nonneg_int, default=DEFAULT_OMEGA_BITS)
    p.set_defaults(handler=cmd_omega)

    p = sub.add_parser("elegant", help="find the smallest programs for a target output")
    p.add_argument("--target", type=_bits_value, required=True)
    p.add_argument("--max-len", type=_pos_int, required=True)
    p.add_argument("--budget", type=_nonneg_int, required=True)
    p.set_defaults(handler=cmd_elegant)

    p = sub.add_parser("compress", help="best found program vs the literal baseline")
    p.add_argument("--facts", type=_bits_value, required=True)
    p.add_argument("--max-len", type=_pos_int, required=True)
    p.add_argument("--budget", type=_nonneg_int, required=True)
    p.set_defaults(handler=cmd_compress)

    p = sub.add_parser("run", help="run one program")
    p.add_argument("--program", type=_bits_value, required=True)
    p.add_argument("--budget", type=_nonneg_int, required=True)
    p.set_defaults(handler=cmd_run)

    p = sub.add_parser("diag", help="diagonal real over a list of digit streams")
    p.add_argument("--programs", required=True, help="file with one program per line")
    p.add_argument("--digits", type=_pos_int, required=True)
    p.add_argument("--budget", type=_nonneg_int, required=True)
    p.set_defaults(handler=cmd_diag)

    p = sub.add_parser("cover", help="geometric interval cover of listed points")
    p.add_argument("--points", required=True, help="file with one 'p/q' per line")
    p.add_argument("--epsilon", type=_rational, required=True)
    p.set_defaults(handler=cmd_cover)

    p = sub.add_parser("borel", help="classify the first strings of the question language")
    p.add_argument("--prefix", type=_nonneg_int, required=True)
    p.add_argument("--budget", type=_nonneg_int, required=True)
    p.set_defaults(handler=cmd_borel)

    p = sub.add_parser("theory", help="toy formal theory commands")
    tsub = p.add_subparsers(dest="subcommand", required=True)

    tp = tsub.add_parser("prove", help="prove a goal from a theory file")
    tp.add_argument("--theory", required=True)
    tp.add_argument("--goal", required=True)
    tp.add_argument("--budget", type=_nonneg_int, default=theory.DEFAULT_CERT_BUDGET)
    tp.set_defaults(handler=cmd_theory_prove)

    tf = tsub.add_parser("frontier", help="largest provably elegant program size")
    tf.add_argument("--theory", required=True)
    tf.add_argument("--budget", type=_nonneg_int, default=theory.DEFAULT_CERT_BUDGET)
    tf.set_defaults(handler=cmd_theory_frontier)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    try:
        return args.handler(args)
    except UsageError as exc:
        print(f"omegalab: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
