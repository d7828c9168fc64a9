"""Search for elegant programs: size-minimal producers of a target output.

Elegance can never be certified unconditionally (that is the whole point),
so verdicts are explicit about their scope: certified means every strictly
shorter valid program was pinned down within the search budget, either by
halting with a different output or by a loop certificate. Anything still
running uncertified is listed and blocks certification.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .enumerator import bit_strings
from .vm import Halted, InvalidProgram, detect_loop, literal_program, run


@dataclass(frozen=True)
class ElegantVerdict:
    target: str
    witnesses: tuple[str, ...]
    certified: bool
    search_bounds: tuple[int, int]  # (max_len, budget)
    unresolved: tuple[str, ...] = ()


@dataclass(frozen=True)
class CompressionReport:
    facts: str
    baseline_bits: int
    best_bits: int
    ratio: Fraction
    best_program: str


def find_elegant(target: str, max_len: int, budget: int) -> ElegantVerdict | None:
    """All shortest producers of `target`, scanning in length-lex order.

    Returns None when no producer exists within the bounds. Ties at the
    minimal length are all reported.
    """
    if max_len < 1:
        raise ValueError("max_len must be >= 1")
    unresolved: list[str] = []
    for length in range(1, max_len + 1):
        witnesses: list[str] = []
        unresolved_here: list[str] = []
        for bits in bit_strings(length):
            try:
                outcome = run(bits, budget)
            except InvalidProgram:
                continue
            if isinstance(outcome, Halted):
                if outcome.output == target:
                    witnesses.append(bits)
            elif detect_loop(bits, budget) is None:
                unresolved_here.append(bits)
        if witnesses:
            # unresolved holds only strictly shorter programs at this point
            return ElegantVerdict(
                target, tuple(witnesses), not unresolved, (max_len, budget), tuple(unresolved)
            )
        unresolved.extend(unresolved_here)
    return None


def compression_report(facts: str, max_len: int, budget: int) -> CompressionReport:
    """Best discovered producer of `facts` against the literal baseline.

    The literal program is always tried, so best_bits <= baseline_bits
    and the ratio never exceeds one.
    """
    baseline_program = literal_program(facts)
    baseline = len(baseline_program)
    best_program = baseline_program
    for length in range(1, min(max_len, baseline - 1) + 1):
        found = None
        for bits in bit_strings(length):
            try:
                outcome = run(bits, budget)
            except InvalidProgram:
                continue
            if isinstance(outcome, Halted) and outcome.output == facts:
                found = bits
                break
        if found is not None:
            best_program = found
            break
    return CompressionReport(
        facts, baseline, len(best_program), Fraction(len(best_program), baseline), best_program
    )
