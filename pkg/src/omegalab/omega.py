"""Exact dyadic lower bounds on the halting probability of the machine.

Every K-bit halting program contributes exactly 1/2^K. Sums are kept as
exact rationals (the denominators are powers of two, nothing ever rounds),
and only lower bounds are ever claimed: unaccounted non-halting mass can
flip any binary digit, so reports carry a standing not-settled caveat.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

from .enumerator import EnumState, HaltRecord


class DuplicateProgram(ValueError):
    """The same program credited twice; a census bug, never a no-op."""


@dataclass(frozen=True)
class OmegaBound:
    value: Fraction
    contributing: frozenset[str]
    source: tuple[int, int]  # (max_len, budget) provenance of the census


def empty_bound(source: tuple[int, int] = (0, 0)) -> OmegaBound:
    return OmegaBound(Fraction(0), frozenset(), source)


def add_record(bound: OmegaBound, rec: HaltRecord) -> OmegaBound:
    """Credit one halting program: a K-bit program adds exactly 1/2^K."""
    if rec.program in bound.contributing:
        raise DuplicateProgram(rec.program)
    share = Fraction(1, 2 ** len(rec.program))
    return OmegaBound(bound.value + share, bound.contributing | {rec.program}, bound.source)


def from_state(state: EnumState) -> OmegaBound:
    """Fold a census into a bound; any fold order gives the same value."""
    bound = empty_bound((state.max_len_done, state.budget))
    for rec in sorted(state.records, key=lambda r: (len(r.program), r.program)):
        bound = add_record(bound, rec)
    return bound


def merge(a: OmegaBound, b: OmegaBound) -> OmegaBound:
    """Combine bounds built from disjoint censuses; equals folding the union."""
    overlap = a.contributing & b.contributing
    if overlap:
        raise DuplicateProgram(min(overlap, key=lambda p: (len(p), p)))
    source = (max(a.source[0], b.source[0]), max(a.source[1], b.source[1]))
    return OmegaBound(a.value + b.value, a.contributing | b.contributing, source)


def binary_expansion(bound: OmegaBound, k: int) -> str:
    """First k bits after the binary point, exact (the value is dyadic)."""
    if k < 0:
        raise ValueError("digit count must be >= 0")
    rest = bound.value
    digits = []
    for _ in range(k):
        rest *= 2
        if rest >= 1:
            digits.append("1")
            rest -= 1
        else:
            digits.append("0")
    return "".join(digits)


@dataclass(frozen=True)
class KraftResult:
    ok: bool
    mass: Fraction
    violation: tuple[str, str] | None = None  # (prefix, extension) when not prefix-free


def kraft_check(records: Iterable[HaltRecord | str]) -> KraftResult:
    """Verify a census is prefix-free with total mass strictly below one."""
    programs = sorted(
        {r.program if isinstance(r, HaltRecord) else r for r in records},
        key=lambda p: (len(p), p),
    )
    mass = sum((Fraction(1, 2 ** len(p)) for p in programs), start=Fraction(0))
    members = set(programs)
    for p in programs:
        for cut in range(1, len(p)):
            if p[:cut] in members:
                return KraftResult(False, mass, (p[:cut], p))
    if mass >= 1:
        return KraftResult(False, mass)
    return KraftResult(True, mass)


def format_report(bound: OmegaBound, halting: int, pending: int, bits: int) -> str:
    max_len, budget = bound.source
    return (
        f"OMEGA >= {bound.value.numerator}/{bound.value.denominator}"
        f" = 0.{binary_expansion(bound, bits)}..."
        f" (census: len<={max_len}, budget {budget},"
        f" {halting} halting, {pending} pending)"
        f" [lower bound only; bits not settled]"
    )
