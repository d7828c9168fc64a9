"""Computable-real demonstrations at desk scale.

Digit streams read a program's output tape as decimal digits (4 emitted
bits per digit, reduced mod 10, which skews toward 0..5 — acceptable for
demonstrations). The diagonal construction differs from the nth stream at
digit n using only 5s and 6s, so no 0 or 9 ever appears and the synonym
problem (trailing-9s vs trailing-0s spellings of the same real) cannot
bite. Covers shrink geometrically: point N gets an interval of width
epsilon/2^N, totalling epsilon(1 - 2^-N) exactly. The oracle digits
classify every string of a tiny question language about programs, with
"undecided within budget" standing in for unanswerable.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .vm import Halted, InvalidProgram, decode, detect_loop, run, stream_output

BITS_PER_DIGIT = 4

BOREL_ALPHABET = ("H", "O", "(", ")", ",", ".", "?", "0", "1", "e")


@dataclass(frozen=True)
class DigitStream:
    """A decimal stream: digit n is emitted bits 4n..4n+3, base 2, mod 10."""

    program: str

    def __post_init__(self) -> None:
        decode(self.program)  # invalid programs are rejected up front


def digit_at(stream: DigitStream, n: int, budget: int) -> int | None:
    """The nth digit, or None when the stream halts or stalls first."""
    if n < 0:
        raise ValueError("digit index must be >= 0")
    need = BITS_PER_DIGIT * (n + 1)
    out = stream_output(decode(stream.program), budget, need)
    if len(out) < need:
        return None
    return int(out[need - BITS_PER_DIGIT : need], 2) % 10


@dataclass(frozen=True)
class DiagonalReal:
    digits: tuple[int, ...]
    verified: tuple[bool, ...]


def diagonal(streams: Sequence[DigitStream], m: int, budget: int) -> DiagonalReal:
    """Differ from stream n at digit n: 5 unless the source digit is 5, then 6.

    Unknown source digits produce a 5 flagged unverified. Every digit is
    5 or 6, never 0 or 9.
    """
    if len(streams) < m:
        raise ValueError(f"need at least {m} streams, got {len(streams)}")
    digits: list[int] = []
    verified: list[bool] = []
    for n in range(m):
        d = digit_at(streams[n], n, budget)
        if d is None:
            digits.append(5)
            verified.append(False)
        else:
            digits.append(6 if d == 5 else 5)
            verified.append(True)
    return DiagonalReal(tuple(digits), tuple(verified))


@dataclass(frozen=True)
class CoverInterval:
    index: int
    center: Fraction
    halfwidth: Fraction

    @property
    def width(self) -> Fraction:
        return 2 * self.halfwidth


@dataclass(frozen=True)
class CoverReport:
    epsilon: Fraction
    intervals: tuple[CoverInterval, ...]
    total_length: Fraction


def borel_cover(points: Sequence[Fraction], epsilon: Fraction) -> CoverReport:
    """Cover point N (1-based) with an interval of width epsilon/2^N.

    Intervals may overlap or leave [0, 1]; their total length is exactly
    epsilon(1 - 2^-N), strictly below epsilon however many points are
    listed.
    """
    epsilon = Fraction(epsilon)
    if epsilon <= 0:
        raise ValueError("epsilon must be positive")
    intervals: list[CoverInterval] = []
    total = Fraction(0)
    for index, point in enumerate(points, start=1):
        point = Fraction(point)
        if not 0 <= point <= 1:
            raise ValueError(f"point {index} outside [0, 1]: {point}")
        halfwidth = epsilon / 2 ** (index + 1)
        intervals.append(CoverInterval(index, point, halfwidth))
        total += 2 * halfwidth
    return CoverReport(epsilon, tuple(intervals), total)


def borel_string(k: int) -> str:
    """The kth string (1-based) over the question alphabet, length-lex."""
    if k < 1:
        raise ValueError("string numbering starts at 1")
    base = len(BOREL_ALPHABET)
    length = 1
    remaining = k
    while remaining > base**length:
        remaining -= base**length
        length += 1
    index = remaining - 1
    chars = []
    for _ in range(length):
        index, digit = divmod(index, base)
        chars.append(BOREL_ALPHABET[digit])
    return "".join(reversed(chars))


def _parse_bits_token(text: str, pos: int) -> tuple[str, int] | None:
    # "e" is the empty bit string; otherwise a nonempty run of 0/1
    if text.startswith("e", pos):
        return "", pos + 1
    end = pos
    while end < len(text) and text[end] in "01":
        end += 1
    if end == pos:
        return None
    return text[pos:end], end


def _parse_pred(text: str) -> tuple[tuple[str, ...], int] | None:
    if text.startswith("H("):
        got = _parse_bits_token(text, 2)
        if got is None:
            return None
        p, pos = got
        if not text.startswith(")", pos):
            return None
        return ("H", p), pos + 1
    if text.startswith("O("):
        got = _parse_bits_token(text, 2)
        if got is None:
            return None
        p, pos = got
        if not text.startswith(",", pos):
            return None
        got = _parse_bits_token(text, pos + 1)
        if got is None:
            return None
        s, pos = got
        if not text.startswith(")", pos):
            return None
        return ("O", p, s), pos + 1
    return None


def _answer(pred: tuple[str, ...], budget: int) -> int:
    program = pred[1]
    try:
        outcome = run(program, budget)
    except InvalidProgram:
        return 3  # not a program at all: it certainly never halts or outputs
    if isinstance(outcome, Halted):
        if pred[0] == "H":
            return 4
        return 4 if outcome.output == pred[2] else 3
    return 3 if detect_loop(program, budget) is not None else 2


def classify_text(text: str, budget: int) -> int:
    """Borel digit of one string: 0 unparsable, 1 statement, 2 undecided
    within budget, 3 no, 4 yes.

    Questions are "H(p)?" (does p halt) and "O(p,s)?" (does p output
    exactly s); the same predicates with "." are statements. Raising the
    budget can only move a digit from 2 to 3 or 4.
    """
    got = _parse_pred(text)
    if got is None:
        return 0
    pred, pos = got
    if pos != len(text) - 1 or text[pos] not in ".?":
        return 0
    if text[pos] == ".":
        return 1
    return _answer(pred, budget)


def borel_digit(k: int, budget: int) -> int:
    """Classify the kth string of the question language."""
    return classify_text(borel_string(k), budget)
