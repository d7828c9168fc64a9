"""The OMV machine: a bit-exact, prefix-free two-counter toy language.

A program is a finite 0/1 string: an Elias-gamma header carrying the
instruction count, then the instructions themselves. A string is a valid
program only when decoding consumes every bit exactly, so no valid program
is a proper prefix of another one. That prefix-freeness is what makes
"pick each program bit with a fair coin" a well-defined probability space,
and it is the reason everything downstream (halting-mass bounds, elegance
search, the toy theory) can use plain program length as its size measure.

Execution model: two non-negative unbounded counters A and B, a program
counter, and an output tape of bits. DJZ is decrement-or-branch: it jumps
by its offset when its counter is zero, otherwise decrements and falls
through. Falling off either end of the instruction list is a halt, and
jump targets outside the code are clamped to "past the end". Everything
here is integer/string arithmetic; there is deliberately no floating point
in this module or anywhere above it.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

__all__ = [
    "InvalidProgram",
    "InvalidReason",
    "Op",
    "Instruction",
    "Program",
    "Halted",
    "Running",
    "LoopCert",
    "gamma_encode",
    "gamma_decode",
    "decode",
    "encode_instructions",
    "assemble",
    "run",
    "execute",
    "stream_output",
    "detect_loop",
    "literal_program",
]


class InvalidReason(Enum):
    TRUNCATED = "Truncated"
    LEFTOVER = "Leftover"
    MALFORMED_GAMMA = "MalformedGamma"


class InvalidProgram(ValueError):
    """Raised when a bit string is not a valid program."""

    def __init__(self, reason: InvalidReason):
        super().__init__(reason.value)
        self.reason = reason


class Op(Enum):
    HALT = "HALT"
    EMIT0 = "EMIT0"
    EMIT1 = "EMIT1"
    INCA = "INCA"
    INCB = "INCB"
    DJZA = "DJZA"
    DJZB = "DJZB"


_JUMPS = (Op.DJZA, Op.DJZB)

_OPCODE = {
    Op.HALT: "00",
    Op.EMIT0: "01",
    Op.EMIT1: "10",
    Op.INCA: "1100",
    Op.INCB: "1101",
    Op.DJZA: "1110",
    Op.DJZB: "1111",
}


@dataclass(frozen=True)
class Instruction:
    op: Op
    offset: int | None = None

    def __post_init__(self) -> None:
        if (self.offset is not None) != (self.op in _JUMPS):
            raise ValueError(f"{self.op.value} takes an offset iff it is a jump")


@dataclass(frozen=True)
class Program:
    bits: str
    instructions: tuple[Instruction, ...]

    @property
    def length_bits(self) -> int:
        return len(self.bits)


@dataclass(frozen=True)
class Halted:
    output: str
    steps: int


@dataclass(frozen=True)
class Running:
    budget: int


@dataclass(frozen=True)
class LoopCert:
    """A revisited control state: a finite proof the program never halts."""

    program: str
    revisit_step: int
    state: tuple[int, int, int]  # (pc, counter A, counter B)


def gamma_encode(m: int) -> str:
    """Elias-gamma code of m >= 1: k zeros, then the (k+1)-bit binary of m."""
    if m < 1:
        raise ValueError("gamma code is defined for integers >= 1")
    return "0" * (m.bit_length() - 1) + format(m, "b")


def gamma_decode(bits: str, start: int = 0) -> tuple[int, int]:
    """Decode a gamma code at `start`; returns (value, bits consumed)."""
    k = start
    while k < len(bits) and bits[k] == "0":
        k += 1
    end = k + (k - start) + 1
    if k == len(bits) or end > len(bits):
        raise InvalidProgram(InvalidReason.MALFORMED_GAMMA)
    return int(bits[k:end], 2), end - start


def _zigzag(delta: int) -> int:
    return 2 * delta if delta >= 0 else -2 * delta - 1


def _unzigzag(z: int) -> int:
    return z // 2 if z % 2 == 0 else -(z // 2) - 1


def _decode_instruction(bits: str, pos: int) -> tuple[Instruction, int]:
    if pos + 2 > len(bits):
        raise InvalidProgram(InvalidReason.TRUNCATED)
    two = bits[pos : pos + 2]
    if two == "00":
        return Instruction(Op.HALT), 2
    if two == "01":
        return Instruction(Op.EMIT0), 2
    if two == "10":
        return Instruction(Op.EMIT1), 2
    if pos + 4 > len(bits):
        raise InvalidProgram(InvalidReason.TRUNCATED)
    four = bits[pos : pos + 4]
    if four == "1100":
        return Instruction(Op.INCA), 4
    if four == "1101":
        return Instruction(Op.INCB), 4
    op = Op.DJZA if four == "1110" else Op.DJZB
    z, used = gamma_decode(bits, pos + 4)
    return Instruction(op, _unzigzag(z - 1)), 4 + used


def decode(bits: str) -> Program:
    """Decode a bit string; valid iff decoding consumes exactly all bits.

    Raises InvalidProgram with reason Truncated (bits ran out mid-decode),
    Leftover (bits remain after the counted instructions), or
    MalformedGamma (a self-delimiting integer could not be completed).
    """
    if any(c not in "01" for c in bits):
        raise ValueError("program bits must be '0'/'1' characters")
    header, pos = gamma_decode(bits)
    instructions = []
    for _ in range(header - 1):
        ins, used = _decode_instruction(bits, pos)
        instructions.append(ins)
        pos += used
    if pos != len(bits):
        raise InvalidProgram(InvalidReason.LEFTOVER)
    return Program(bits, tuple(instructions))


def encode_instructions(instructions: tuple[Instruction, ...]) -> str:
    parts = [gamma_encode(len(instructions) + 1)]
    for ins in instructions:
        parts.append(_OPCODE[ins.op])
        if ins.op in _JUMPS:
            parts.append(gamma_encode(_zigzag(ins.offset) + 1))
    return "".join(parts)


def assemble(instructions) -> Program:
    """Build a Program from an instruction list; inverse of decode."""
    instructions = tuple(instructions)
    return Program(encode_instructions(instructions), instructions)


def _apply(
    ins: Instruction, pc: int, a: int, b: int, n: int
) -> tuple[int, int, int, str | None, bool]:
    """One machine step; returns (pc, a, b, emitted bit, halted)."""
    op = ins.op
    if op is Op.HALT:
        return pc, a, b, None, True
    emit = None
    if op is Op.EMIT0:
        emit = "0"
        pc += 1
    elif op is Op.EMIT1:
        emit = "1"
        pc += 1
    elif op is Op.INCA:
        a += 1
        pc += 1
    elif op is Op.INCB:
        b += 1
        pc += 1
    elif op is Op.DJZA:
        if a == 0:
            pc += 1 + ins.offset
            if not 0 <= pc <= n:
                pc = n  # out-of-range jump targets mean "past the end"
        else:
            a -= 1
            pc += 1
    else:  # DJZB
        if b == 0:
            pc += 1 + ins.offset
            if not 0 <= pc <= n:
                pc = n
        else:
            b -= 1
            pc += 1
    return pc, a, b, emit, False


def _run_machine(
    program: Program, budget: int, want_bits: int | None = None
) -> tuple[bool, str, int]:
    """Step until HALT/fall-off, the budget, or `want_bits` output bits."""
    n = len(program.instructions)
    pc = a = b = steps = 0
    out: list[str] = []
    while True:
        if not 0 <= pc < n:
            return True, "".join(out), steps
        if want_bits is not None and len(out) >= want_bits:
            return False, "".join(out), steps
        if steps >= budget:
            return False, "".join(out), steps
        pc, a, b, emitted, halted = _apply(program.instructions[pc], pc, a, b, n)
        steps += 1
        if halted:
            return True, "".join(out), steps
        if emitted is not None:
            out.append(emitted)


def execute(program: Program, budget: int) -> Halted | Running:
    if budget < 0:
        raise ValueError("budget must be >= 0")
    halted, out, steps = _run_machine(program, budget)
    return Halted(out, steps) if halted else Running(budget)


def run(bits: str, budget: int) -> Halted | Running:
    """Decode and execute: Halted(output, steps) or Running(budget).

    Counters start at zero, output empty. Executing an instruction costs
    one step; halting by falling off the end costs none, so the empty
    program halts in zero steps at any budget.
    """
    return execute(decode(bits), budget)


def stream_output(program: Program, budget: int, want_bits: int) -> str:
    """Run ignoring halting status; the first `want_bits` emitted bits.

    The result is shorter than `want_bits` when the program halts or the
    budget runs out first.
    """
    _, out, _ = _run_machine(program, budget, want_bits)
    return out[:want_bits]


def detect_loop(bits: str, budget: int) -> LoopCert | None:
    """Simulate up to `budget` steps, certifying the first state revisit.

    Output emission does not touch the control state (pc, A, B), so a
    revisit makes the deterministic machine repeat forever: a sound
    non-halting certificate. Returns None when the program halts or no
    revisit shows up within the budget.
    """
    program = decode(bits)
    n = len(program.instructions)
    pc = a = b = 0
    seen = {(0, 0, 0)}
    for step in range(1, budget + 1):
        if not 0 <= pc < n:
            return None
        pc, a, b, _, halted = _apply(program.instructions[pc], pc, a, b, n)
        if halted:
            return None
        state = (pc, a, b)
        if state in seen:
            return LoopCert(bits, step, state)
        seen.add(state)
    return None


def literal_program(s: str) -> str:
    """The program that prints `s` verbatim, one EMIT per fact bit.

    Always valid, always halts (by fall-off, within len(s) steps), costs
    two bits per output bit plus the logarithmic header: the baseline any
    genuine compression has to beat.
    """
    if any(c not in "01" for c in s):
        raise ValueError("facts must be '0'/'1' characters")
    body = "".join("01" if c == "0" else "10" for c in s)
    return gamma_encode(len(s) + 1) + body
