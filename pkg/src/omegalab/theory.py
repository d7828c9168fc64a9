"""A toy formal axiomatic theory whose size is measured in bits.

Statements talk about concrete programs: (halts p), (outputs p s),
(loops p), (elegant p). A theory is a finite list of facts restricted to
the first three kinds, and every fact is certifiable by running the
machine, so theories built through the normal constructors are sound by
construction. The single inference rule, ELEGANT-INTRO, derives
(elegant p) from an outputs fact for p plus a classification of every
syntactically valid shorter program. The theory's size N is eight bits
per character of its canonical serialization; elegance_frontier pairs
that N with the largest program size provably elegant, which is the
desk-scale face of the incompleteness trend.

Constructing Theory(...) directly skips certification. That backdoor
exists for tests that need deliberately unsound theories; real theories
come from Theory.certified, theory_for_programs, or load_theory.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

from .enumerator import bit_strings
from .vm import Halted, InvalidProgram, decode, detect_loop, run

KINDS = ("halts", "outputs", "loops", "elegant")
FACT_KINDS = ("halts", "outputs", "loops")
DEFAULT_CERT_BUDGET = 10_000


class StatementParseError(ValueError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


class UncertifiableFact(ValueError):
    """A would-be fact the machine does not back up."""


class TheoryFileError(ValueError):
    """A theory file line that does not parse; the message names it."""


@dataclass(frozen=True)
class Statement:
    kind: str
    program: str
    output: str | None = None  # "" encodes eps; None for non-outputs kinds

    def __post_init__(self) -> None:
        if self.kind not in KINDS:
            raise ValueError(f"unknown statement kind {self.kind!r}")
        if not self.program or any(c not in "01" for c in self.program):
            raise ValueError("program must be a nonempty bit string")
        if (self.output is not None) != (self.kind == "outputs"):
            raise ValueError("only outputs statements carry an output")
        if self.output and any(c not in "01" for c in self.output):
            raise ValueError("output must be a bit string")

    def canonical(self) -> str:
        if self.kind == "outputs":
            return f"(outputs {self.program} {self.output or 'eps'})"
        return f"({self.kind} {self.program})"


def parse_statement(text: str) -> Statement:
    """Parse "(keyword arg ...)" with single-space separators.

    Round-trips with Statement.canonical; the empty output is written
    "eps". Errors carry the 0-based failure position.
    """
    if not text.startswith("("):
        raise StatementParseError("expected '('", 0)
    pos = 1
    end = pos
    while end < len(text) and text[end].isalpha():
        end += 1
    kind = text[pos:end]
    if kind not in KINDS:
        raise StatementParseError(f"unknown keyword {kind!r}", pos)
    pos = end
    args: list[tuple[str, int]] = []
    for _ in range(2 if kind == "outputs" else 1):
        if pos >= len(text) or text[pos] != " ":
            raise StatementParseError("expected ' '", pos)
        pos += 1
        start = pos
        while pos < len(text) and text[pos] not in " ()":
            pos += 1
        if pos == start:
            raise StatementParseError("expected an argument", start)
        args.append((text[start:pos], start))
    if pos >= len(text) or text[pos] != ")":
        raise StatementParseError("expected ')'", pos)
    if pos + 1 != len(text):
        raise StatementParseError("trailing characters", pos + 1)
    program, program_at = args[0]
    if any(c not in "01" for c in program):
        raise StatementParseError("program must be a bit string", program_at)
    output = None
    if kind == "outputs":
        token, token_at = args[1]
        if token == "eps":
            output = ""
        elif all(c in "01" for c in token):
            output = token
        else:
            raise StatementParseError("output must be a bit string or 'eps'", token_at)
    return Statement(kind, program, output)


def certify_run_axioms(program: str, budget: int) -> list[Statement]:
    """Execution-grounded axioms for one program.

    Halting within the budget yields its halts and outputs facts; a loop
    certificate yields its loops fact; otherwise nothing can be asserted.
    """
    outcome = run(program, budget)
    if isinstance(outcome, Halted):
        return [Statement("halts", program), Statement("outputs", program, outcome.output)]
    if detect_loop(program, budget) is not None:
        return [Statement("loops", program)]
    return []


def _certify_fact(fact: Statement, budget: int) -> None:
    if fact.kind not in FACT_KINDS:
        raise UncertifiableFact(f"{fact.canonical()}: facts are limited to halts/outputs/loops")
    try:
        if fact.kind == "loops":
            if detect_loop(fact.program, budget) is None:
                raise UncertifiableFact(
                    f"{fact.canonical()}: no loop certificate within {budget} steps"
                )
            return
        outcome = run(fact.program, budget)
    except InvalidProgram as exc:
        raise UncertifiableFact(f"{fact.canonical()}: invalid program ({exc})") from exc
    if not isinstance(outcome, Halted):
        raise UncertifiableFact(f"{fact.canonical()}: still running after {budget} steps")
    if fact.kind == "outputs" and outcome.output != fact.output:
        raise UncertifiableFact(
            f"{fact.canonical()}: actual output is {outcome.output or 'eps'}"
        )


@dataclass(frozen=True)
class Theory:
    facts: tuple[Statement, ...] = ()

    def canonical_text(self) -> str:
        return "".join(f.canonical() + "\n" for f in self.facts)

    @property
    def size_bits(self) -> int:
        return 8 * len(self.canonical_text())

    @classmethod
    def certified(cls, facts, budget: int = DEFAULT_CERT_BUDGET) -> "Theory":
        """Build a theory, re-verifying every fact against the machine."""
        facts = tuple(facts)
        for fact in facts:
            _certify_fact(fact, budget)
        return cls(facts)


def theory_for_programs(programs, budget: int = DEFAULT_CERT_BUDGET) -> Theory:
    """The theory of everything certify_run_axioms says about `programs`."""
    facts: list[Statement] = []
    for program in programs:
        facts.extend(certify_run_axioms(program, budget))
    return Theory(tuple(facts))


@dataclass(frozen=True)
class Proof:
    goal: Statement
    rule: str  # "FACT" or "ELEGANT-INTRO"
    premises: tuple[Statement, ...]


@dataclass(frozen=True)
class Unprovable:
    goal: Statement
    missing: tuple[str, ...]  # shorter programs lacking a usable classification


def shorter_valid_programs(length: int) -> list[str]:
    """Every valid program of fewer than `length` bits, length-lex order.

    Purely syntactic: candidates come from decoding, never from running.
    """
    found: list[str] = []
    for n in range(1, length):
        for bits in bit_strings(n):
            try:
                decode(bits)
            except InvalidProgram:
                continue
            found.append(bits)
    return found


def _classifier(facts: tuple[Statement, ...], q: str, output: str) -> Statement | None:
    loops = Statement("loops", q)
    if loops in facts:
        return loops
    for fact in facts:
        if fact.kind == "outputs" and fact.program == q and fact.output != output:
            return fact
    return None


def prove(theory: Theory, goal: Statement) -> Proof | Unprovable:
    """Derive `goal` from the theory, deterministically.

    Facts are theorems outright. ELEGANT-INTRO: from (outputs p s) and,
    for every valid program q shorter than p, either (loops q) or
    (outputs q s_q) with s_q != s, conclude (elegant p). An Unprovable
    elegance goal lists the shorter programs whose classification is
    missing (including p itself when it has no outputs fact).
    """
    facts = theory.facts
    if goal in facts:
        return Proof(goal, "FACT", ())
    if goal.kind != "elegant":
        return Unprovable(goal, ())
    p = goal.program
    base = next((f for f in facts if f.kind == "outputs" and f.program == p), None)
    if base is None:
        return Unprovable(goal, (p,))
    premises = [base]
    missing: list[str] = []
    for q in shorter_valid_programs(len(p)):
        side = _classifier(facts, q, base.output)
        if side is None:
            missing.append(q)
        else:
            premises.append(side)
    if missing:
        return Unprovable(goal, tuple(missing))
    return Proof(goal, "ELEGANT-INTRO", tuple(premises))


@dataclass(frozen=True)
class CheckResult:
    ok: bool
    reason: str | None = None


def _covers(premise: Statement, q: str, output: str) -> bool:
    if premise.program != q:
        return False
    if premise.kind == "loops":
        return True
    return premise.kind == "outputs" and premise.output != output


def check_proof(theory: Theory, proof: Proof) -> CheckResult:
    """Independently re-verify a proof; rejects at the first failing step.

    The side-condition enumeration is redone from scratch, so a proof
    that silently skips a shorter valid program does not pass.
    """
    facts = theory.facts
    for premise in proof.premises:
        if premise not in facts:
            return CheckResult(False, f"premise not in theory: {premise.canonical()}")
    if proof.rule == "FACT":
        if proof.premises:
            return CheckResult(False, "FACT proofs take no premises")
        if proof.goal not in facts:
            return CheckResult(False, f"goal is not a fact: {proof.goal.canonical()}")
        return CheckResult(True)
    if proof.rule != "ELEGANT-INTRO":
        return CheckResult(False, f"unknown rule {proof.rule!r}")
    if proof.goal.kind != "elegant":
        return CheckResult(False, "ELEGANT-INTRO only derives elegance statements")
    if not proof.premises:
        return CheckResult(False, "missing the outputs premise")
    base = proof.premises[0]
    if base.kind != "outputs" or base.program != proof.goal.program:
        return CheckResult(False, "first premise must state the goal program's output")
    side = proof.premises[1:]
    for q in shorter_valid_programs(len(proof.goal.program)):
        if not any(_covers(premise, q, base.output) for premise in side):
            return CheckResult(False, f"shorter program {q} is not classified")
    return CheckResult(True)


@dataclass(frozen=True)
class FrontierReport:
    theory_bits: int
    frontier: int
    proven: tuple[str, ...]


def elegance_frontier(theory: Theory, max_goal_len: int | None = None) -> FrontierReport:
    """Largest program size provably elegant, paired with the theory's N.

    Goals are tried in length-lex order over the programs that carry an
    outputs fact; nothing else can satisfy ELEGANT-INTRO, so the scan is
    finite. Adding facts never shrinks the frontier.
    """
    candidates = sorted(
        {f.program for f in theory.facts if f.kind == "outputs"},
        key=lambda p: (len(p), p),
    )
    proven: list[str] = []
    for p in candidates:
        if max_goal_len is not None and len(p) > max_goal_len:
            continue
        if isinstance(prove(theory, Statement("elegant", p)), Proof):
            proven.append(p)
    frontier = max((len(p) for p in proven), default=0)
    return FrontierReport(theory.size_bits, frontier, tuple(proven))


def parse_theory_text(text: str) -> tuple[Statement, ...]:
    """One canonical statement per line; '#' lines and blank lines skipped."""
    facts: list[Statement] = []
    for num, line in enumerate(text.splitlines(), start=1):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        try:
            facts.append(parse_statement(stripped))
        except StatementParseError as exc:
            raise TheoryFileError(f"line {num}: {exc}") from exc
    return tuple(facts)


def load_theory(path: str | Path, budget: int = DEFAULT_CERT_BUDGET) -> Theory:
    return Theory.certified(parse_theory_text(Path(path).read_text(encoding="ascii")), budget)
