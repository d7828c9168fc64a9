import random

import pytest

from omegalab.vm import (
    Halted,
    Instruction,
    InvalidProgram,
    InvalidReason,
    Op,
    Running,
    assemble,
    decode,
    detect_loop,
    encode_instructions,
    gamma_decode,
    gamma_encode,
    literal_program,
    run,
)

from naive_vm import naive_decode, naive_run


def all_strings(max_len):
    for length in range(1, max_len + 1):
        for i in range(2**length):
            yield format(i, f"0{length}b")


def valid_programs(max_len):
    for bits in all_strings(max_len):
        try:
            yield decode(bits)
        except InvalidProgram:
            continue


# --- gamma code ---------------------------------------------------------


def test_gamma_encode_base_cases():
    assert gamma_encode(1) == "1"
    assert gamma_encode(2) == "010"
    assert gamma_encode(4) == "00100"


def test_gamma_round_trip_exhaustive():
    for m in range(1, 4097):
        bits = gamma_encode(m)
        assert gamma_decode(bits) == (m, len(bits))
        # decoding ignores trailing bits and reports consumption
        assert gamma_decode(bits + "101") == (m, len(bits))


def test_gamma_encode_rejects_nonpositive():
    with pytest.raises(ValueError):
        gamma_encode(0)


def test_gamma_decode_exhaustion():
    for bad in ("", "0", "00", "01", "0001"):
        with pytest.raises(InvalidProgram) as err:
            gamma_decode(bad)
        assert err.value.reason is InvalidReason.MALFORMED_GAMMA


# --- decode -------------------------------------------------------------


def test_decode_empty_program():
    program = decode("1")
    assert program.instructions == ()
    assert program.length_bits == 1


def test_decode_single_emit():
    program = decode("01001")
    assert [ins.op for ins in program.instructions] == [Op.EMIT0]


def test_decode_leftover():
    # header "1" says zero instructions, one bit remains
    with pytest.raises(InvalidProgram) as err:
        decode("10")
    assert err.value.reason is InvalidReason.LEFTOVER


def test_decode_truncated_opcode():
    with pytest.raises(InvalidProgram) as err:
        decode("01011")  # header n=1, then "11" is an unfinished long opcode
    assert err.value.reason is InvalidReason.TRUNCATED


def test_decode_truncated_missing_instruction():
    with pytest.raises(InvalidProgram) as err:
        decode("00100")  # header says 3 instructions, none follow
    assert err.value.reason is InvalidReason.TRUNCATED


def test_decode_malformed_jump_offset():
    with pytest.raises(InvalidProgram) as err:
        decode("0101111")  # DJZB with no offset code
    assert err.value.reason is InvalidReason.MALFORMED_GAMMA


def test_decode_rejects_non_bit_characters():
    with pytest.raises(ValueError):
        decode("01x01")


def test_decode_matches_naive_oracle_exhaustively():
    for bits in all_strings(12):
        theirs = naive_decode(bits)
        try:
            ours = decode(bits)
        except InvalidProgram:
            assert theirs is None, bits
            continue
        assert theirs is not None, bits
        assert len(ours.instructions) == len(theirs)


def test_valid_set_of_short_strings():
    valid = {p.bits for p in valid_programs(5)}
    assert valid == {"1", "01000", "01001", "01010"}


def test_decode_encode_consistency_exhaustive():
    for program in valid_programs(12):
        assert encode_instructions(program.instructions) == program.bits


def test_assemble_round_trip():
    program = assemble(
        [Instruction(Op.EMIT1), Instruction(Op.INCA), Instruction(Op.DJZA, -2)]
    )
    assert decode(program.bits) == program


def test_instruction_offset_validation():
    with pytest.raises(ValueError):
        Instruction(Op.HALT, 3)
    with pytest.raises(ValueError):
        Instruction(Op.DJZA)


def test_prefix_freeness_small():
    valid = {p.bits for p in valid_programs(10)}
    for bits in valid:
        for cut in range(1, len(bits)):
            assert bits[:cut] not in valid


# --- run ----------------------------------------------------------------


def test_run_empty_program_halts_immediately():
    assert run("1", 10) == Halted("", 0)
    assert run("1", 0) == Halted("", 0)  # fall-off costs no step


def test_run_single_emit():
    assert run("01001", 10) == Halted("0", 1)
    assert run("01010", 10) == Halted("1", 1)


def test_run_halt_instruction_costs_a_step():
    assert run("01000", 10) == Halted("", 1)
    assert run("01000", 0) == Running(0)


def test_run_self_loop_never_halts():
    for budget in (0, 1, 10, 1000):
        assert run("0101110010", budget) == Running(budget)


def test_run_jump_target_clamping():
    # forward jump past the end halts
    forward = assemble([Instruction(Op.DJZA, 5)])
    assert run(forward.bits, 10) == Halted("", 1)
    # backward jump before the start halts too
    backward = assemble([Instruction(Op.DJZB, -7)])
    assert run(backward.bits, 10) == Halted("", 1)


def test_run_djz_decrements_when_nonzero():
    program = assemble([Instruction(Op.INCA), Instruction(Op.DJZA, -2)])
    # INCA then DJZA sees A=1: decrement and fall through, no jump
    assert run(program.bits, 10) == Halted("", 2)


def test_run_matches_naive_oracle():
    for bits in all_strings(10):
        for budget in (0, 3, 50):
            theirs = naive_run(bits, budget)
            try:
                ours = run(bits, budget)
            except InvalidProgram:
                assert theirs is None
                continue
            if isinstance(ours, Halted):
                assert theirs == ("halted", ours.output, ours.steps), bits
            else:
                assert theirs == ("running",), bits


def test_run_determinism_and_budget_monotonicity():
    for program in valid_programs(10):
        small = run(program.bits, 7)
        assert run(program.bits, 7) == small
        big = run(program.bits, 200)
        if isinstance(small, Halted):
            assert big == small
        elif isinstance(big, Halted):
            assert big.steps > 7


# --- literal programs ---------------------------------------------------


def test_literal_program_examples():
    assert literal_program("") == "1"
    assert literal_program("0") == "01001"
    assert literal_program("01") == "0110110"
    assert len(literal_program("01")) == 7


def test_literal_program_always_replays_its_facts():
    rng = random.Random(7)
    for _ in range(200):
        s = "".join(rng.choice("01") for _ in range(rng.randrange(0, 40)))
        bits = literal_program(s)
        outcome = run(bits, len(s) + 1)
        assert outcome == Halted(s, len(s))
        assert outcome.steps <= len(s) + 1


def test_literal_program_rejects_non_bits():
    with pytest.raises(ValueError):
        literal_program("012")


# --- loop certificates ---------------------------------------------------


def test_detect_loop_self_loop():
    cert = detect_loop("0101110010", 100)
    assert cert is not None
    assert cert.revisit_step == 1
    assert cert.state == (0, 0, 0)


def test_detect_loop_halting_program():
    assert detect_loop("01001", 100) is None


def test_detect_loop_zero_budget():
    assert detect_loop("0101110010", 0) is None


def test_detect_loop_certificates_are_sound():
    # every certificate issued over short programs marks a true non-halter
    for program in valid_programs(12):
        cert = detect_loop(program.bits, 50)
        if cert is not None:
            assert run(program.bits, 5000) == Running(5000)


def test_counter_growth_defeats_loop_detection():
    # INCA; DJZB(-2) cycles through pc 0 forever while A grows, so no
    # control state ever repeats: correctly no certificate at any budget
    runner = assemble([Instruction(Op.INCA), Instruction(Op.DJZB, -2)])
    assert runner.bits == "0111100111100100"
    assert detect_loop(runner.bits, 2000) is None
    assert run(runner.bits, 2000) == Running(2000)
