import pytest

from omegalab.enumerator import (
    CHECKPOINT_MAGIC,
    CheckpointError,
    EnumState,
    HaltRecord,
    bit_strings,
    enumerate_programs,
    extend,
    load,
    refine,
    save,
)

from naive_vm import naive_census

EXPECTED_5_100 = """\
OMEGALAB v1
H 1 - 0
H 01000 - 1
H 01001 0 1
H 01010 1 1
FRONTIER 5 100
"""


def test_bit_strings_order():
    assert list(bit_strings(2)) == ["00", "01", "10", "11"]
    assert list(bit_strings(0)) == [""]


def test_enumerate_small_census():
    state = enumerate_programs(5, 100)
    assert {r.program for r in state.records} == {"1", "01000", "01001", "01010"}
    assert {r.output for r in state.records} == {"", "0", "1"}
    assert state.pending == frozenset()
    assert state.max_len_done == 5 and state.budget == 100


def test_enumerate_length_one():
    state = enumerate_programs(1, 100)
    assert state.records == frozenset({HaltRecord("1", "", 0)})
    assert state.pending == frozenset()


def test_enumerate_nothing():
    state = enumerate_programs(0, 100)
    assert state.records == frozenset() and state.pending == frozenset()


def test_enumerate_rejects_bad_arguments():
    with pytest.raises(ValueError):
        enumerate_programs(-1, 10)
    with pytest.raises(ValueError):
        enumerate_programs(3, -1)
    with pytest.raises(ValueError):
        enumerate_programs(3, 10, workers=0)


def test_census_matches_naive_scan():
    for max_len in (6, 8, 10):
        state = enumerate_programs(max_len, 200)
        halted, pending = naive_census(max_len, 200)
        assert {(r.program, r.output, r.steps) for r in state.records} == {
            (p, out, steps) for p, (out, steps) in halted.items()
        }
        assert set(state.pending) == pending


def test_records_monotone_in_length_and_budget():
    base = enumerate_programs(8, 50)
    assert base.records <= enumerate_programs(10, 50).records
    assert base.records <= enumerate_programs(8, 500).records


def test_refine_equals_fresh_enumeration():
    assert refine(enumerate_programs(5, 0), 100) == enumerate_programs(5, 100)
    assert refine(enumerate_programs(10, 1), 300) == enumerate_programs(10, 300)


def test_refine_with_empty_pending_only_bumps_budget():
    state = enumerate_programs(5, 100)
    refined = refine(state, 200)
    assert refined.records == state.records
    assert refined.pending == frozenset()
    assert refined.budget == 200


def test_refine_requires_strictly_larger_budget():
    state = enumerate_programs(5, 100)
    with pytest.raises(ValueError):
        refine(state, 100)
    with pytest.raises(ValueError):
        refine(state, 50)


def test_extend_matches_fresh_run():
    partial = enumerate_programs(4, 100)
    assert extend(partial, 5, 100) == enumerate_programs(5, 100)
    assert extend(partial, 10, 400) == enumerate_programs(10, 400)
    # no-op extension returns an equal state
    assert extend(partial, 4, 100) == partial


def test_extend_rejects_shrinking():
    state = enumerate_programs(5, 100)
    with pytest.raises(ValueError):
        extend(state, 4, 100)
    with pytest.raises(ValueError):
        extend(state, 6, 99)


def test_save_writes_canonical_bytes(tmp_path):
    path = tmp_path / "census.ck"
    save(enumerate_programs(5, 100), path)
    assert path.read_text() == EXPECTED_5_100


def test_save_load_round_trip(tmp_path):
    path = tmp_path / "census.ck"
    for state in (enumerate_programs(0, 5), enumerate_programs(10, 30)):
        save(state, path)
        assert load(path) == state


def test_resumed_run_equals_fresh_checkpoint(tmp_path):
    direct = tmp_path / "direct.ck"
    resumed = tmp_path / "resumed.ck"
    save(enumerate_programs(5, 100), direct)
    save(extend(load_and_save_intermediate(tmp_path), 5, 100), resumed)
    assert resumed.read_bytes() == direct.read_bytes()


def load_and_save_intermediate(tmp_path):
    middle = tmp_path / "middle.ck"
    save(enumerate_programs(4, 100), middle)
    return load(middle)


def test_save_leaves_no_temp_files(tmp_path):
    path = tmp_path / "census.ck"
    save(enumerate_programs(3, 10), path)
    save(enumerate_programs(5, 10), path)  # overwrite goes through rename
    assert [p.name for p in tmp_path.iterdir()] == ["census.ck"]


def test_load_rejects_wrong_magic(tmp_path):
    path = tmp_path / "bad.ck"
    path.write_text("OMEGALAB v2\nFRONTIER 0 0\n")
    with pytest.raises(CheckpointError, match="line 1"):
        load(path)


def test_load_names_offending_line(tmp_path):
    path = tmp_path / "bad.ck"
    path.write_text(f"{CHECKPOINT_MAGIC}\nH 1 - 0\nH zz - 1\nFRONTIER 5 100\n")
    with pytest.raises(CheckpointError, match="line 3"):
        load(path)


def test_load_rejects_missing_trailer(tmp_path):
    path = tmp_path / "bad.ck"
    path.write_text(f"{CHECKPOINT_MAGIC}\nH 1 - 0\n")
    with pytest.raises(CheckpointError, match="missing FRONTIER"):
        load(path)


def test_load_rejects_content_after_trailer(tmp_path):
    path = tmp_path / "bad.ck"
    path.write_text(f"{CHECKPOINT_MAGIC}\nFRONTIER 1 1\nH 1 - 0\n")
    with pytest.raises(CheckpointError, match="line 3"):
        load(path)


def test_load_rejects_unknown_record(tmp_path):
    path = tmp_path / "bad.ck"
    path.write_text(f"{CHECKPOINT_MAGIC}\nQ 101\nFRONTIER 1 1\n")
    with pytest.raises(CheckpointError, match="line 2"):
        load(path)


def test_parallel_enumeration_matches_serial():
    serial = enumerate_programs(7, 100)
    for workers in (2, 3):
        assert enumerate_programs(7, 100, workers=workers) == serial


def test_state_equality_is_structural():
    a = enumerate_programs(5, 100)
    b = EnumState(5, 100, a.records, a.pending)
    assert a == b
