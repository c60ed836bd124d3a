import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cozmokit import (
    BitSequence,
    LengthError,
    TriviumParams,
    UsageError,
    trivium_clock,
    trivium_keystream,
    trivium_load,
    trivium_step_matrix,
    trivium_transition_matrix,
    trivium_warmup,
)
from cozmokit.trivium import clock_bits, from_estream_hex, nonlinear_segment, to_estream_bytes
from cozmokit.vectors import TRIVIUM_ESTREAM

ZERO80 = "0" * 20


def unit_key(position):
    bits = np.zeros(80, np.uint8)
    bits[position - 1] = 1
    return BitSequence(bits)


def test_load_zero_key_iv():
    s = trivium_load(ZERO80, ZERO80)
    assert not s.s[:285].any()
    assert s.s[285:].tolist() == [1, 1, 1]
    assert s.clocks == 0


def test_load_key_bit_one():
    s = trivium_load(unit_key(1), ZERO80)
    assert s[1] == 1
    assert not s.s[1:285].any()
    assert s[286] == s[287] == s[288] == 1


def test_load_iv_bit_one():
    s = trivium_load(ZERO80, unit_key(1))
    assert s[94] == 1
    assert int(s.s[:285].sum()) == 1


def test_load_rejects_wrong_lengths():
    with pytest.raises(LengthError):
        trivium_load("00", ZERO80)
    with pytest.raises(LengthError):
        trivium_load(ZERO80, "0" * 22)


def test_first_clock_of_zero_state_outputs_one():
    state, z = trivium_clock(trivium_load(ZERO80, ZERO80))
    assert z == 1
    assert state.s.shape == (288,)
    assert state.clocks == 1


def test_clock_feedback_positions():
    state, _ = trivium_clock(trivium_load(ZERO80, ZERO80))
    assert state[1] == 0  # c = t3 ^ s286 s287 ^ s69 = 1 ^ 1 ^ 0
    assert state[94] == 0 and state[178] == 0
    assert state[287] == 1 and state[288] == 1  # s286, s287 shifted along


def test_warmup_counts_clocks():
    assert trivium_warmup(trivium_load(ZERO80, ZERO80)).clocks == 1152


def test_warmup_twice_is_usage_error():
    warmed = trivium_warmup(trivium_load(ZERO80, ZERO80))
    with pytest.raises(UsageError):
        trivium_warmup(warmed)


def test_keystream_empty():
    assert len(trivium_keystream(ZERO80, ZERO80, 0)) == 0


@pytest.mark.parametrize("vector", TRIVIUM_ESTREAM, ids=lambda v: v["name"])
def test_estream_vectors(vector):
    key = from_estream_hex(vector["key"])
    iv = from_estream_hex(vector["iv"])
    stream = trivium_keystream(key, iv, 512)
    assert to_estream_bytes(stream).hex().upper() == vector["stream_0_63"].upper()


@settings(max_examples=10, deadline=None)
@given(st.binary(min_size=10, max_size=10), st.binary(min_size=10, max_size=10))
def test_bulk_keystream_matches_single_clocks(key, iv):
    k, v = BitSequence.from_bytes(key), BitSequence.from_bytes(iv)
    state = trivium_warmup(trivium_load(k, v))
    bits = []
    for _ in range(100):
        state, z = trivium_clock(state)
        bits.append(z)
    assert trivium_keystream(k, v, 100) == BitSequence(bits)


def test_keystream_deterministic():
    key = BitSequence.from_bytes(bytes(range(10)))
    assert trivium_keystream(key, key, 2000) == trivium_keystream(key, key, 2000)


def test_params_validate():
    with pytest.raises(ValueError):
        TriviumParams(n1=60)
    with pytest.raises(ValueError):
        TriviumParams(u=(1, 2, 3))


def test_matrix_rows_have_at_most_three_ones():
    A = trivium_transition_matrix()
    assert A.shape == (288, 288)
    assert A.sum(axis=1).max() <= 3


def test_matrix_row_two_is_a_single_shift():
    A = trivium_transition_matrix()
    row = A[1]  # row 2 in 1-based terms
    assert row.sum() == 1 and row[0] == 1


def test_matrix_matches_unit_vector_probe():
    probe = np.eye(288, dtype=np.uint8)
    clock_bits(probe, nonlinear=False)
    # column j of A is the image of unit vector e_j
    assert np.array_equal(trivium_transition_matrix(), probe.T)


def test_step_matrix_zero_fixed_point():
    z = np.zeros(288, np.uint8)
    assert not trivium_step_matrix(z).any()


def test_nonlinear_segment_has_at_most_three_ones(rng):
    for _ in range(50):
        z = rng.integers(0, 2, 288, dtype=np.uint8)
        b = nonlinear_segment(z)
        assert b.sum() <= 3
        assert set(np.flatnonzero(b)) <= {0, 93, 177}


def test_step_matrix_matches_clock(rng):
    key = BitSequence(rng.integers(0, 2, 80))
    iv = BitSequence(rng.integers(0, 2, 80))
    state = trivium_load(key, iv)
    z = state.s.copy()
    direct = state.s.copy()
    for _ in range(10_000):
        clock_bits(direct)
        z = trivium_step_matrix(z)
        assert np.array_equal(direct, z)
