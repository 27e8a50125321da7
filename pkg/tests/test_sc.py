import numpy as np
import pytest

from helpers import noisy_frames
from polarscl.code import apply_transform, construct_frozen_set, encode
from polarscl.kernels import LLR_MAX, f_exact, f_minsum, g
from polarscl.oracle import llr_to_pair, sc_decode_lik
from polarscl.sc import ScState, sc_decode
from polarscl.scl import scl_decode


def _state(spec, llrs, kernel=f_minsum):
    return ScState(spec, list(llrs), kernel, g)


def test_llr_store_is_2n_minus_1():
    for n in (2, 8, 64, 256):
        spec = construct_frozen_set(n, n // 2)
        state = _state(spec, [0.0] * n)
        assert state.llr_slot_count == 2 * n - 1
        assert sum(len(row) for row in state.psum[1:]) == n - 1


def test_n2_hand_trace():
    spec = construct_frozen_set(2, 1)  # position 1 frozen
    state = _state(spec, [-1.0, 3.0])
    assert state.decision_llr(0) == f_minsum(-1.0, 3.0) == -1.0
    state.update_partial_sums(0, 0)  # frozen bit forced to 0
    assert state.decision_llr(1) == g(-1.0, 3.0, 0) == 2.0
    result = sc_decode(spec, [-1.0, 3.0])
    assert result.u_estimate == [0, 0]
    assert result.message == [0]
    assert result.codeword_estimate == [0, 0]


def test_partial_sums_track_transform_of_prefix():
    spec = construct_frozen_set(4, 4)
    state = _state(spec, [1.0, 1.0, 1.0, 1.0])
    state.decision_llr(0)
    state.update_partial_sums(0, 1)
    state.decision_llr(1)
    state.update_partial_sums(1, 0)
    # after absorbing prefix (1, 0): stage-1 sums feed the next g activations
    assert state.psum[1] == apply_transform([1, 0]) == [1, 0]


def test_all_zero_prefix_gives_zero_partial_sums():
    spec = construct_frozen_set(8, 8)
    state = _state(spec, [1.0] * 8)
    for i in range(5):
        state.decision_llr(i)
        state.update_partial_sums(i, 0)
    assert all(all(b == 0 for b in row) for row in state.psum[1:])


def test_channel_stage_sums_equal_encode_after_all_bits():
    rng = np.random.default_rng(10)
    spec = construct_frozen_set(16, 16)
    for _ in range(20):
        u = list(rng.integers(0, 2, size=16))
        state = _state(spec, list(rng.normal(size=16)))
        for i in range(16):
            state.decision_llr(i)
            state.update_partial_sums(i, u[i])
        assert state.codeword == apply_transform(u)


def test_out_of_order_updates_raise():
    spec = construct_frozen_set(4, 4)
    state = _state(spec, [1.0] * 4)
    with pytest.raises(ValueError):
        state.update_partial_sums(1, 0)
    state.decision_llr(0)
    state.update_partial_sums(0, 0)
    with pytest.raises(ValueError):
        state.decision_llr(0)
    with pytest.raises(ValueError):
        state.update_partial_sums(2, 0)


def test_copy_is_private():
    spec = construct_frozen_set(4, 4)
    a = _state(spec, [1.0, -2.0, 3.0, -4.0])
    a.decision_llr(0)
    b = a.copy()
    a.update_partial_sums(0, 1)
    b.update_partial_sums(0, 0)
    assert a.psum[2] != b.psum[2]


def test_sc_decode_validates_length():
    spec = construct_frozen_set(4, 2)
    with pytest.raises(ValueError):
        sc_decode(spec, [1.0, 2.0])


def test_all_positive_llrs_decode_to_zero():
    spec = construct_frozen_set(4, 2)
    result = sc_decode(spec, [10.0, 10.0, 10.0, 10.0])
    assert result.message == [0, 0]
    assert result.codeword_estimate == [0, 0, 0, 0]


@pytest.mark.parametrize("kernel", ("minsum", "exact"))
def test_noiseless_recovery(kernel):
    rng = np.random.default_rng(11)
    for n in (2, 8, 32, 256):
        spec = construct_frozen_set(n, max(1, n // 2))
        for _ in range(10):
            msg = list(rng.integers(0, 2, size=spec.k))
            llrs = [(1 - 2 * b) * LLR_MAX for b in encode(spec, msg)]
            assert sc_decode(spec, llrs, kernel=kernel).message == msg


def test_sc_matches_likelihood_oracle():
    # exact kernel, bit-for-bit, excluding frames where any decision is a tie
    spec = construct_frozen_set(4, 2)
    rng = np.random.default_rng(12)
    checked = 0
    for _ in range(1000):
        llrs = list(rng.normal(0, 3, size=4))
        state = ScState(spec, llrs, f_exact, g)
        u, tie = [], False
        for i in range(4):
            lam = state.decision_llr(i)
            tie = tie or abs(lam) <= 1e-9
            bit = 0 if (spec.frozen_mask[i] or lam >= 0) else 1
            u.append(bit)
            state.update_partial_sums(i, bit)
        if tie:
            continue
        ref = sc_decode_lik(spec, [llr_to_pair(x) for x in llrs])
        assert ref.u_estimate == u == sc_decode(spec, llrs, kernel="exact").u_estimate
        checked += 1
    assert checked > 900


@pytest.mark.parametrize("kernel", ("minsum", "exact"))
def test_scl_list_one_degenerates_to_sc(kernel):
    spec = construct_frozen_set(32, 16)
    _, llrs = noisy_frames(spec, 2.0, 200, seed=13)
    for row in llrs:
        a = sc_decode(spec, list(row), kernel=kernel)
        b = scl_decode(spec, list(row), 1, mode="approx", kernel=kernel)
        assert a.u_estimate == b.u_estimate
        assert a.codeword_estimate == b.codeword_estimate
