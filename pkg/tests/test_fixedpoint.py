import numpy as np
import pytest

from polarscl.fixedpoint import (
    QuantSpec,
    c2s,
    dequantize,
    f_minsum_fixed,
    g_fixed,
    mcu_approx_fixed,
    quantize,
    quantize_array,
    s2c,
    sat_add,
)
from polarscl.kernels import LLR_MAX, f_minsum
from polarscl.simulation import SimConfig, run_monte_carlo


def test_quantspec_defaults_and_validation():
    spec = QuantSpec(6)
    assert spec.max_code == 31
    assert spec.scale == pytest.approx(LLR_MAX / 31)
    assert QuantSpec(4, 0.25).scale == 0.25
    with pytest.raises(ValueError):
        QuantSpec(1)
    with pytest.raises(ValueError):
        QuantSpec(6, -1.0)


def test_c2s_examples():
    assert c2s(0, 4) == (0, 0)
    assert c2s(-3, 4) == (1, 3)
    assert c2s(7, 4) == (0, 7)
    with pytest.raises(ValueError):
        c2s(8, 4)


def test_s2c_overflow():
    assert s2c(1, 3, 4) == -3
    assert s2c(0, 0, 4) == 0
    with pytest.raises(ValueError):
        s2c(0, 8, 4)


@pytest.mark.parametrize("q", range(2, 9))
def test_round_trip_exhaustive(q):
    limit = (1 << (q - 1)) - 1
    for code in range(-limit, limit + 1):
        assert s2c(*c2s(code, q), q) == code


def test_sat_add_examples():
    assert sat_add(7, 3, 4) == 7
    assert sat_add(-7, -5, 4) == -7
    assert sat_add(2, 3, 4) == 5


def test_sat_add_monotone_exhaustive_q4():
    codes = range(-7, 8)
    for a in codes:
        for b in codes:
            assert sat_add(a, b, 4) <= sat_add(a, b + 1, 4) if b < 7 else True
            if a < 7:
                assert sat_add(a, b, 4) <= sat_add(a + 1, b, 4)


def test_quantize_examples():
    spec = QuantSpec(6, 1.0)
    assert quantize(0.0, spec) == 0
    assert quantize(100.0, spec) == 31
    assert quantize(-100.0, spec) == -31
    # ties away from zero
    assert quantize(2.5, spec) == 3
    assert quantize(-2.5, spec) == -3
    half = QuantSpec(6, 0.5)
    assert quantize(1.25, half) == 3
    assert quantize(-1.25, half) == -3
    assert dequantize(3, half) == 1.5


def test_quantize_array_matches_scalar():
    spec = QuantSpec(6, 0.5)
    rng = np.random.default_rng(39)
    xs = rng.uniform(-40, 40, size=500)
    arr = quantize_array(xs, spec)
    for x, code in zip(xs, arr):
        assert quantize(float(x), spec) == int(code)


def test_fixed_minsum_matches_float_image_exhaustive():
    # q = 6 codes, scale-equivariant kernel: no saturation can occur
    spec = QuantSpec(6, 0.5)
    for a in range(-31, 32):
        for b in range(-31, 32):
            got = f_minsum_fixed(a, b)
            want = quantize(f_minsum(dequantize(a, spec), dequantize(b, spec)), spec)
            assert got == want


def test_g_fixed_saturates():
    spec = QuantSpec(4)
    assert g_fixed(3, 5, 0, spec) == 7  # 8 clamps to 7
    assert g_fixed(3, 5, 1, spec) == 2
    assert g_fixed(5, -4, 1, spec) == -7  # -9 clamps to -7


def test_mcu_fixed_examples():
    spec = QuantSpec(6)
    assert mcu_approx_fixed(-1, 3, 1, spec) == -4
    assert mcu_approx_fixed(-1, 3, 0, spec) == -1
    assert mcu_approx_fixed(-1, -3, 0, spec) == -4
    assert mcu_approx_fixed(-30, -5, 0, spec) == -31  # saturates at the floor
    for bit in (0, 1):
        assert mcu_approx_fixed(-2, 0, bit, spec) == -2


def test_quantized_fer_within_two_tenths_db_of_float():
    # q = 6 at EbN0 must not be worse than floating point 0.2 dB earlier
    base = dict(n=128, k=64, L=4, max_frames=4000, seed=20240801, mode="approx", kernel="minsum")
    floating = run_monte_carlo(SimConfig(snr_points_db=(2.3,), **base))
    fixed = run_monte_carlo(SimConfig(snr_points_db=(2.5,), q=6, **base))
    f, x = floating.points[0], fixed.points[0]
    slack = (f.ci_high - f.ci_low) / 2 + (x.ci_high - x.ci_low) / 2
    assert x.fer <= f.fer + slack
