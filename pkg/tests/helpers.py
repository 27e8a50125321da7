"""Shared test fixtures: seeded noisy frames through the real channel model."""

import numpy as np

from polarscl.code import CodeSpec, encode_batch
from polarscl.simulation import bpsk_awgn_llrs, frame_rng


def noisy_frames(spec: CodeSpec, ebn0_db: float, count: int, seed: int):
    """(messages, llrs) for ``count`` transmitted frames at one SNR point."""
    msgs = np.zeros((count, spec.k), dtype=np.uint8)
    llrs = np.empty((count, spec.n), dtype=np.float64)
    rate = spec.k / spec.n
    for j in range(count):
        rng = frame_rng(seed, 0, j)
        msgs[j] = rng.integers(0, 2, size=spec.k, dtype=np.uint8)
        llrs[j] = bpsk_awgn_llrs(encode_batch(spec, msgs[j : j + 1])[0], ebn0_db, rate, rng)
    return msgs, llrs
