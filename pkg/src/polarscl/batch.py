"""Vectorised list decoding of many frames at once.

Every frame follows the identical stage-update schedule, so a whole batch can
be decoded with numpy arrays shaped (frames, list, width).  The per-frame
semantics match :func:`polarscl.scl.scl_decode` step for step: same candidate
ordering (parent index, bit 0 before bit 1), same descending selection with
ties to the earlier candidate, same frozen-bit metric update.  Path state is
duplicated by gathering along the list axis after each selection; the channel
stage is path-independent and stays broadcast at list width 1 until a g update
first touches a stage.

Survivor slots hold active paths as a rank prefix; unused slots carry a
-infinity selection key until enough forks have happened to fill the list.
"""

from dataclasses import dataclass

import numpy as np

from .code import CodeSpec
from .fixedpoint import QuantSpec, quantize_array
from .kernels import LLR_MAX
from .sortnet import build_batcher

_INT_SENTINEL = np.iinfo(np.int64).min // 4


class _FloatOps:
    metric_dtype = np.float64

    def __init__(self, kernel: str, mode: str):
        if kernel not in ("minsum", "exact"):
            raise ValueError(f"unknown kernel {kernel!r}")
        if mode not in ("approx", "exact"):
            raise ValueError(f"unknown metric mode {mode!r}")
        self.kernel = kernel
        self.mode = mode

    def prepare_channel(self, llrs):
        return np.clip(np.asarray(llrs, dtype=np.float64), -LLR_MAX, LLR_MAX)

    def f(self, a, b):
        if self.kernel == "minsum":
            m = np.minimum(np.abs(a), np.abs(b))
            return np.where((a < 0) != (b < 0), -m, m)
        return np.logaddexp(0.0, a + b) - np.logaddexp(a, b)

    def g(self, a, b, ps):
        return np.where(ps == 1, b - a, b + a)

    def mcu(self, metrics, lam, bit):
        if self.mode == "approx":
            pen = -np.maximum(lam, 0.0) if bit else np.minimum(lam, 0.0)
        else:
            pen = -np.logaddexp(0.0, lam if bit else -lam)
        return metrics + pen

    def selection_key(self, cand, cand_active):
        return np.where(cand_active, cand, -np.inf)

    def initial_metric(self):
        return 0.0


class _FixedOps:
    metric_dtype = np.int32

    def __init__(self, quant: QuantSpec):
        self.quant = quant
        self.max_code = quant.max_code

    def prepare_channel(self, llrs):
        return quantize_array(np.asarray(llrs, dtype=np.float64), self.quant)

    def f(self, a, b):
        m = np.minimum(np.abs(a), np.abs(b))
        return np.where((a < 0) != (b < 0), -m, m)

    def g(self, a, b, ps):
        s = np.where(ps == 1, b - a, b + a)
        return np.clip(s, -self.max_code, self.max_code)

    def mcu(self, metrics, lam, bit):
        pen = -np.maximum(lam, 0) if bit else np.minimum(lam, 0)
        return np.clip(metrics + pen, -self.max_code, self.max_code)

    def selection_key(self, cand, cand_active):
        return np.where(cand_active, cand.astype(np.int64), _INT_SENTINEL)

    def initial_metric(self):
        return 0


def _rank_network(keys, net):
    """Descending rank of every candidate via vectorised compare-and-swap;
    equal keys rank the smaller candidate index first."""
    idx = np.broadcast_to(np.arange(keys.shape[1]), keys.shape).copy()
    vals = keys.copy()
    for layer in net.layers:
        for a, b in layer:
            va, vb = vals[:, a], vals[:, b]
            ia, ib = idx[:, a], idx[:, b]
            swap = (vb > va) | ((vb == va) & (ib < ia))
            new_va = np.where(swap, vb, va)
            new_vb = np.where(swap, va, vb)
            new_ia = np.where(swap, ib, ia)
            new_ib = np.where(swap, ia, ib)
            vals[:, a], vals[:, b] = new_va, new_vb
            idx[:, a], idx[:, b] = new_ia, new_ib
    return idx


def _rank_lexsort(keys):
    count = keys.shape[1]
    secondary = np.broadcast_to(np.arange(count), keys.shape)
    return np.lexsort((secondary, -keys), axis=-1)


@dataclass
class BatchSclResult:
    """Per-frame decode outputs; arrays are aligned on the frame axis."""

    u_estimate: np.ndarray  # (frames, n) uint8
    message: np.ndarray  # (frames, k) uint8
    codeword_estimate: np.ndarray  # (frames, n) uint8
    metric: np.ndarray  # (frames,)
    min_candidate_gap: np.ndarray  # (frames,) float64


def scl_decode_batch(
    spec: CodeSpec,
    channel_llrs: np.ndarray,
    L: int,
    mode: str = "approx",
    kernel: str = "minsum",
    quant: QuantSpec | None = None,
    check_invariants: bool = False,
    selection: str = "auto",
) -> BatchSclResult:
    """Decode a (frames, n) LLR array; one schedule, all frames in lockstep.

    ``selection`` picks the 2L-from-L ranking implementation: "network" runs
    the Batcher compare-and-swap schedule, "lexsort" a stable comparison sort,
    "auto" the network whenever 2L is a power of two.  Both produce the same
    ranking for every input, so results never depend on this switch.
    """
    llrs = np.asarray(channel_llrs, dtype=np.float64)
    if llrs.ndim != 2 or llrs.shape[1] != spec.n:
        raise ValueError(f"expected an array of shape (frames, {spec.n})")
    if L < 1:
        raise ValueError(f"list size must be >= 1, got {L}")

    if quant is not None:
        if mode != "approx" or kernel != "minsum":
            raise ValueError("fixed-point decoding supports only mode='approx' with kernel='minsum'")
        ops = _FixedOps(quant)
    else:
        ops = _FloatOps(kernel, mode)

    two_l = 2 * L
    network_ok = two_l >= 2 and two_l & (two_l - 1) == 0
    if selection == "auto":
        use_network = network_ok
    elif selection == "network":
        if not network_ok:
            raise ValueError(f"2L = {two_l} is not a power of two; no Batcher network")
        use_network = True
    elif selection == "lexsort":
        use_network = False
    else:
        raise ValueError(f"unknown selection {selection!r}")
    net = build_batcher(two_l) if use_network else None

    B, n, m = llrs.shape[0], spec.n, spec.m
    chan = ops.prepare_channel(llrs)

    stages = [chan[:, None, :]] + [None] * m  # stage d: (B, 1 or L, n >> d)
    psum = [None] + [np.zeros((B, L, n >> d), dtype=np.uint8) for d in range(1, m + 1)]
    metrics = np.full((B, L), ops.initial_metric(), dtype=ops.metric_dtype)
    active = np.zeros((B, L), dtype=bool)
    active[:, 0] = True
    decisions = np.zeros((n, B, L), dtype=np.uint8)
    parents = np.zeros((n, B, L), dtype=np.int16)
    min_gap = np.full(B, np.inf)
    codewords = None
    rows = np.arange(B)
    slot_idx = np.arange(L, dtype=np.int16)

    def absorb(i, bits):
        # Mirrors ScState.update_partial_sums across the whole batch.
        val = bits[:, :, None].astype(np.uint8)
        d, node = m, i
        while d > 0 and node & 1:
            val = np.concatenate([psum[d] ^ val, val], axis=2)
            node >>= 1
            d -= 1
        if d > 0:
            psum[d] = val
            return None
        return val  # (B, L, n): transform of all decided bits

    for i in range(n):
        if i == 0:
            lo = 1
        else:
            t = (i & -i).bit_length() - 1
            lo = m - t
            src = stages[lo - 1]
            half = src.shape[2] // 2
            stages[lo] = ops.g(src[:, :, :half], src[:, :, half:], psum[lo])
            lo += 1
        for d in range(lo, m + 1):
            src = stages[d - 1]
            half = src.shape[2] // 2
            stages[d] = ops.f(src[:, :, :half], src[:, :, half:])

        lam = stages[m][:, :, 0]
        if lam.shape[1] == 1:
            lam = np.broadcast_to(lam, (B, L))

        if spec.frozen_mask[i]:
            new_metrics = ops.mcu(metrics, lam, 0)
            if check_invariants and not np.all(new_metrics <= metrics):
                raise AssertionError("metric increased on a frozen-bit update")
            metrics = new_metrics
            decisions[i] = 0
            parents[i] = slot_idx
            cw = absorb(i, np.zeros((B, L), dtype=np.uint8))
        else:
            cand = np.empty((B, two_l), dtype=ops.metric_dtype)
            cand[:, 0::2] = ops.mcu(metrics, lam, 0)
            cand[:, 1::2] = ops.mcu(metrics, lam, 1)
            if check_invariants:
                expanded = np.repeat(metrics, 2, axis=1)
                if not np.all(cand <= expanded):
                    raise AssertionError("metric increased on a path expansion")
            cand_active = np.repeat(active, 2, axis=1)
            keys = ops.selection_key(cand, cand_active)
            perm = _rank_network(keys, net) if use_network else _rank_lexsort(keys)

            svals = np.take_along_axis(cand, perm, axis=1).astype(np.float64)
            sact = np.take_along_axis(cand_active, perm, axis=1)
            both = sact[:, :-1] & sact[:, 1:]
            diffs = np.where(both, svals[:, :-1] - svals[:, 1:], np.inf)
            min_gap = np.minimum(min_gap, diffs.min(axis=1))

            order = perm[:, :L]
            par = (order >> 1).astype(np.int16)
            bits = (order & 1).astype(np.uint8)
            metrics = np.take_along_axis(cand, order, axis=1)
            active = np.take_along_axis(cand_active, order, axis=1)
            gather = par[:, :, None]
            for d in range(1, m + 1):
                if stages[d].shape[1] != 1:
                    stages[d] = np.take_along_axis(stages[d], gather, axis=1)
                psum[d] = np.take_along_axis(psum[d], gather, axis=1)
            decisions[i] = bits
            parents[i] = par
            cw = absorb(i, bits)

        if cw is not None:
            codewords = cw

    final = np.where(active, metrics.astype(np.float64), -np.inf)
    best = np.argmax(final, axis=1)  # first maximum: earlier slot wins ties
    if L >= 2:
        sfin = -np.sort(-final, axis=1)
        both = np.isfinite(sfin[:, :-1]) & np.isfinite(sfin[:, 1:])
        diffs = np.where(both, sfin[:, :-1] - sfin[:, 1:], np.inf)
        min_gap = np.minimum(min_gap, diffs.min(axis=1))

    u = np.zeros((B, n), dtype=np.uint8)
    sel = best.astype(np.int64)
    for i in range(n - 1, -1, -1):
        u[:, i] = decisions[i][rows, sel]
        sel = parents[i][rows, sel]

    message = u[:, list(spec.free_positions)]
    codeword = codewords[rows, best]
    metric = metrics[rows, best]
    return BatchSclResult(u, message, codeword, metric, min_gap)
