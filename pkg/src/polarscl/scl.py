"""Successive-cancellation list decoding with LLR-domain path metrics.

Each survival path carries a log-domain metric: the exact update adds
``c - ln(1 + e^c)`` (bit 0) or ``-ln(1 + e^c)`` (bit 1) to the parent metric,
where ``c`` is the path's last-stage LLR for the current bit; the hardware
form drops the softplus and simply penalises a path by ``|c|`` whenever its
bit disagrees with the LLR sign.  After every free bit the 2L children are
ranked descending by metric (ties to the earlier candidate, candidates
ordered parent-first then bit 0 before bit 1) and the best L survive.  Frozen
bits keep every path's bit-0 child, still applying the metric update so paths
that contradict a frozen position are punished.
"""

import math
from dataclasses import dataclass
from typing import NamedTuple

from .code import CodeSpec
from .kernels import clamp_llr, log1pexp, resolve_kernel
from .sc import ScState
from .sortnet import select_top


def mcu_approx(m_prev: float, input_llr: float, bit: int) -> float:
    """Hard-decision metric update: unchanged when ``bit`` agrees with the sign
    of ``input_llr`` (0 with >= 0, 1 with < 0), else ``m_prev - |input_llr|``."""
    if bit:
        return m_prev - input_llr if input_llr >= 0 else m_prev
    return m_prev if input_llr >= 0 else m_prev + input_llr


def mcu_exact(m_prev: float, c: float, bit: int) -> float:
    """Exact metric update ``m + c - ln(1+e^c)`` (bit 0) / ``m - ln(1+e^c)`` (bit 1)."""
    # bit 0: m + c - ln(1+e^c) == m - ln(1+e^-c), which is the stable form.
    return m_prev - log1pexp(c) if bit else m_prev - log1pexp(-c)


_MCU = {"approx": mcu_approx, "exact": mcu_exact}


def resolve_metric_mode(mode):
    try:
        return _MCU[mode]
    except KeyError:
        raise ValueError(f"unknown metric mode {mode!r}; expected one of {sorted(_MCU)}") from None


@dataclass
class DecodePath:
    """One survival path: decided prefix, log-domain metric, private SC state."""

    prefix: list
    metric: float
    state: ScState


def _expand(paths, last_stage_llrs, is_frozen, L, mcu_fn):
    """Expand each path by one bit and keep the L best children.

    Returns (survivors, candidate_metrics); candidate c = 2 * parent + bit.
    Survivors are rank-ordered, best metric first.  A parent's first surviving
    child inherits its state object, a second surviving child gets a copy, so
    every survivor owns a private state.
    """
    if not paths:
        raise ValueError("path set must not be empty")
    if L < 1:
        raise ValueError(f"list size must be >= 1, got {L}")
    if len(last_stage_llrs) != len(paths):
        raise ValueError("need exactly one last-stage LLR per path")

    if is_frozen:
        out = [
            DecodePath(p.prefix + [0], mcu_fn(p.metric, lam, 0), p.state)
            for p, lam in zip(paths, last_stage_llrs)
        ]
        return out, [p.metric for p in out]

    cand = []
    for p, lam in zip(paths, last_stage_llrs):
        cand.append(mcu_fn(p.metric, lam, 0))
        cand.append(mcu_fn(p.metric, lam, 1))
    order = select_top(cand, L)

    spawned = [0] * len(paths)
    out = []
    for c in order:
        pi, bit = c >> 1, c & 1
        parent = paths[pi]
        state = parent.state if spawned[pi] == 0 else parent.state.copy()
        spawned[pi] += 1
        out.append(DecodePath(parent.prefix + [bit], cand[c], state))
    return out, cand


def expand_and_prune(paths, last_stage_llrs, is_frozen, L, mode="approx"):
    """One list-decoding step; see :func:`_expand` for ordering guarantees."""
    survivors, _ = _expand(paths, last_stage_llrs, is_frozen, L, resolve_metric_mode(mode))
    return survivors


def _min_adjacent_gap(values):
    ordered = sorted(values, reverse=True)
    return min(ordered[t] - ordered[t + 1] for t in range(len(ordered) - 1))


class SclResult(NamedTuple):
    message: list
    u_estimate: list
    codeword_estimate: list
    metric: float
    # Smallest spacing seen between candidate metrics across all ranking steps;
    # a frame with a tiny gap decoded through a near-tie and may legitimately
    # disagree with a reference decoder.
    min_candidate_gap: float


def scl_decode(
    spec: CodeSpec,
    channel_llrs,
    L: int,
    mode: str = "approx",
    kernel: str = "minsum",
    quant=None,
    initial_metric: float = 0.0,
) -> SclResult:
    """List-decode one frame.

    Parameters
    ----------
    spec : CodeSpec
    channel_llrs : sequence of n floats
        Clamped to +/-LLR_MAX (or quantized when ``quant`` is given).
    L : int
        List size (>= 1).
    mode : "approx" | "exact"
        Path-metric update rule.
    kernel : "minsum" | "exact"
        Check-node kernel for the component SC decoders.
    quant : QuantSpec or None
        Fixed-point datapath; requires mode="approx" and kernel="minsum",
        the only forms the integer datapath defines.
    initial_metric : float
        Starting metric of the root path (selection is shift-invariant).
    """
    if L < 1:
        raise ValueError(f"list size must be >= 1, got {L}")
    if len(channel_llrs) != spec.n:
        raise ValueError(f"expected {spec.n} channel LLRs, got {len(channel_llrs)}")

    if quant is not None:
        if mode != "approx" or kernel != "minsum":
            raise ValueError("fixed-point decoding supports only mode='approx' with kernel='minsum'")
        from .fixedpoint import fixed_ops, quantize

        f_fn, g_fn, mcu_fn = fixed_ops(quant)
        chan = [quantize(float(x), quant) for x in channel_llrs]
        initial_metric = int(initial_metric)
    else:
        f_fn, g_fn = resolve_kernel(kernel)
        mcu_fn = resolve_metric_mode(mode)
        chan = [clamp_llr(float(x)) for x in channel_llrs]

    paths = [DecodePath([], initial_metric, ScState(spec, chan, f_fn, g_fn))]
    min_gap = math.inf
    for i in range(spec.n):
        lams = [p.state.decision_llr(i) for p in paths]
        frozen = spec.frozen_mask[i]
        paths, cand = _expand(paths, lams, frozen, L, mcu_fn)
        if not frozen and len(cand) >= 2:
            min_gap = min(min_gap, _min_adjacent_gap(cand))
        for p in paths:
            p.state.update_partial_sums(i, p.prefix[-1])

    if len(paths) >= 2:
        min_gap = min(min_gap, _min_adjacent_gap([p.metric for p in paths]))
    best = max(range(len(paths)), key=lambda t: (paths[t].metric, -t))
    bp = paths[best]
    message = [bp.prefix[i] for i in spec.free_positions]
    return SclResult(message, bp.prefix, bp.state.codeword, bp.metric, min_gap)
