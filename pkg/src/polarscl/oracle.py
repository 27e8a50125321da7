"""Likelihood-domain reference decoders.

These mirror the LLR decoders but carry two-number joint-probability messages
(p0, p1) through the same stage schedule, so every LLR-side quantity has an
independent likelihood-side image: check node (a0 b0 + a1 b1, a0 b1 + a1 b0),
variable node (a_us b0, a_(1-us) b1), hard decision 0 iff p0 >= p1 or frozen.
The last-stage pair for bit i IS the joint probability of the decided prefix,
so list decoding ranks candidates directly on those values.

This module exists to verify the LLR path and is deliberately plain Python.
Underflow control is global, never per-path (per-path scaling would corrupt
cross-path comparisons): channel pairs are normalised per pair at ingest,
which multiplies every path metric by one common constant, and survivor
metrics are reported both raw and relative to the step's best path.  The raw
intermediate products stay comfortably inside double range for the
desk-scale block lengths this oracle is meant for (n <= 32 or so).
"""

import itertools
import math
from typing import NamedTuple

from .code import CodeSpec, apply_transform
from .sc import ScState
from .sortnet import select_top

BRUTE_FORCE_MAX_N = 20


def _check_pair(pair):
    p0, p1 = pair
    if p0 < 0 or p1 < 0 or p0 + p1 <= 0:
        raise ValueError(f"invalid likelihood pair {pair!r}")
    return float(p0), float(p1)


def f_lik(a, b):
    """Check-node combine of two joint-probability pairs."""
    return (a[0] * b[0] + a[1] * b[1], a[0] * b[1] + a[1] * b[0])


def g_lik(a, b, u_sum):
    """Variable-node combine given the partial sum of decided bits."""
    if u_sum:
        return (a[1] * b[0], a[0] * b[1])
    return (a[0] * b[0], a[1] * b[1])


def h_decide(a, frozen: bool) -> int:
    """Hard decision: 0 when frozen or p0 >= p1, else 1."""
    return 0 if frozen or a[0] >= a[1] else 1


def pair_to_llr(pair) -> float:
    return math.log(pair[0] / pair[1])


def llr_to_pair(llr: float):
    """A (p0, p1) image of an LLR with p0 + p1 = 1."""
    p0 = 1.0 / (1.0 + math.exp(-llr))
    return (p0, 1.0 - p0)


def _normalized_pairs(channel_pairs):
    out = []
    for pair in channel_pairs:
        p0, p1 = _check_pair(pair)
        mx = max(p0, p1)
        out.append((p0 / mx, p1 / mx))
    return out


def make_state(spec: CodeSpec, channel_pairs) -> ScState:
    """Likelihood-domain decode state: the SC stage machinery over pair messages."""
    return ScState(spec, _normalized_pairs(channel_pairs), f_lik, g_lik)


class ScLikResult(NamedTuple):
    message: list
    u_estimate: list
    codeword_estimate: list
    metric: float  # joint probability of the decided path (normalised channel)


def sc_decode_lik(spec: CodeSpec, channel_pairs) -> ScLikResult:
    """Successive cancellation in the likelihood domain (list size 1)."""
    if len(channel_pairs) != spec.n:
        raise ValueError(f"expected {spec.n} channel pairs, got {len(channel_pairs)}")
    state = make_state(spec, channel_pairs)
    u = []
    metric = 1.0
    for i in range(spec.n):
        pair = state.decision_llr(i)
        bit = h_decide(pair, spec.frozen_mask[i])
        metric = pair[bit]
        u.append(bit)
        state.update_partial_sums(i, bit)
    message = [u[i] for i in spec.free_positions]
    return ScLikResult(message, u, state.codeword, metric)


class _LikPath:
    __slots__ = ("prefix", "metric", "state")

    def __init__(self, prefix, metric, state):
        self.prefix = prefix
        self.metric = metric
        self.state = state


class SclLikResult(NamedTuple):
    message: list
    u_estimate: list
    codeword_estimate: list
    metric: float  # raw joint probability of the winning path
    metric_normalized: float  # same, divided by the best survivor metric
    survivors: list  # (prefix, raw metric, normalized metric), best first


def scl_decode_lik(spec: CodeSpec, channel_pairs, L: int) -> SclLikResult:
    """Likelihood-domain list decoding with the same candidate ordering and
    tie rule as the LLR list decoder (parent index, bit 0 first, ties to the
    earlier candidate).

    Candidate metrics are the fresh last-stage pair values, which already
    carry the whole prefix's joint probability, so comparisons happen on one
    common scale and any normalisation shared by all paths cancels out.
    """
    if L < 1:
        raise ValueError(f"list size must be >= 1, got {L}")
    if len(channel_pairs) != spec.n:
        raise ValueError(f"expected {spec.n} channel pairs, got {len(channel_pairs)}")

    paths = [_LikPath([], 1.0, make_state(spec, channel_pairs))]
    for i in range(spec.n):
        pairs = [p.state.decision_llr(i) for p in paths]
        if spec.frozen_mask[i]:
            for p, pair in zip(paths, pairs):
                p.prefix = p.prefix + [0]
                p.metric = pair[0]
        else:
            cand = []
            for pair in pairs:
                cand.append(pair[0])
                cand.append(pair[1])
            order = select_top(cand, L)
            spawned = [0] * len(paths)
            nxt = []
            for c in order:
                parent = paths[c >> 1]
                bit = c & 1
                state = parent.state if spawned[c >> 1] == 0 else parent.state.copy()
                spawned[c >> 1] += 1
                nxt.append(_LikPath(parent.prefix + [bit], cand[c], state))
            paths = nxt
        for p in paths:
            p.state.update_partial_sums(i, p.prefix[-1])

    best = max(range(len(paths)), key=lambda t: (paths[t].metric, -t))
    bp = paths[best]
    top = bp.metric  # largest by construction of the final selection
    survivors = [(p.prefix, p.metric, p.metric / top if top > 0 else 0.0) for p in paths]
    message = [bp.prefix[i] for i in spec.free_positions]
    return SclLikResult(
        message, bp.prefix, bp.state.codeword, bp.metric, survivors[best][2], survivors
    )


class BruteForceResult(NamedTuple):
    u_estimate: list
    metric: float


def brute_force_best_path(spec: CodeSpec, channel_pairs) -> BruteForceResult:
    """Exhaustive maximiser over all frozen-consistent bit sequences.

    The metric of a complete path u is computed in product form — transform u
    to its codeword x and multiply channel_pairs[j][x_j] — which never touches
    the f/g recursion and therefore checks it independently.  Ties go to the
    lexicographically smallest u.  Exponential in k; refuses n > 20.
    """
    if spec.n > BRUTE_FORCE_MAX_N:
        raise ValueError(f"brute force limited to n <= {BRUTE_FORCE_MAX_N}, got {spec.n}")
    if len(channel_pairs) != spec.n:
        raise ValueError(f"expected {spec.n} channel pairs, got {len(channel_pairs)}")
    pairs = _normalized_pairs(channel_pairs)

    best_u = None
    best_metric = -1.0
    u = [0] * spec.n
    for msg in itertools.product((0, 1), repeat=spec.k):
        for pos, bit in zip(spec.free_positions, msg):
            u[pos] = bit
        x = apply_transform(u)
        metric = 1.0
        for j in range(spec.n):
            metric *= pairs[j][x[j]]
        if metric > best_metric:  # strict: the first (lex smallest) u wins ties
            best_metric = metric
            best_u = u[:]
    return BruteForceResult(best_u, best_metric)
