"""Batcher odd-even merge sorting networks with layer/depth statistics.

Networks are built for power-of-two input counts and sort DESCENDING: a
comparator (i, j) with i < j moves the larger value to position i, and swaps
only on strict inequality so equal keys never move.  For 2^i inputs the layer
count (critical path in compare-and-swap units) is i(i+1)/2.
"""

from dataclasses import dataclass
from functools import lru_cache


@dataclass(frozen=True)
class ComparatorNetwork:
    """A layered compare-and-swap schedule; pairs within a layer are disjoint."""

    size: int
    layers: tuple  # tuple of layers, each a tuple of (i, j) pairs with i < j

    @property
    def comparator_count(self) -> int:
        return sum(len(layer) for layer in self.layers)

    @property
    def depth(self) -> int:
        return len(self.layers)


def depth_formula(i: int) -> int:
    """Critical path of a 2^i-input odd-even merge sorter, in C&S delays: i(i+1)/2."""
    if i < 1:
        raise ValueError(f"log2 size must be >= 1, got {i}")
    return i * (i + 1) // 2


@lru_cache(maxsize=None)
def build_batcher(size: int) -> ComparatorNetwork:
    """Construct the odd-even mergesort network for a power-of-two input count.

    Uses the classic merge-exchange index schedule: for p = 1, 2, 4, ... and
    k = p, p/2, ..., 1, one layer of comparators (i+j, i+j+k) restricted to
    pairs lying in the same 2p-block.  Each (p, k) pair is one parallel layer,
    which yields exactly i(i+1)/2 layers for size 2^i.
    """
    if size < 2 or size & (size - 1):
        raise ValueError(f"network size must be a power of two >= 2, got {size}")
    layers = []
    p = 1
    while p < size:
        k = p
        while k >= 1:
            layer = []
            j = k % p
            while j <= size - 1 - k:
                for i in range(min(k, size - j - k)):
                    if (i + j) // (2 * p) == (i + j + k) // (2 * p):
                        layer.append((i + j, i + j + k))
                j += 2 * k
            layers.append(tuple(layer))
            k //= 2
        p *= 2
    net = ComparatorNetwork(size=size, layers=tuple(layers))
    assert net.depth == depth_formula(size.bit_length() - 1)
    return net


def apply_network(net: ComparatorNetwork, values):
    """Run ``values`` through the network; returns (descending values, permutation).

    ``permutation[r]`` is the original index of the value placed at rank ``r``.
    Equal keys keep whatever order the swap-on-strict-inequality convention
    induces; callers needing a total order should pass keys that never compare
    equal (see :func:`select_top`).  Values may be any mutually comparable
    type, e.g. tuples.
    """
    if len(values) != net.size:
        raise ValueError(f"expected {net.size} values, got {len(values)}")
    vals = list(values)
    perm = list(range(net.size))
    for layer in net.layers:
        for i, j in layer:
            if vals[j] > vals[i]:
                vals[i], vals[j] = vals[j], vals[i]
                perm[i], perm[j] = perm[j], perm[i]
    return vals, perm


def select_top(metrics, count: int):
    """Indices of the ``count`` largest metrics, best first, ties to the lower index.

    Uses the Batcher network when the candidate count is a power of two (the
    list decoder's 2L-from-L selection), otherwise an ordinary sort; both give
    the identical ranking because the composite (metric, -index) keys are
    strictly totally ordered.
    """
    total = len(metrics)
    if count < 1:
        raise ValueError(f"count must be >= 1, got {count}")
    if total >= 2 and total & (total - 1) == 0:
        keys = [(m, -i) for i, m in enumerate(metrics)]
        _, perm = apply_network(build_batcher(total), keys)
        return perm[: min(count, total)]
    order = sorted(range(total), key=lambda i: (-metrics[i], i))
    return order[: min(count, total)]


def format_network(net: ComparatorNetwork) -> str:
    """Plain-text description: header plus one line of index pairs per layer."""
    lines = [f"size {net.size}  comparators {net.comparator_count}  depth {net.depth}"]
    for idx, layer in enumerate(net.layers):
        pairs = " ".join(f"({i},{j})" for i, j in layer)
        lines.append(f"layer {idx}: {pairs}")
    return "\n".join(lines)
