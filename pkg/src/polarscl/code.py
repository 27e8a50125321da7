"""Polar code construction (erasure-proxy recursion) and encoding.

A code is a block length ``n = 2^m``, a free-bit count ``k`` and a frozen mask.
Construction selects the ``n - k`` least reliable input positions with the
classic erasure-channel recursion z -> (2z - z^2, z^2) and freezes them to 0.
Encoding places message bits into the free positions in ascending index order
and applies the m-level butterfly transform in natural (non-bit-reversed)
index order; the same ordering is assumed by every decoder in this package.
"""

import math
from dataclasses import dataclass, field

import numpy as np


@dataclass(frozen=True)
class CodeSpec:
    """Definition of one polar code: block length, free bits, frozen mask."""

    n: int
    k: int
    frozen_mask: tuple  # length n, True = frozen
    free_positions: tuple = field(init=False)

    def __post_init__(self):
        if self.n < 1 or self.n & (self.n - 1):
            raise ValueError(f"n must be a power of two, got {self.n}")
        if not 1 <= self.k <= self.n:
            raise ValueError(f"k must be in [1, {self.n}], got {self.k}")
        if len(self.frozen_mask) != self.n:
            raise ValueError("frozen_mask length must equal n")
        if sum(bool(v) for v in self.frozen_mask) != self.n - self.k:
            raise ValueError("frozen_mask must freeze exactly n - k positions")
        object.__setattr__(self, "frozen_mask", tuple(bool(v) for v in self.frozen_mask))
        object.__setattr__(
            self, "free_positions", tuple(i for i in range(self.n) if not self.frozen_mask[i])
        )

    @property
    def m(self) -> int:
        return self.n.bit_length() - 1

    @property
    def rate(self) -> float:
        return self.k / self.n


def construct_frozen_set(n: int, k: int, design_z0: float = 0.5) -> CodeSpec:
    """Build a CodeSpec freezing the n - k positions with the largest erasure proxy.

    The per-position reliability proxy starts at ``design_z0`` and is expanded
    in place one level at a time, z -> (2z - z^2, z^2), so position i's value
    corresponds to reading the bits of i from most to least significant
    (0 = upper branch, 1 = lower branch).  Ties freeze the lower index.

    Parameters
    ----------
    n : int
        Block length, a power of two.
    k : int
        Number of free (message-carrying) positions, 1 <= k <= n.
    design_z0 : float
        Initial erasure proxy in (0, 1).

    Returns
    -------
    CodeSpec
    """
    if n < 1 or n & (n - 1):
        raise ValueError(f"n must be a power of two, got {n}")
    if not 1 <= k <= n:
        raise ValueError(f"k must be in [1, {n}], got {k}")
    if not 0.0 < design_z0 < 1.0:
        raise ValueError(f"design_z0 must lie in (0, 1), got {design_z0}")

    # Track ln(z): z^2 squares toward 0 fast enough to underflow a plain double
    # for n >= 1024, while 2z - z^2 = exp(ln2 + ln z + log1p(-z/2)) stays exact.
    lz = [math.log(design_z0)]
    for _ in range(n.bit_length() - 1):
        nxt = []
        for v in lz:
            nxt.append(math.log(2.0) + v + math.log1p(-0.5 * math.exp(v)))
            nxt.append(2.0 * v)
        lz = nxt

    order = sorted(range(n), key=lambda i: (-lz[i], i))
    frozen = set(order[: n - k])
    return CodeSpec(n=n, k=k, frozen_mask=tuple(i in frozen for i in range(n)))


def apply_transform(bits):
    """Apply the butterfly transform (out1 = in1 xor in2, out2 = in2) in place order.

    The transform is its own inverse mod 2; ``apply_transform(apply_transform(u))``
    returns ``u`` for any length that is a power of two.
    """
    n = len(bits)
    if n < 1 or n & (n - 1):
        raise ValueError(f"length must be a power of two, got {n}")
    x = [int(b) & 1 for b in bits]
    h = 1
    while h < n:
        for base in range(0, n, 2 * h):
            for j in range(base, base + h):
                x[j] ^= x[j + h]
        h *= 2
    return x


def apply_transform_batch(bits: np.ndarray) -> np.ndarray:
    """Vectorised ``apply_transform`` over the last axis of a uint8 array."""
    n = bits.shape[-1]
    if n < 1 or n & (n - 1):
        raise ValueError(f"length must be a power of two, got {n}")
    x = np.array(bits, dtype=np.uint8, copy=True)
    h = 1
    while h < n:
        view = x.reshape(x.shape[:-1] + (n // (2 * h), 2 * h))
        view[..., :h] ^= view[..., h:]
        h *= 2
    return x


def encode(spec: CodeSpec, message) -> list:
    """Encode ``k`` message bits into an ``n``-bit codeword.

    Message bits fill the free positions in ascending index order, frozen
    positions are 0, and the butterfly transform produces the codeword.
    """
    if len(message) != spec.k:
        raise ValueError(f"message length {len(message)} != k = {spec.k}")
    u = [0] * spec.n
    for pos, bit in zip(spec.free_positions, message):
        u[pos] = int(bit) & 1
    return apply_transform(u)


def encode_batch(spec: CodeSpec, messages: np.ndarray) -> np.ndarray:
    """Encode a (frames, k) uint8 message array into (frames, n) codewords."""
    if messages.shape[-1] != spec.k:
        raise ValueError(f"message length {messages.shape[-1]} != k = {spec.k}")
    u = np.zeros(messages.shape[:-1] + (spec.n,), dtype=np.uint8)
    u[..., list(spec.free_positions)] = messages
    return apply_transform_batch(u)


def write_frozen_mask(spec: CodeSpec, path) -> None:
    """Write the frozen-mask file: one line "n k", then n chars '0' free / '1' frozen."""
    mask = "".join("1" if f else "0" for f in spec.frozen_mask)
    with open(path, "w", encoding="ascii") as fh:
        fh.write(f"{spec.n} {spec.k}\n{mask}\n")


def read_frozen_mask(path) -> CodeSpec:
    """Read a frozen-mask file written by :func:`write_frozen_mask`."""
    with open(path, "r", encoding="ascii") as fh:
        header = fh.readline().split()
        mask_line = fh.readline().strip()
    if len(header) != 2:
        raise ValueError(f"{path}: first line must be 'n k'")
    n, k = int(header[0]), int(header[1])
    if len(mask_line) != n or set(mask_line) - {"0", "1"}:
        raise ValueError(f"{path}: mask line must be {n} characters of 0/1")
    return CodeSpec(n=n, k=k, frozen_mask=tuple(c == "1" for c in mask_line))
