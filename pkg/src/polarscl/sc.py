"""Successive cancellation decoding with stage-organised LLR/partial-sum state.

The decoder walks bits u_1..u_n in order.  For bit i it lazily recomputes only
the stage buffers that changed: a g-update at depth m - trailing_zeros(i)
followed by f-updates down to the decision stage.  Stage d holds n/2^d values,
so the whole LLR store is exactly 2n - 1 slots; partial sums hold the
butterfly transform of each completed left subtree, n - 1 bits in total.
"""

from typing import NamedTuple

from .code import CodeSpec
from .kernels import clamp_llr, resolve_kernel


class ScState:
    """Intermediate state of one successive-cancellation decode.

    One decode owns its state exclusively; bits must be absorbed in index
    order.  ``copy()`` yields a fully private duplicate, which is how the list
    decoder forks paths.
    """

    __slots__ = ("spec", "f", "g", "llr", "psum", "next_bit", "codeword")

    def __init__(self, spec: CodeSpec, stage0_values, f, g):
        if len(stage0_values) != spec.n:
            raise ValueError(f"expected {spec.n} channel values, got {len(stage0_values)}")
        self.spec = spec
        self.f = f
        self.g = g
        self.llr = [list(stage0_values)]
        w = spec.n
        while w > 1:
            w //= 2
            self.llr.append([0.0] * w)
        self.psum = [None] + [[0] * (spec.n >> d) for d in range(1, spec.m + 1)]
        self.next_bit = 0
        self.codeword = None  # set once all n bits are absorbed

    @property
    def llr_slot_count(self) -> int:
        return sum(len(row) for row in self.llr)

    def copy(self) -> "ScState":
        new = object.__new__(ScState)
        new.spec = self.spec
        new.f = self.f
        new.g = self.g
        new.llr = [row[:] for row in self.llr]
        new.psum = [None] + [row[:] for row in self.psum[1:]]
        new.next_bit = self.next_bit
        new.codeword = None if self.codeword is None else self.codeword[:]
        return new

    def _compute_stage(self, d: int, use_g: bool) -> None:
        src = self.llr[d - 1]
        dst = self.llr[d]
        half = len(dst)
        if use_g:
            g = self.g
            ps = self.psum[d]
            for j in range(half):
                dst[j] = g(src[j], src[j + half], ps[j])
        else:
            f = self.f
            for j in range(half):
                dst[j] = f(src[j], src[j + half])

    def decision_llr(self, i: int) -> float:
        """Last-stage LLR for bit ``i``; bits must be visited in order."""
        if i != self.next_bit:
            raise ValueError(f"bit {i} out of order; next expected bit is {self.next_bit}")
        m = self.spec.m
        if i == 0:
            for d in range(1, m + 1):
                self._compute_stage(d, use_g=False)
        else:
            t = (i & -i).bit_length() - 1  # trailing zeros of i
            d0 = m - t
            self._compute_stage(d0, use_g=True)
            for d in range(d0 + 1, m + 1):
                self._compute_stage(d, use_g=False)
        return self.llr[m][0]

    def update_partial_sums(self, i: int, bit: int) -> None:
        """Absorb decided bit ``i``, keeping every stage's partial sums equal to
        the butterfly transform of the decided bits feeding it."""
        if i != self.next_bit:
            raise ValueError(f"bit {i} out of order; next expected bit is {self.next_bit}")
        val = [int(bit) & 1]
        d = self.spec.m
        node = i
        # Completed right subtrees merge upward: parent transform is
        # (left xor right, right); a completed left subtree is stored for
        # the parent's forthcoming g stage.
        while d > 0 and node & 1:
            left = self.psum[d]
            val = [a ^ b for a, b in zip(left, val)] + val
            node >>= 1
            d -= 1
        if d > 0:
            self.psum[d] = val
        else:
            self.codeword = val  # transform of all n decided bits
        self.next_bit = i + 1


class ScResult(NamedTuple):
    message: list
    u_estimate: list
    codeword_estimate: list


def sc_decode(spec: CodeSpec, channel_llrs, kernel="minsum") -> ScResult:
    """Decode one frame with plain successive cancellation (list size 1).

    Frozen bits are forced to 0; a free bit decodes to 0 iff its last-stage
    LLR is >= 0.  Returns the free-position bits as the message, the full
    decided u vector, and its re-encoded codeword.

    Parameters
    ----------
    spec : CodeSpec
    channel_llrs : sequence of n floats
        Channel LLRs; clamped to +/-LLR_MAX at ingest.
    kernel : "minsum" | "exact" or an (f, g) callable pair
    """
    if len(channel_llrs) != spec.n:
        raise ValueError(f"expected {spec.n} channel LLRs, got {len(channel_llrs)}")
    f_fn, g_fn = resolve_kernel(kernel)
    state = ScState(spec, [clamp_llr(float(x)) for x in channel_llrs], f_fn, g_fn)
    u = []
    for i in range(spec.n):
        lam = state.decision_llr(i)
        bit = 0 if (spec.frozen_mask[i] or lam >= 0.0) else 1
        u.append(bit)
        state.update_partial_sums(i, bit)
    message = [u[i] for i in spec.free_positions]
    return ScResult(message, u, state.codeword)
