"""LLR-domain check/variable kernels for the polar decoding butterfly.

All soft messages are log-likelihood ratios ln(Pr(bit=0, event) / Pr(bit=1, event));
positive values favour bit 0.  Channel LLRs are clamped to +/-LLR_MAX at ingest so
that noiseless inputs never produce infinities downstream.
"""

import math

# |LLR| cap.  e^-30 ~ 1e-13, numerically indistinguishable from certainty.
LLR_MAX = 30.0


def clamp_llr(x: float) -> float:
    """Clamp an LLR into [-LLR_MAX, +LLR_MAX] (maps +/-inf onto the rails)."""
    if x > LLR_MAX:
        return LLR_MAX
    if x < -LLR_MAX:
        return -LLR_MAX
    return float(x)


def log1pexp(x: float) -> float:
    """ln(1 + e^x), overflow-safe for any finite x."""
    if x > 0.0:
        return x + math.log1p(math.exp(-x))
    return math.log1p(math.exp(x))


def f_minsum(a: float, b: float) -> float:
    """Min-sum check-node kernel: sign(a) sign(b) min(|a|, |b|).

    sign(0) counts as +1, so a zero input always yields 0 with positive sign,
    matching the hard-decision convention that an LLR of exactly 0 decodes to 0.
    """
    m = min(abs(a), abs(b))
    return -m if (a < 0.0) != (b < 0.0) else m


def f_exact(a: float, b: float) -> float:
    """Exact check-node kernel 2 atanh(tanh(a/2) tanh(b/2)).

    Evaluated as ln((1 + e^(a+b)) / (e^a + e^b)) with log-sum-exp guards; the
    tanh composition loses all precision once |a| or |b| exceeds ~20.
    """
    # ln(1 + e^(a+b)) - ln(e^a + e^b)
    hi = max(a, b)
    return log1pexp(a + b) - (hi + math.log1p(math.exp(-abs(a - b))))


def g(a: float, b: float, u_sum: int) -> float:
    """Variable-node kernel a * (-1)^u_sum + b.

    ``u_sum`` is the XOR of the already-decided bits feeding this node: the sign
    of the first argument flips when that partial sum is 1.
    """
    return b - a if u_sum else b + a


# Kernel pairs usable by the decoders, keyed by the CLI/configuration names.
KERNELS = {
    "minsum": (f_minsum, g),
    "exact": (f_exact, g),
}


def resolve_kernel(kernel):
    """Map a kernel name (or an (f, g) pair) to callables."""
    if isinstance(kernel, str):
        try:
            return KERNELS[kernel]
        except KeyError:
            raise ValueError(f"unknown kernel {kernel!r}; expected one of {sorted(KERNELS)}") from None
    f_fn, g_fn = kernel
    return f_fn, g_fn
