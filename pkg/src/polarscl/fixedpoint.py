"""q-bit fixed-point datapath model: saturating two's-complement arithmetic with
sign-magnitude conversion, mirroring a hardware processing element and metric
update unit.

The representable range is symmetric, [-(2^(q-1)-1), +(2^(q-1)-1)]; the most
negative two's-complement code is unused so every value also has a
sign-magnitude form.  One (q, scale) pair covers the whole datapath: channel
LLRs, intermediate messages and path metrics.
"""

import math
from dataclasses import dataclass

import numpy as np

from .kernels import LLR_MAX


@dataclass(frozen=True)
class QuantSpec:
    """Datapath width ``q`` (total bits, sign included) and LLR step ``scale``.

    The default scale stretches the code range over the floating-point clamp
    range, scale = LLR_MAX / (2^(q-1) - 1).  Path metrics share the same q
    and saturate at the same codes, so a much smaller scale starves them of
    dynamic range and wrecks list selection long before channel-LLR precision
    becomes the bottleneck.
    """

    q: int
    scale: float | None = None

    def __post_init__(self):
        if self.q < 2:
            raise ValueError(f"q must be >= 2, got {self.q}")
        if self.scale is None:
            object.__setattr__(self, "scale", LLR_MAX / self.max_code)
        if not self.scale > 0:
            raise ValueError(f"scale must be positive, got {self.scale}")

    @property
    def max_code(self) -> int:
        return (1 << (self.q - 1)) - 1


def _check_range(code: int, q: int, what: str = "code") -> None:
    limit = (1 << (q - 1)) - 1
    if not -limit <= code <= limit:
        raise ValueError(f"{what} {code} outside +/-{limit} for q={q}")


def c2s(code: int, q: int):
    """Two's complement -> (sign, magnitude).  Zero maps to (0, 0)."""
    _check_range(code, q)
    return (1, -code) if code < 0 else (0, code)


def s2c(sign: int, magnitude: int, q: int) -> int:
    """(sign, magnitude) -> two's complement; raises on magnitude overflow."""
    limit = (1 << (q - 1)) - 1
    if not 0 <= magnitude <= limit:
        raise ValueError(f"magnitude {magnitude} overflows q={q} (max {limit})")
    return -magnitude if sign else magnitude


def sat_add(a: int, b: int, q: int) -> int:
    """Saturating addition within the symmetric q-bit range."""
    limit = (1 << (q - 1)) - 1
    s = a + b
    if s > limit:
        return limit
    if s < -limit:
        return -limit
    return s


def quantize(x: float, spec: QuantSpec) -> int:
    """Round ``x / scale`` to the nearest code, ties away from zero, then clamp."""
    mag = math.floor(abs(x) / spec.scale + 0.5)
    code = -mag if x < 0 else mag
    limit = spec.max_code
    if code > limit:
        return limit
    if code < -limit:
        return -limit
    return code


def dequantize(code: int, spec: QuantSpec) -> float:
    return code * spec.scale


def quantize_array(x: np.ndarray, spec: QuantSpec) -> np.ndarray:
    """Vectorised :func:`quantize` (same rounding rule, element for element)."""
    mag = np.floor(np.abs(x) / spec.scale + 0.5)
    code = np.where(x < 0, -mag, mag)
    return np.clip(code, -spec.max_code, spec.max_code).astype(np.int32)


def f_minsum_fixed(a: int, b: int) -> int:
    """Integer min-sum kernel; exact, never overflows the input range."""
    m = min(abs(a), abs(b))
    return -m if (a < 0) != (b < 0) else m


def g_fixed(a: int, b: int, u_sum: int, spec: QuantSpec) -> int:
    """Integer variable-node kernel with saturating addition."""
    return sat_add(-a if u_sum else a, b, spec.q)


def mcu_approx_fixed(m_prev: int, input_llr: int, bit: int, spec: QuantSpec) -> int:
    """Integer metric update: saturating penalty of |input_llr| on disagreement."""
    if bit:
        penalty = -input_llr if input_llr >= 0 else 0
    else:
        penalty = input_llr if input_llr < 0 else 0
    return sat_add(m_prev, penalty, spec.q)


def fixed_ops(spec: QuantSpec):
    """(f, g, mcu) closures over one QuantSpec, for the scalar decoders."""
    return (
        f_minsum_fixed,
        lambda a, b, u_sum: g_fixed(a, b, u_sum, spec),
        lambda m_prev, llr, bit: mcu_approx_fixed(m_prev, llr, bit, spec),
    )
