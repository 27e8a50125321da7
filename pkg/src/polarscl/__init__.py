"""Polar-code toolkit built around LLR-domain successive-cancellation list
decoding: kernels, SC/SCL decoders (scalar and batched), a likelihood-domain
reference implementation, Batcher sorting networks, a q-bit fixed-point
datapath model, a seeded AWGN Monte-Carlo engine and a hardware cost model.
"""

from ._version import __version__
from .batch import BatchSclResult, scl_decode_batch
from .code import (
    CodeSpec,
    apply_transform,
    construct_frozen_set,
    encode,
    read_frozen_mask,
    write_frozen_mask,
)
from .costmodel import CostReport, compare, ll_scl_cost, llr_scl_cost, reference_check
from .fixedpoint import QuantSpec, c2s, quantize, s2c, sat_add
from .kernels import LLR_MAX, clamp_llr, f_exact, f_minsum, g
from .oracle import (
    brute_force_best_path,
    f_lik,
    g_lik,
    h_decide,
    sc_decode_lik,
    scl_decode_lik,
)
from .sc import ScResult, ScState, sc_decode
from .scl import DecodePath, SclResult, expand_and_prune, mcu_approx, mcu_exact, scl_decode
from .simulation import SimConfig, SimResult, bpsk_awgn_llrs, run_monte_carlo
from .sortnet import (
    ComparatorNetwork,
    apply_network,
    build_batcher,
    depth_formula,
    select_top,
)

__all__ = [
    "__version__",
    "BatchSclResult",
    "CodeSpec",
    "ComparatorNetwork",
    "CostReport",
    "DecodePath",
    "LLR_MAX",
    "QuantSpec",
    "ScResult",
    "ScState",
    "SclResult",
    "SimConfig",
    "SimResult",
    "apply_network",
    "apply_transform",
    "bpsk_awgn_llrs",
    "brute_force_best_path",
    "build_batcher",
    "c2s",
    "clamp_llr",
    "compare",
    "construct_frozen_set",
    "depth_formula",
    "encode",
    "expand_and_prune",
    "f_exact",
    "f_lik",
    "f_minsum",
    "g",
    "g_lik",
    "h_decide",
    "ll_scl_cost",
    "llr_scl_cost",
    "mcu_approx",
    "mcu_exact",
    "quantize",
    "read_frozen_mask",
    "reference_check",
    "run_monte_carlo",
    "s2c",
    "sat_add",
    "sc_decode",
    "sc_decode_lik",
    "scl_decode",
    "scl_decode_batch",
    "scl_decode_lik",
    "select_top",
    "write_frozen_mask",
]
