"""BPSK/AWGN channel model and the seeded Monte-Carlo FER/BER engine.

Reproducibility contract: every random draw for frame ``j`` of SNR point ``s``
comes from its own counter-based stream, Philox4x64 keyed by
``SeedSequence(seed, spawn_key=(s, j))``.  Frame data therefore depends only
on (seed, snr index, frame index) — never on chunking, execution order or the
decoder configuration — which gives common random numbers across decoder
modes and byte-identical output for any degree of batching.
"""

import json
import subprocess
from dataclasses import asdict, dataclass
from pathlib import Path

import numpy as np

from ._version import __version__
from .batch import scl_decode_batch
from .code import construct_frozen_set, encode_batch
from .fixedpoint import QuantSpec
from .kernels import LLR_MAX

DEFAULT_SEED = 12345
RNG_ALGORITHM = "numpy Philox4x64 keyed by SeedSequence(seed, spawn_key=(snr_index, frame_index))"
CSV_HEADER = "ebn0_db,frames,frame_errors,bit_errors,fer,ber,ci_low,ci_high"

# 97.5th percentile of the standard normal: two-sided 95% interval.
_Z95 = 1.959963984540054


@dataclass(frozen=True)
class SimConfig:
    """Full description of one Monte-Carlo sweep."""

    n: int
    k: int
    L: int
    snr_points_db: tuple
    max_frames: int
    min_errors: int = 0  # 0 disables early stopping
    seed: int = DEFAULT_SEED
    mode: str = "approx"
    kernel: str = "minsum"
    q: int = 0  # 0 = floating point, else fixed-point width
    scale: float | None = None  # None = QuantSpec default (full clamp range)
    all_zero: bool = False
    design_z0: float = 0.5

    def __post_init__(self):
        object.__setattr__(self, "snr_points_db", tuple(float(s) for s in self.snr_points_db))
        if not self.snr_points_db:
            raise ValueError("need at least one SNR point")
        if self.max_frames < 1:
            raise ValueError("max_frames must be >= 1")
        if self.min_errors < 0:
            raise ValueError("min_errors must be >= 0")
        if self.L < 1:
            raise ValueError("list size must be >= 1")
        if self.mode not in ("approx", "exact"):
            raise ValueError(f"unknown metric mode {self.mode!r}")
        if self.kernel not in ("minsum", "exact"):
            raise ValueError(f"unknown kernel {self.kernel!r}")
        if self.q and (self.mode != "approx" or self.kernel != "minsum"):
            raise ValueError("fixed-point runs require mode='approx', kernel='minsum'")
        if self.q and self.q < 2:
            raise ValueError("q must be 0 (float) or >= 2")

    @property
    def quant(self):
        return QuantSpec(self.q, self.scale) if self.q else None


@dataclass(frozen=True)
class SimPoint:
    ebn0_db: float
    frames: int
    frame_errors: int
    bit_errors: int
    fer: float
    ber: float
    ci_low: float
    ci_high: float


@dataclass(frozen=True)
class SimResult:
    config: SimConfig
    points: tuple
    rng_algorithm: str = RNG_ALGORITHM

    def to_csv(self) -> str:
        lines = [CSV_HEADER]
        for p in self.points:
            lines.append(
                f"{p.ebn0_db!r},{p.frames},{p.frame_errors},{p.bit_errors},"
                f"{p.fer!r},{p.ber!r},{p.ci_low!r},{p.ci_high!r}"
            )
        return "\n".join(lines) + "\n"

    def write_csv(self, path) -> None:
        with open(path, "w", encoding="ascii", newline="\n") as fh:
            fh.write(self.to_csv())


def frame_rng(seed: int, snr_index: int, frame_index: int) -> np.random.Generator:
    """The dedicated random stream of one frame."""
    ss = np.random.SeedSequence(entropy=seed, spawn_key=(snr_index, frame_index))
    return np.random.Generator(np.random.Philox(ss))


def noise_sigma(ebn0_db: float, rate: float) -> float:
    """Noise standard deviation for unit-energy BPSK at the given Eb/N0."""
    if not 0.0 < rate <= 1.0:
        raise ValueError(f"rate must be in (0, 1], got {rate}")
    return float(1.0 / np.sqrt(2.0 * rate * 10.0 ** (ebn0_db / 10.0)))


def bpsk_awgn_llrs(codeword, ebn0_db: float, rate: float, rng: np.random.Generator) -> np.ndarray:
    """Transmit one codeword over BPSK/AWGN and return clamped channel LLRs.

    Bit b maps to symbol 1 - 2b; the received sample y = s + N(0, sigma^2)
    with sigma^2 = 1 / (2 R 10^(EbN0/10)) gives LLR = 2 y / sigma^2.
    """
    sigma = noise_sigma(ebn0_db, rate)
    symbols = 1.0 - 2.0 * np.asarray(codeword, dtype=np.float64)
    y = symbols + sigma * rng.standard_normal(symbols.shape)
    return np.clip(2.0 * y / (sigma * sigma), -LLR_MAX, LLR_MAX)


def wilson_interval(errors: int, trials: int, z: float = _Z95):
    """Wilson score interval for a binomial proportion; always contains the MLE."""
    if trials < 1:
        raise ValueError("trials must be >= 1")
    p = errors / trials
    denom = 1.0 + z * z / trials
    center = (p + z * z / (2 * trials)) / denom
    half = z * np.sqrt(p * (1.0 - p) / trials + z * z / (4.0 * trials * trials)) / denom
    # rounding can push a bound a few ulp past the point estimate; pin it
    lo = min(max(center - half, 0.0), p)
    hi = max(min(center + half, 1.0), p)
    return float(lo), float(hi)


def _generate_chunk(config: SimConfig, spec, snr_index: int, start: int, count: int):
    """Messages and channel LLRs for frames [start, start+count) of one SNR point.

    Per frame, message bits are drawn before the noise; with the all_zero
    shortcut the message draw is skipped entirely.
    """
    ebn0 = config.snr_points_db[snr_index]
    sigma = noise_sigma(ebn0, config.k / config.n)
    msgs = np.zeros((count, config.k), dtype=np.uint8)
    noise = np.empty((count, config.n), dtype=np.float64)
    for j in range(count):
        rng = frame_rng(config.seed, snr_index, start + j)
        if not config.all_zero:
            msgs[j] = rng.integers(0, 2, size=config.k, dtype=np.uint8)
        noise[j] = rng.standard_normal(config.n)
    codewords = encode_batch(spec, msgs)
    symbols = 1.0 - 2.0 * codewords.astype(np.float64)
    y = symbols + sigma * noise
    llrs = np.clip(2.0 * y / (sigma * sigma), -LLR_MAX, LLR_MAX)
    return msgs, llrs


def run_monte_carlo(
    config: SimConfig, chunk_size: int = 2048, check_invariants: bool = False
) -> SimResult:
    """Run the configured sweep and return per-point FER/BER with 95% intervals.

    ``chunk_size`` is the batching (parallelism) width; results are identical
    for any value because frame streams are position-keyed and early stopping
    cuts at an exact frame index.  When ``min_errors`` > 0, a point stops at
    the first frame whose cumulative frame-error count reaches it.
    """
    if chunk_size < 1:
        raise ValueError("chunk_size must be >= 1")
    spec = construct_frozen_set(config.n, config.k, config.design_z0)
    points = []
    for snr_index in range(len(config.snr_points_db)):
        frames = 0
        frame_errors = 0
        bit_errors = 0
        while frames < config.max_frames:
            count = min(chunk_size, config.max_frames - frames)
            msgs, llrs = _generate_chunk(config, spec, snr_index, frames, count)
            result = scl_decode_batch(
                spec,
                llrs,
                config.L,
                mode=config.mode,
                kernel=config.kernel,
                quant=config.quant,
                check_invariants=check_invariants,
            )
            wrong = result.message != msgs
            err_frame = wrong.any(axis=1)
            err_bits = wrong.sum(axis=1)
            stop = False
            if config.min_errors > 0:
                cum = frame_errors + np.cumsum(err_frame)
                hit = np.nonzero(cum >= config.min_errors)[0]
                if hit.size:
                    count = int(hit[0]) + 1
                    err_frame = err_frame[:count]
                    err_bits = err_bits[:count]
                    stop = True
            frames += count
            frame_errors += int(err_frame.sum())
            bit_errors += int(err_bits.sum())
            if stop:
                break
        lo, hi = wilson_interval(frame_errors, frames)
        points.append(
            SimPoint(
                ebn0_db=config.snr_points_db[snr_index],
                frames=frames,
                frame_errors=frame_errors,
                bit_errors=bit_errors,
                fer=frame_errors / frames,
                ber=bit_errors / (frames * config.k),
                ci_low=lo,
                ci_high=hi,
            )
        )
    return SimResult(config=config, points=tuple(points))


def _git_describe():
    try:
        out = subprocess.run(
            ["git", "describe", "--always", "--dirty"],
            cwd=Path(__file__).resolve().parent,
            capture_output=True,
            text=True,
            timeout=10,
        )
    except (OSError, subprocess.SubprocessError):
        return None
    return out.stdout.strip() or None


def manifest(config: SimConfig, command=None, outputs=()) -> dict:
    """Metadata sidecar contents for one simulation run."""
    return {
        "command": command,
        "config": asdict(config),
        "seed": config.seed,
        "rng": RNG_ALGORITHM,
        "library_version": __version__,
        "git_describe": _git_describe(),
        "outputs": list(outputs),
    }


def write_manifest(path, config: SimConfig, command=None, outputs=()) -> None:
    data = manifest(config, command=command, outputs=outputs)
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(data, fh, indent=2, sort_keys=True)
        fh.write("\n")
