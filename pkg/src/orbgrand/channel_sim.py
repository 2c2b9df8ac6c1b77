"""BPSK/AWGN Monte Carlo harness producing BLER and query statistics.

Every frame draws its message and noise from a Philox substream keyed by
(seed, snr index, frame index), so results are bit-reproducible regardless
of evaluation order, and runs differing only in the constraint count see
identical channel realizations frame for frame.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from .bitlin import BitVec
from .codes import resolve_code
from .constraints import compute_targets, derive_constraints
from .decoder import DecodeBudget, decode, prepare_frame

RNG_ALGORITHM = "numpy.random.Philox (SeedSequence entropy=seed, spawn_key=(snr_index, frame))"


@dataclass(frozen=True)
class ChannelParams:
    """AWGN at a given Eb/N0: sigma^2 = 1 / (2 * rate * 10^(ebn0_db/10))."""

    ebn0_db: float
    rate: float
    sigma: float

    def __post_init__(self):
        if not 0 < self.rate <= 1:
            raise ValueError(f"rate must be in (0, 1], got {self.rate}")
        if self.sigma <= 0:
            raise ValueError(f"sigma must be positive, got {self.sigma}")

    @classmethod
    def from_ebn0(cls, ebn0_db: float, rate: float) -> "ChannelParams":
        if not 0 < rate <= 1:
            raise ValueError(f"rate must be in (0, 1], got {rate}")
        sigma = math.sqrt(1.0 / (2.0 * rate * 10.0 ** (ebn0_db / 10.0)))
        return cls(ebn0_db, rate, sigma)


@dataclass(frozen=True)
class SimConfig:
    code_id: str
    snr_db: tuple[float, ...]
    frames: int
    b: int
    b_prime: int
    p: int
    seed: int
    # Whether candidates carrying a part > n (never materialized) count
    # toward the considered-candidate budget.
    count_oversize_bprime: bool = False

    def __post_init__(self):
        if not self.snr_db:
            raise ValueError("at least one SNR point required")
        if self.frames < 1:
            raise ValueError("frames must be at least 1")
        if self.b < 1 or self.b_prime < 1:
            raise ValueError("budgets must be at least 1")
        if self.p < 0:
            raise ValueError("constraint count must be nonnegative")


@dataclass(frozen=True)
class SimPoint:
    snr_db: float
    frames: int
    block_errors: int
    bler: float
    avg_queries_checked: float
    avg_candidates_generated: float
    abandons: int


@dataclass(frozen=True)
class SimReport:
    """Per-SNR statistics plus enough metadata to rerun the experiment.

    Averages include abandoned frames at their full consumed counts.
    """

    config: SimConfig
    code_name: str
    n: int
    k: int
    rng_algorithm: str
    constraint_set_sizes: tuple[int, ...]
    points: tuple[SimPoint, ...]


def transmit(c: BitVec, params: ChannelParams, rng) -> np.ndarray:
    """Antipodal modulation (0 -> +1, 1 -> -1) plus white Gaussian noise."""
    bits = np.array(c.bits(), dtype=np.float64)
    return (1.0 - 2.0 * bits) + params.sigma * rng.standard_normal(c.n)


def frame_rng(seed: int, snr_index: int, frame_index: int) -> np.random.Generator:
    """The substream owning every random draw of one simulated frame."""
    ss = np.random.SeedSequence(entropy=seed, spawn_key=(snr_index, frame_index))
    return np.random.Generator(np.random.Philox(ss))


def _random_message(k: int, rng) -> BitVec:
    bits = rng.integers(0, 2, size=k, dtype=np.uint8)
    return BitVec(k, int.from_bytes(np.packbits(bits, bitorder="little").tobytes(), "little"))


def run_montecarlo(
    config: SimConfig,
    on_point: Optional[Callable[[SimPoint], None]] = None,
) -> SimReport:
    """Simulate every configured SNR point and aggregate statistics.

    Uniformly random messages are encoded each frame (no all-zero
    shortcut: constraint targets depend on the hard decision, so a fixed
    codeword could hide target-handling mistakes).
    """
    code = resolve_code(config.code_id)
    layout = derive_constraints(code.H, config.p) if config.p else None
    budget = DecodeBudget(config.b, config.b_prime)
    points = []
    for si, snr in enumerate(config.snr_db):
        params = ChannelParams.from_ebn0(snr, code.rate)
        errors = 0
        abandons = 0
        sum_checked = 0
        sum_generated = 0
        for f in range(config.frames):
            rng = frame_rng(config.seed, si, f)
            msg = _random_message(code.k, rng)
            c = code.encode(msg)
            r = transmit(c, params, rng)
            frame = prepare_frame(r)
            targets = compute_targets(layout, frame.v) if layout is not None else None
            out = decode(
                code,
                frame,
                budget,
                layout,
                targets,
                count_oversize=config.count_oversize_bprime,
            )
            sum_checked += out.queries_checked
            sum_generated += out.candidates_generated
            if out.result is None:
                abandons += 1
                errors += 1
            elif out.result != c:
                errors += 1
        point = SimPoint(
            snr_db=snr,
            frames=config.frames,
            block_errors=errors,
            bler=errors / config.frames,
            avg_queries_checked=sum_checked / config.frames,
            avg_candidates_generated=sum_generated / config.frames,
            abandons=abandons,
        )
        points.append(point)
        if on_point is not None:
            on_point(point)
    return SimReport(
        config=config,
        code_name=code.name,
        n=code.n,
        k=code.k,
        rng_algorithm=RNG_ALGORITHM,
        constraint_set_sizes=tuple(len(s) for s in layout.sets) if layout else (),
        points=tuple(points),
    )
