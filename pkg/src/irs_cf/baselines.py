"""Per-realization evaluators for the compared schemes.

``NO_IRS``       plain compute-and-forward on the direct links only.
``RND_PHZ_AVG``  mean rate over uniformly random phase vectors.
``RND_PHZ_MAX``  best rate over the same random phase vectors.
``AO_AVG``       mean AO rate over random initial phases (the proposed method).
``AO_MAX``       best AO rate over the same initial phases.
"""

from __future__ import annotations

import enum
from typing import Sequence

import numpy as np

from .channel import ChannelRealization, random_phases
from .optimizer import AOConfig, AOResult, ao_optimize
from .rate import computation_rate_direct, rate_at_optimal_beta


class MethodId(str, enum.Enum):
    NO_IRS = "NoIrs"
    RND_PHZ_AVG = "RndPhzAvg"
    RND_PHZ_MAX = "RndPhzMax"
    AO_AVG = "AoAvg"
    AO_MAX = "AoMax"

    @classmethod
    def parse(cls, name: str) -> "MethodId":
        key = name.strip().replace("-", "").replace("_", "").lower()
        for m in cls:
            if m.value.lower() == key:
                return m
        raise ValueError(f"unknown method {name!r}")

    @property
    def uses_ao(self) -> bool:
        return self in (MethodId.AO_AVG, MethodId.AO_MAX)

    @property
    def uses_random_phases(self) -> bool:
        return self in (MethodId.RND_PHZ_AVG, MethodId.RND_PHZ_MAX)


ALL_METHODS = tuple(MethodId)


def no_irs_rate(chan: ChannelRealization, a, snr: float) -> float:
    """Rate with the IRS absent: the effective channel is the direct link."""
    return computation_rate_direct(a, chan.direct, snr)


def random_phase_rates(chan: ChannelRealization, a, snr: float, n: int,
                       rng: np.random.Generator) -> np.ndarray:
    """Rates of ``n`` independent uniform phase vectors, each at optimal beta."""
    if n < 1:
        raise ValueError("n must be >= 1")
    M = chan.num_irs_elements
    draws = [random_phases(rng, M) for _ in range(n)]
    return rates_at_phases(chan, a, snr, draws)


def rates_at_phases(chan: ChannelRealization, a, snr: float,
                    phase_list: Sequence[np.ndarray]) -> np.ndarray:
    return np.array([rate_at_optimal_beta(chan, th, a, snr) for th in phase_list])


def ao_over_inits(chan: ChannelRealization, a, snr: float,
                  inits: Sequence[np.ndarray], cfg: AOConfig = AOConfig()) -> list[AOResult]:
    """One AO run per initial phase vector."""
    if len(inits) == 0:
        raise ValueError("inits must be non-empty")
    return [ao_optimize(chan, a, snr, init, cfg) for init in inits]


def reduce_avg(rates) -> float:
    return float(np.mean(rates))


def reduce_max(rates) -> float:
    return float(np.max(rates))


def ao_rates(results: Sequence[AOResult]) -> np.ndarray:
    return np.array([r.rate_bits for r in results])
