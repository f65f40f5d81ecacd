"""Monte-Carlo evaluation over channel realizations and parameter sweeps.

Every realization ``i`` is an independent work unit: its channel, its AO
initial phases and its random-phase draws all come from sub-streams of
``master_seed`` keyed by ``i`` (see :func:`irs_cf.channel.substream`). The
per-realization rates are collected in index order before any reduction,
so results do not depend on the number of worker processes.

The same master seed is reused at every sweep point, so a sweep over SNR
evaluates the same channels at every SNR value.
"""

from __future__ import annotations

import enum
import logging
import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace
from typing import Sequence

import numpy as np

from .baselines import (
    ALL_METHODS,
    MethodId,
    ao_over_inits,
    ao_rates,
    no_irs_rate,
    random_phase_rates,
    rates_at_phases,
)
from .channel import (
    STREAM_CHANNEL,
    STREAM_INIT,
    STREAM_RANDOM_PHASE,
    SystemParams,
    db_to_linear,
    random_phases,
    sample_channel,
    substream,
)
from .optimizer import AOConfig

log = logging.getLogger(__name__)

DEFAULT_SEED = 20210
THREADS_ENV = "IRS_CF_THREADS"


def _sorted_methods(methods) -> tuple[MethodId, ...]:
    return tuple(sorted((MethodId(m) for m in methods), key=lambda m: m.value))


@dataclass(frozen=True)
class EvalConfig:
    """Counts, seed and method selection for one evaluation point.

    ``shared_draws`` reuses the AO initial phases as the random-phase
    baseline samples (``n_random_phase`` is then ignored), which turns
    AO-versus-random comparisons into per-realization inequalities.
    """

    num_chnl_realz: int = 100
    num_init_point: int = 10
    n_random_phase: int = 10
    ao: AOConfig = field(default_factory=AOConfig)
    master_seed: int = DEFAULT_SEED
    methods: tuple[MethodId, ...] = ALL_METHODS
    shared_draws: bool = False

    def __post_init__(self):
        for name in ("num_chnl_realz", "num_init_point", "n_random_phase"):
            if getattr(self, name) < 1:
                raise ValueError(f"{name} must be >= 1")
        object.__setattr__(self, "methods", _sorted_methods(self.methods))


def paper_scale_configs(master_seed: int = DEFAULT_SEED) -> dict[str, EvalConfig]:
    """Large realization counts for a rate-versus-M comparison.

    AO-based methods get 350 channel draws with 35 initial phase vectors
    each; the random-phase baselines get 5350 draws.
    """
    return {
        "ao": EvalConfig(350, 35, 35, master_seed=master_seed,
                         methods=(MethodId.NO_IRS, MethodId.AO_AVG, MethodId.AO_MAX)),
        "random": EvalConfig(5350, 35, 35, master_seed=master_seed,
                             methods=(MethodId.RND_PHZ_AVG, MethodId.RND_PHZ_MAX)),
    }


@dataclass(frozen=True)
class MethodStats:
    method: MethodId
    mean_bits: float
    stderr_bits: float
    num_realizations: int
    num_inits: int = 0


def summarize(method: MethodId, rates, num_inits: int = 0) -> MethodStats:
    """Mean and standard error (n-1 variance) of per-realization rates.

    The standard error of a single realization is reported as NaN.
    """
    x = [float(v) for v in rates]
    n = len(x)
    if n == 0:
        raise ValueError("no realizations to summarize")
    mean = math.fsum(x) / n
    if n > 1:
        var = math.fsum((v - mean) ** 2 for v in x) / (n - 1)
        stderr = math.sqrt(var) / math.sqrt(n)
    else:
        stderr = float("nan")
    return MethodStats(method, mean, stderr, n, num_inits)


def _inits_for(params: SystemParams, cfg: EvalConfig, i: int) -> list[np.ndarray]:
    M = params.num_irs_elements
    return [random_phases(substream(cfg.master_seed, i, STREAM_INIT, j), M)
            for j in range(cfg.num_init_point)]


def evaluate_realization(params: SystemParams, cfg: EvalConfig, i: int) -> np.ndarray:
    """Rates of every method in ``cfg.methods`` (in that order) on realization ``i``."""
    chan = sample_channel(params, substream(cfg.master_seed, i, STREAM_CHANNEL))
    a, snr = params.coeffs, params.snr_linear
    base = no_irs_rate(chan, a, snr)
    methods = cfg.methods
    if params.num_irs_elements == 0:
        # nothing to tune: every scheme reduces to the direct link
        return np.full(len(methods), base)

    want_ao = any(m.uses_ao for m in methods)
    want_rnd = any(m.uses_random_phases for m in methods)
    inits = _inits_for(params, cfg, i) if (want_ao or (want_rnd and cfg.shared_draws)) else None

    ao = None
    if want_ao:
        ao = ao_rates(ao_over_inits(chan, a, snr, inits, cfg.ao))
    rnd = None
    if want_rnd:
        if cfg.shared_draws:
            rnd = rates_at_phases(chan, a, snr, inits)
        else:
            rng = substream(cfg.master_seed, i, STREAM_RANDOM_PHASE)
            rnd = random_phase_rates(chan, a, snr, cfg.n_random_phase, rng)

    out = np.empty(len(methods))
    for k, m in enumerate(methods):
        if m is MethodId.NO_IRS:
            out[k] = base
        elif m is MethodId.RND_PHZ_AVG:
            out[k] = np.mean(rnd)
        elif m is MethodId.RND_PHZ_MAX:
            out[k] = np.max(rnd)
        elif m is MethodId.AO_AVG:
            out[k] = np.mean(ao)
        elif m is MethodId.AO_MAX:
            out[k] = np.max(ao)
    return out


def resolve_workers(workers: int | None = None) -> int:
    """Worker count: explicit value, else ``$IRS_CF_THREADS``, else CPU count."""
    if workers is None:
        env = os.environ.get(THREADS_ENV)
        if env:
            workers = int(env)
        else:
            workers = os.cpu_count() or 1
    return max(1, int(workers))


def _evaluate_one(args):
    params, cfg, i = args
    return evaluate_realization(params, cfg, i)


def evaluate_realizations(params: SystemParams, cfg: EvalConfig,
                          workers: int | None = None) -> np.ndarray:
    """Per-realization rate matrix, shape ``(num_chnl_realz, len(cfg.methods))``."""
    n = cfg.num_chnl_realz
    if not cfg.methods:
        return np.empty((n, 0))
    workers = min(resolve_workers(workers), n)
    jobs = [(params, cfg, i) for i in range(n)]
    if workers == 1:
        rows = [_evaluate_one(job) for job in jobs]
    else:
        chunk = max(1, n // (4 * workers))
        with ProcessPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(_evaluate_one, jobs, chunksize=chunk))
    return np.vstack(rows)


def _num_inits(method: MethodId, cfg: EvalConfig) -> int:
    if method.uses_ao:
        return cfg.num_init_point
    if method.uses_random_phases:
        return cfg.num_init_point if cfg.shared_draws else cfg.n_random_phase
    return 0


def evaluate_point(params: SystemParams, cfg: EvalConfig,
                   workers: int | None = None) -> list[MethodStats]:
    """Mean rate and standard error of each method over ``num_chnl_realz`` draws."""
    samples = evaluate_realizations(params, cfg, workers)
    return _stats_from_samples(samples, cfg)


def _stats_from_samples(samples, cfg):
    return [summarize(m, samples[:, k], _num_inits(m, cfg))
            for k, m in enumerate(cfg.methods)]


class SweepVariable(str, enum.Enum):
    SNR_DB = "snr_db"
    NUM_IRS_ELEMENTS = "num_irs_elements"


@dataclass(frozen=True)
class SweepSpec:
    base: SystemParams
    variable: SweepVariable
    values: tuple
    eval: EvalConfig = field(default_factory=EvalConfig)

    def __post_init__(self):
        variable = SweepVariable(self.variable)
        values = tuple(self.values)
        if not values:
            raise ValueError("sweep values must be non-empty")
        if any(b <= a for a, b in zip(values, values[1:])):
            raise ValueError("sweep values must be strictly increasing")
        if variable is SweepVariable.NUM_IRS_ELEMENTS:
            if any(int(v) != v or v < 0 for v in values):
                raise ValueError("IRS element counts must be non-negative integers")
            values = tuple(int(v) for v in values)
        else:
            values = tuple(float(v) for v in values)
        object.__setattr__(self, "variable", variable)
        object.__setattr__(self, "values", values)

    def params_at(self, value) -> SystemParams:
        if self.variable is SweepVariable.SNR_DB:
            return replace(self.base, snr_linear=db_to_linear(value))
        return replace(self.base, num_irs_elements=int(value))


@dataclass
class SweepTable:
    """Rows of ``(sweep value, MethodStats)`` in sweep order, then method-name order.

    ``samples`` maps each sweep value to its per-realization rate matrix
    (columns follow ``methods``).
    """

    variable: SweepVariable
    methods: tuple[MethodId, ...]
    rows: list[tuple[float, MethodStats]] = field(default_factory=list)
    samples: dict = field(default_factory=dict)

    def stats(self, value, method: MethodId) -> MethodStats:
        for v, st in self.rows:
            if v == value and st.method is method:
                return st
        raise KeyError((value, method))

    def means(self, method: MethodId) -> np.ndarray:
        return np.array([st.mean_bits for _, st in self.rows if st.method is method])

    def column(self, value, method: MethodId) -> np.ndarray:
        return self.samples[value][:, self.methods.index(method)]


def run_sweep(spec: SweepSpec, workers: int | None = None) -> SweepTable:
    """Evaluate every sweep point of ``spec`` and collect the stats table."""
    table = SweepTable(spec.variable, spec.eval.methods)
    for value in spec.values:
        log.info("sweep %s=%s", spec.variable.value, value)
        samples = evaluate_realizations(spec.params_at(value), spec.eval, workers)
        table.samples[value] = samples
        for st in _stats_from_samples(samples, spec.eval):
            table.rows.append((value, st))
    return table
