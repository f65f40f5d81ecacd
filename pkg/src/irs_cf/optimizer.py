"""Alternating optimization of the MMSE coefficient and the IRS phases.

The receiver scaling ``beta`` has a closed form at fixed phases; the phases
are updated by steepest descent with Armijo backtracking on

    g(theta) = || beta * h_eff(theta) - a ||^2

at fixed ``beta``. Each half-step is monotone for the rate, so the AO trace
never decreases.

Two brute-force oracles live here as well (a per-coordinate closed form and
an exhaustive grid for M <= 2). They are used by the test-suite and are kept
public so other code can verify its own solutions.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field

import numba
import numpy as np

from .channel import ChannelRealization, as_coeff_array
from .rate import (
    TWO_PI,
    _check_phases,
    computation_rate_beta,
    computation_rate_direct,
    effective_channel,
    optimal_beta,
    wrap_phases,
)

log = logging.getLogger(__name__)

# Line search gives up after this many halvings of the step.
_MAX_BACKTRACKS = 60


@dataclass(frozen=True)
class GDConfig:
    max_inner_iters: int = 100
    grad_tolerance: float = 1e-6
    armijo_c: float = 1e-4
    backtrack_shrink: float = 0.5
    initial_step: float = 1.0

    def __post_init__(self):
        if self.max_inner_iters < 1:
            raise ValueError("max_inner_iters must be >= 1")
        if not self.grad_tolerance > 0:
            raise ValueError("grad_tolerance must be positive")
        if not 0 < self.armijo_c < 1:
            raise ValueError("armijo_c must lie in (0, 1)")
        if not 0 < self.backtrack_shrink < 1:
            raise ValueError("backtrack_shrink must lie in (0, 1)")
        if not self.initial_step > 0:
            raise ValueError("initial_step must be positive")


@dataclass(frozen=True)
class AOConfig:
    max_ao_iters: int = 50
    rate_tolerance: float = 1e-8
    gd: GDConfig = field(default_factory=GDConfig)

    def __post_init__(self):
        if self.max_ao_iters < 1:
            raise ValueError("max_ao_iters must be >= 1")
        if self.rate_tolerance < 0:
            raise ValueError("rate_tolerance must be non-negative")


@dataclass(frozen=True)
class AOTraceEntry:
    iteration: int
    beta: complex
    rate_bits: float
    grad_norm: float


@dataclass(frozen=True)
class AOResult:
    phases: np.ndarray
    beta: complex
    rate_bits: float
    trace: tuple[AOTraceEntry, ...]
    converged: bool


class IneffectiveElementError(ValueError):
    """The IRS element cannot change the objective (its path vector is zero)."""


# -- objective and gradient --------------------------------------------------

def _residual(chan, theta, beta, a):
    return beta * effective_channel(chan, theta) - a


def phase_objective(chan: ChannelRealization, theta, beta: complex, a) -> float:
    """``|| beta * h_eff(theta) - a ||^2``."""
    r = _residual(chan, theta, beta, as_coeff_array(a))
    return float(np.vdot(r, r).real)


def phase_gradient(chan: ChannelRealization, theta, beta: complex, a) -> np.ndarray:
    """Gradient of :func:`phase_objective` with respect to ``theta``.

    With ``b_m = h_s[m] G[:, m]`` and ``r = beta h_eff - a``,
    ``dg/dtheta_m = 2 Re(j beta e^{j theta_m} r^H b_m)``.
    """
    theta = _check_phases(chan, theta)
    r = _residual(chan, theta, beta, as_coeff_array(a))
    B = chan.cascaded()
    return 2.0 * np.real(1j * beta * np.exp(1j * theta) * (B.T @ r.conj()))


# -- gradient descent --------------------------------------------------------

@numba.njit(cache=True)
def _objective_kernel(h, B, a, beta, theta, r):
    K, M = B.shape
    g = 0.0
    for k in range(K):
        acc = h[k]
        for m in range(M):
            acc += B[k, m] * complex(np.cos(theta[m]), np.sin(theta[m]))
        r[k] = beta * acc - a[k]
        g += r[k].real * r[k].real + r[k].imag * r[k].imag
    return g


@numba.njit(cache=True)
def _gradient_kernel(B, beta, theta, r, out):
    K, M = B.shape
    gn2 = 0.0
    for m in range(M):
        acc = 0j
        for k in range(K):
            acc += B[k, m] * r[k].conjugate()
        z = 1j * beta * complex(np.cos(theta[m]), np.sin(theta[m])) * acc
        out[m] = 2.0 * z.real
        gn2 += out[m] * out[m]
    return gn2


@numba.njit(cache=True)
def _descend_kernel(h, B, a, beta, theta, max_iters, tol, c, shrink, step0,
                    max_backtracks):
    M = theta.size
    r = np.empty(a.size, dtype=np.complex128)
    r_c = np.empty(a.size, dtype=np.complex128)
    grad = np.empty(M)
    cand = np.empty(M)
    g = _objective_kernel(h, B, a, beta, theta, r)
    gn2 = _gradient_kernel(B, beta, theta, r, grad)
    tol2 = tol * tol
    for _ in range(max_iters):
        if gn2 <= tol2:
            break
        step = step0
        accepted = False
        for _ in range(max_backtracks):
            for m in range(M):
                cand[m] = theta[m] - step * grad[m]
            g_c = _objective_kernel(h, B, a, beta, cand, r_c)
            if g_c <= g - c * step * gn2:
                accepted = True
                break
            step *= shrink
        if not accepted:
            # no representable step decreases g: numerically stationary
            break
        theta[:] = cand
        r[:] = r_c
        g = g_c
        gn2 = _gradient_kernel(B, beta, theta, r, grad)
    return g, np.sqrt(gn2)


def _descend(chan: ChannelRealization, beta: complex, a: np.ndarray,
             theta: np.ndarray, cfg: GDConfig):
    """Steepest descent with Armijo backtracking.

    Returns (theta, objective, final gradient norm); theta is wrapped.
    """
    theta = np.array(theta, dtype=float)
    g, gnorm = _descend_kernel(
        chan.direct, chan.cascaded(), a, complex(beta), theta,
        cfg.max_inner_iters, cfg.grad_tolerance, cfg.armijo_c,
        cfg.backtrack_shrink, cfg.initial_step, _MAX_BACKTRACKS)
    return wrap_phases(theta), g, gnorm


def gd_minimize(chan: ChannelRealization, init, beta: complex, a,
                cfg: GDConfig = GDConfig()) -> np.ndarray:
    """Minimize :func:`phase_objective` over the phases at fixed ``beta``.

    Returns phases in [0, 2pi) whose objective is no larger than at
    ``init``. Stops when the gradient norm drops to ``cfg.grad_tolerance``
    or after ``cfg.max_inner_iters`` steps.
    """
    theta = _check_phases(chan, init).copy()
    if beta == 0 or chan.num_irs_elements == 0:
        return wrap_phases(theta)
    return _descend(chan, beta, as_coeff_array(a), theta, cfg)[0]


# -- alternating optimization -------------------------------------------------

def ao_optimize(chan: ChannelRealization, a, snr: float, init,
                cfg: AOConfig = AOConfig()) -> AOResult:
    """Maximize the computation rate over the IRS phases.

    Alternates the closed-form ``beta`` update with gradient descent on
    the phases until the rate gain of one sweep falls below
    ``cfg.rate_tolerance`` (and the inner descent reached its gradient
    tolerance), or ``cfg.max_ao_iters`` sweeps have run.

    Parameters
    ----------
    chan : ChannelRealization
    a : CoefficientVector or array_like
        Nonzero coefficient vector.
    snr : float
        Linear SNR.
    init : array_like, shape (M,)
        Initial phases.
    cfg : AOConfig

    Returns
    -------
    AOResult
        ``rate_bits`` is the rate of the final (phases, beta) pair.
    """
    a = as_coeff_array(a)
    if not np.any(a):
        raise ValueError("coefficient vector must be nonzero")
    theta = wrap_phases(_check_phases(chan, init))
    M = chan.num_irs_elements

    if M == 0:
        h = chan.direct
        beta = optimal_beta(h, a, snr)
        rate = computation_rate_direct(a, h, snr)
        entry = AOTraceEntry(1, beta, rate, 0.0)
        return AOResult(theta, beta, rate, (entry,), True)

    gd_cfg = cfg.gd
    trace = []
    converged = False
    h_eff = effective_channel(chan, theta)
    prev_rate = None
    for it in range(1, cfg.max_ao_iters + 1):
        beta = optimal_beta(h_eff, a, snr)
        if beta == 0:
            grad_norm = 0.0
        else:
            theta, _, grad_norm = _descend(chan, beta, a, theta, gd_cfg)
            h_eff = effective_channel(chan, theta)
        rate = computation_rate_beta(a, h_eff, snr, beta)
        trace.append(AOTraceEntry(it, beta, rate, grad_norm))
        if (prev_rate is not None and rate - prev_rate < cfg.rate_tolerance
                and grad_norm <= gd_cfg.grad_tolerance):
            converged = True
            break
        prev_rate = rate
    log.debug("AO stopped after %d sweeps, rate %.6f, converged=%s",
              len(trace), trace[-1].rate_bits, converged)
    return AOResult(theta, trace[-1].beta, trace[-1].rate_bits, tuple(trace), converged)


# -- verification oracles -----------------------------------------------------

def coordinate_phase_optimum(chan: ChannelRealization, theta, beta: complex, a,
                             m: int) -> float:
    """Exact minimizer of :func:`phase_objective` over ``theta[m]`` alone.

    ``m`` is zero-based. Writing the objective as
    ``|| r_m + e^{j t} w_m ||^2`` with ``w_m = beta h_s[m] G[:, m]``, the
    minimizer is ``t = pi - arg(r_m^H w_m)``.

    Raises
    ------
    IneffectiveElementError
        If ``w_m`` is zero, i.e. every angle is optimal.
    """
    theta = _check_phases(chan, theta)
    if not 0 <= m < theta.size:
        raise IndexError(f"element index {m} out of range for M={theta.size}")
    a = as_coeff_array(a)
    w = beta * chan.irs_bs[m] * chan.user_irs[:, m]
    if not np.any(w):
        raise IneffectiveElementError(f"element {m} has no effect on the objective")
    r_rest = _residual(chan, theta, beta, a) - np.exp(1j * theta[m]) * w
    c = np.vdot(r_rest, w)
    return float(wrap_phases(np.pi - np.angle(c)))


def _rank_one_denominator_columns(a, H, snr):
    """Vectorized rank-one denominator for each column of ``H``."""
    a2 = float(np.vdot(a, a).real)
    h2 = np.sum(np.abs(H) ** 2, axis=0)
    ha = H.conj().T @ a
    resid = h2[np.newaxis, :] * a[:, np.newaxis] - ha[np.newaxis, :] * H
    safe = np.where(h2 > 0, h2, 1.0)
    cross = np.where(h2 > 0, np.sum(np.abs(resid) ** 2, axis=0) / safe, 0.0)
    return (a2 + snr * cross) / (1.0 + snr * h2)


def grid_search_phases(chan: ChannelRealization, a, snr: float,
                       points_per_dim: int = 4096, chunk: int = 1 << 16):
    """Exhaustive search over a uniform phase grid (M <= 2 only).

    Returns ``(theta, rate)`` for the grid point of highest rate at the
    optimal ``beta``.
    """
    M = chan.num_irs_elements
    if M > 2:
        raise ValueError(f"grid search is limited to M <= 2, got M={M}")
    if points_per_dim < 1:
        raise ValueError("points_per_dim must be positive")
    a = as_coeff_array(a)
    if M == 0:
        return np.zeros(0), computation_rate_direct(a, chan.direct, snr)

    grid = TWO_PI * np.arange(points_per_dim) / points_per_dim
    u_grid = np.exp(1j * grid)
    B = chan.cascaded()
    best_den, best_theta = np.inf, None
    if M == 1:
        outer = [None]
    else:
        outer = range(points_per_dim)
    for i in outer:
        if M == 1:
            H = chan.direct[:, None] + B[:, [0]] * u_grid[None, :]
        else:
            base = chan.direct + B[:, 0] * u_grid[i]
            H = base[:, None] + B[:, [1]] * u_grid[None, :]
        for start in range(0, points_per_dim, chunk):
            den = _rank_one_denominator_columns(a, H[:, start:start + chunk], snr)
            k = int(np.argmin(den))
            if den[k] < best_den:
                best_den = den[k]
                best_theta = [grid[start + k]] if M == 1 else [grid[i], grid[start + k]]
    theta = np.array(best_theta)
    return theta, computation_rate_direct(a, effective_channel(chan, theta), snr)

