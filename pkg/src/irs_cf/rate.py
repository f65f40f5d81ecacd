"""Effective channel, computation rate and the MMSE scaling coefficient.

Rates are in bits per channel use (base-2 logarithm).
"""

from __future__ import annotations

import math
import warnings

import numpy as np

from .channel import ChannelRealization, as_coeff_array

TWO_PI = 2.0 * np.pi

# Below this the rank-one denominator is treated as saturated.
DENOMINATOR_FLOOR = 1e-15


class RateSaturationWarning(RuntimeWarning):
    """Emitted when the rate denominator hits the numerical floor."""


def wrap_phases(theta) -> np.ndarray:
    """Map angles to the canonical interval [0, 2pi)."""
    t = np.mod(np.asarray(theta, dtype=float), TWO_PI)
    # mod can round up to exactly 2pi for tiny negative inputs
    return np.where(t >= TWO_PI, 0.0, t)


def _check_phases(chan: ChannelRealization, theta) -> np.ndarray:
    theta = np.asarray(theta, dtype=float).reshape(-1)
    if theta.size != chan.num_irs_elements:
        raise ValueError(
            f"got {theta.size} phases for {chan.num_irs_elements} IRS elements")
    return theta


def _check_lengths(a: np.ndarray, h_eff: np.ndarray):
    if a.shape != h_eff.shape:
        raise ValueError(f"length mismatch: a has {a.size}, h_eff has {h_eff.size}")


def effective_channel(chan: ChannelRealization, theta) -> np.ndarray:
    """``h + G diag(exp(j theta)) h_s``."""
    theta = _check_phases(chan, theta)
    return chan.direct + chan.user_irs @ (np.exp(1j * theta) * chan.irs_bs)


def log_plus(x: float) -> float:
    """``max(0, log2 x)`` for ``x > 0``."""
    if not x > 0:
        raise ValueError(f"log_plus needs a positive argument, got {x!r}")
    return max(0.0, math.log2(x))


def rank_one_denominator(a, h_eff, snr: float) -> float:
    """``a^H (SNR^-1 I + h h^H)^-1 a / SNR`` via Sherman-Morrison.

    Equal to ``||a||^2 - SNR |h^H a|^2 / (1 + SNR ||h||^2)``. The difference is
    evaluated through the projection residual of ``a`` off ``h``, which keeps
    it nonnegative and free of cancellation when ``a`` is nearly parallel
    to ``h``.
    """
    a = as_coeff_array(a)
    h = np.asarray(h_eff, dtype=complex)
    _check_lengths(a, h)
    a2 = float(np.vdot(a, a).real)
    h2 = float(np.vdot(h, h).real)
    if h2 == 0.0:
        return a2
    # ||h||^2 ||a||^2 - |h^H a|^2 == || ||h||^2 a - (h^H a) h ||^2 / ||h||^2
    resid = h2 * a - np.vdot(h, a) * h
    cross = float(np.vdot(resid, resid).real) / h2
    return (a2 + snr * cross) / (1.0 + snr * h2)


def _ratio_to_rate(ratio_inv: float, snr: float) -> float:
    if ratio_inv < DENOMINATOR_FLOOR:
        warnings.warn(
            f"rate denominator {ratio_inv:.3e} below floor; ratio capped",
            RateSaturationWarning, stacklevel=3)
        return log_plus(snr / DENOMINATOR_FLOOR)
    return log_plus(1.0 / ratio_inv)


def computation_rate_direct(a, h_eff, snr: float) -> float:
    """Computation rate ``log+(SNR / a^H (SNR^-1 I + h h^H)^-1 a)``.

    Parameters
    ----------
    a : CoefficientVector or array_like
        Nonzero Gaussian-integer vector.
    h_eff : array_like
        Effective channel, same length as ``a``.
    snr : float
        Linear SNR.
    """
    a = as_coeff_array(a)
    if not np.any(a):
        raise ValueError("coefficient vector must be nonzero")
    return _ratio_to_rate(rank_one_denominator(a, h_eff, snr), snr)


def computation_rate_solve(a, h_eff, snr: float) -> float:
    """Same rate as :func:`computation_rate_direct` via a dense K x K solve.

    Cross-check path only; O(K^3).
    """
    a = as_coeff_array(a)
    h = np.asarray(h_eff, dtype=complex)
    _check_lengths(a, h)
    if not np.any(a):
        raise ValueError("coefficient vector must be nonzero")
    A = np.eye(a.size) / snr + np.outer(h, h.conj())
    quad = float(np.vdot(a, np.linalg.solve(A, a)).real)
    return _ratio_to_rate(quad / snr, snr)


def optimal_beta(h_eff, a, snr: float) -> complex:
    """MMSE scaling ``SNR h^H a / (1 + SNR ||h||^2)``."""
    a = as_coeff_array(a)
    h = np.asarray(h_eff, dtype=complex)
    _check_lengths(a, h)
    return complex(snr * np.vdot(h, a) / (1.0 + snr * np.vdot(h, h).real))


def beta_denominator(a, h_eff, snr: float, beta: complex) -> float:
    """``|beta|^2 + SNR ||beta h - a||^2``."""
    a = as_coeff_array(a)
    h = np.asarray(h_eff, dtype=complex)
    _check_lengths(a, h)
    r = beta * h - a
    return abs(beta) ** 2 + snr * float(np.vdot(r, r).real)


def computation_rate_beta(a, h_eff, snr: float, beta: complex) -> float:
    """Rate ``log+(SNR / (|beta|^2 + SNR ||beta h - a||^2))`` for a given beta."""
    den = beta_denominator(a, h_eff, snr, beta)
    return _ratio_to_rate(den / snr, snr)


def rate_at_optimal_beta(chan: ChannelRealization, theta, a, snr: float) -> float:
    """Rate achieved by phases ``theta`` with the receiver using its best beta."""
    return computation_rate_direct(a, effective_channel(chan, theta), snr)
