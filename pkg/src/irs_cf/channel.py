"""System parameters, coefficient vectors and Rayleigh channel sampling.

All random draws go through :func:`substream`, which derives an independent
``numpy.random.Generator`` from a master seed and an integer key path using
``numpy.random.SeedSequence`` spawn keys. The key layout is stable:

* ``(i, 0)``      channel realization ``i``
* ``(i, 1, j)``   initial phase vector ``j`` of realization ``i``
* ``(i, 2)``      random-phase baseline draws of realization ``i``

so every work unit can be recomputed in isolation, in any order.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

STREAM_CHANNEL = 0
STREAM_INIT = 1
STREAM_RANDOM_PHASE = 2


def substream(master_seed: int, *key: int) -> np.random.Generator:
    """Return a generator for the work unit identified by ``key``."""
    ss = np.random.SeedSequence(int(master_seed), spawn_key=tuple(int(k) for k in key))
    return np.random.default_rng(ss)


class CoefficientVector:
    """Gaussian-integer coefficient vector ``a``.

    Parameters
    ----------
    entries : sequence of complex or int
        One Gaussian integer per user. Real and imaginary parts must be
        integral and at least one entry must be nonzero.
    """

    __slots__ = ("_pairs",)

    def __init__(self, entries: Sequence[complex | int]):
        pairs = []
        for e in entries:
            z = complex(e)
            if z.real != int(z.real) or z.imag != int(z.imag):
                raise ValueError(f"coefficient {e!r} is not a Gaussian integer")
            pairs.append((int(z.real), int(z.imag)))
        if not pairs:
            raise ValueError("coefficient vector must be non-empty")
        if all(p == (0, 0) for p in pairs):
            raise ValueError("coefficient vector must not be all zero")
        self._pairs = tuple(pairs)

    @classmethod
    def ones(cls, k: int) -> "CoefficientVector":
        return cls([1] * k)

    @property
    def pairs(self) -> tuple[tuple[int, int], ...]:
        return self._pairs

    def __len__(self) -> int:
        return len(self._pairs)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, CoefficientVector) and self._pairs == other._pairs

    def __hash__(self) -> int:
        return hash(self._pairs)

    def __repr__(self) -> str:
        return f"CoefficientVector({self.format()!r})"

    def to_array(self) -> np.ndarray:
        return np.array([complex(re, im) for re, im in self._pairs], dtype=complex)

    def format(self) -> str:
        """Render as ``"1+0i,0-2i"``; parsed back by :func:`irs_cf.cli.parse_coeffs`."""
        return ",".join(f"{re}{im:+d}i" for re, im in self._pairs)


def as_coeff_array(a) -> np.ndarray:
    """Complex ndarray view of ``a`` (a CoefficientVector or array-like)."""
    if isinstance(a, CoefficientVector):
        return a.to_array()
    return np.asarray(a, dtype=complex)


@dataclass(frozen=True)
class SystemParams:
    """Static description of one scenario: K users, M IRS elements, SNR, a."""

    num_users: int
    num_irs_elements: int
    snr_linear: float
    coeffs: CoefficientVector
    direct_link_enabled: bool = True

    def __post_init__(self):
        if self.num_users < 1:
            raise ValueError("num_users must be >= 1")
        if self.num_irs_elements < 0:
            raise ValueError("num_irs_elements must be >= 0")
        if not self.snr_linear > 0:
            raise ValueError("snr_linear must be positive")
        if not isinstance(self.coeffs, CoefficientVector):
            object.__setattr__(self, "coeffs", CoefficientVector(self.coeffs))
        if len(self.coeffs) != self.num_users:
            raise ValueError(
                f"coeffs has length {len(self.coeffs)}, expected {self.num_users}")

    @classmethod
    def from_db(cls, num_users, num_irs_elements, snr_db, coeffs=None,
                direct_link_enabled=True) -> "SystemParams":
        if coeffs is None:
            coeffs = CoefficientVector.ones(num_users)
        return cls(num_users, num_irs_elements, db_to_linear(snr_db), coeffs,
                   direct_link_enabled)


def db_to_linear(snr_db: float) -> float:
    return 10.0 ** (snr_db / 10.0)


@dataclass(frozen=True, eq=False)
class ChannelRealization:
    """One draw of every link.

    Attributes
    ----------
    direct : ndarray, shape (K,)
        User-to-BS links ``h``.
    user_irs : ndarray, shape (K, M)
        User-to-IRS matrix ``G``.
    irs_bs : ndarray, shape (M,)
        IRS-to-BS vector ``h_s``.

    The effective channel is ``h + G diag(e^{j theta}) h_s``. Arrays are
    made read-only so a realization can be shared between workers.
    """

    direct: np.ndarray
    user_irs: np.ndarray
    irs_bs: np.ndarray

    def __post_init__(self):
        h = np.array(self.direct, dtype=complex).reshape(-1)
        G = np.array(self.user_irs, dtype=complex)
        hs = np.array(self.irs_bs, dtype=complex).reshape(-1)
        if G.ndim != 2:
            G = G.reshape(h.size, -1)
        if G.shape != (h.size, hs.size):
            raise ValueError(
                f"user_irs has shape {G.shape}, expected {(h.size, hs.size)}")
        for name, arr in (("direct", h), ("user_irs", G), ("irs_bs", hs)):
            if not np.all(np.isfinite(arr)):
                raise ValueError(f"{name} contains non-finite entries")
            arr.flags.writeable = False
        object.__setattr__(self, "direct", h)
        object.__setattr__(self, "user_irs", G)
        object.__setattr__(self, "irs_bs", hs)

    @property
    def num_users(self) -> int:
        return self.direct.size

    @property
    def num_irs_elements(self) -> int:
        return self.irs_bs.size

    def cascaded(self) -> np.ndarray:
        """``G diag(h_s)``: column m is ``h_s[m] * G[:, m]``."""
        return self.user_irs * self.irs_bs[np.newaxis, :]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ChannelRealization):
            return NotImplemented
        return (np.array_equal(self.direct, other.direct)
                and np.array_equal(self.user_irs, other.user_irs)
                and np.array_equal(self.irs_bs, other.irs_bs))

    __hash__ = None


def complex_gaussian(rng: np.random.Generator, shape) -> np.ndarray:
    """i.i.d. CN(0, 1) samples: real and imaginary parts each N(0, 1/2)."""
    re = rng.standard_normal(shape)
    im = rng.standard_normal(shape)
    return (re + 1j * im) * np.sqrt(0.5)


def sample_channel(params: SystemParams, rng: np.random.Generator) -> ChannelRealization:
    """Draw a Rayleigh-faded realization for ``params``.

    The draw order is fixed (G, h_s, then h) so that disabling the direct
    link leaves the IRS links of the same stream unchanged.
    """
    K, M = params.num_users, params.num_irs_elements
    G = complex_gaussian(rng, (K, M))
    hs = complex_gaussian(rng, M)
    h = complex_gaussian(rng, K)
    if not params.direct_link_enabled:
        h = np.zeros(K, dtype=complex)
    return ChannelRealization(h, G, hs)


def random_phases(rng: np.random.Generator, m: int) -> np.ndarray:
    """Uniform angles on [0, 2pi)."""
    return rng.uniform(0.0, 2.0 * np.pi, size=m)
