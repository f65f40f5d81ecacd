import numpy as np
import pytest

from irs_cf.channel import ChannelRealization, complex_gaussian


def random_coeffs(rng, k, span=3):
    while True:
        a = rng.integers(-span, span + 1, k) + 1j * rng.integers(-span, span + 1, k)
        if np.any(a):
            return a


def random_channel(rng, k, m, direct=True):
    h = complex_gaussian(rng, k) if direct else np.zeros(k, dtype=complex)
    return ChannelRealization(h, complex_gaussian(rng, (k, m)), complex_gaussian(rng, m))


def random_instance(rng, k_max=8, m_max=32, snr_range=(0.1, 100.0)):
    """(chan, a, snr, theta) with K, M and log-uniform SNR drawn from the ranges."""
    k = int(rng.integers(1, k_max + 1))
    m = int(rng.integers(0, m_max + 1))
    lo, hi = np.log(snr_range[0]), np.log(snr_range[1])
    snr = float(np.exp(rng.uniform(lo, hi)))
    chan = random_channel(rng, k, m)
    theta = rng.uniform(0, 2 * np.pi, m)
    return chan, random_coeffs(rng, k), snr, theta


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
