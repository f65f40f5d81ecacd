import math

import numpy as np
import pytest

from irs_cf.baselines import (
    MethodId,
    ao_over_inits,
    ao_rates,
    no_irs_rate,
    random_phase_rates,
)
from irs_cf.channel import ChannelRealization, substream
from irs_cf.rate import rate_at_optimal_beta

from conftest import random_channel


def test_method_parse():
    assert MethodId.parse("rnd-phz-max") is MethodId.RND_PHZ_MAX
    assert MethodId.parse("AoAvg") is MethodId.AO_AVG
    assert MethodId.parse("no_irs") is MethodId.NO_IRS
    with pytest.raises(ValueError):
        MethodId.parse("best")


def test_no_irs_rate_values(rng):
    zero = ChannelRealization([0, 0], np.ones((2, 3)), np.ones(3))
    assert no_irs_rate(zero, [1, 1], 10.0) == 0.0
    single = ChannelRealization([1], np.zeros((1, 4)), np.zeros(4))
    assert no_irs_rate(single, [1], 10.0) == pytest.approx(math.log2(11))
    chan = random_channel(rng, 3, 5)
    other = ChannelRealization(chan.direct, rng.standard_normal((3, 9)), np.ones(9))
    assert no_irs_rate(chan, [1, 1, 1], 2.0) == no_irs_rate(other, [1, 1, 1], 2.0)
    with pytest.raises(ValueError):
        no_irs_rate(chan, [0, 0, 0], 2.0)


def test_random_phase_rates(rng):
    h = np.array([0.5, -0.3j])
    flat = ChannelRealization(h, np.zeros((2, 4)), np.ones(4))
    rates = random_phase_rates(flat, [1, 1], 5.0, 8, substream(1, 0))
    assert np.all(rates == no_irs_rate(flat, [1, 1], 5.0))

    chan = random_channel(rng, 2, 6)
    r1 = random_phase_rates(chan, [1, 1], 5.0, 12, substream(4, 2))
    r2 = random_phase_rates(chan, [1, 1], 5.0, 12, substream(4, 2))
    np.testing.assert_array_equal(r1, r2)
    assert r1.max() >= r1.mean()
    assert np.all(r1 >= 0)
    with pytest.raises(ValueError):
        random_phase_rates(chan, [1, 1], 5.0, 0, substream(4, 2))


def test_ao_over_inits(rng):
    chan = random_channel(rng, 2, 6)
    inits = [rng.uniform(0, 2 * np.pi, 6) for _ in range(5)]
    res = ao_over_inits(chan, [1, 1], 3.0, inits)
    rates = ao_rates(res)
    assert rates.max() >= rates.mean()
    for init, r in zip(inits, res):
        assert r.rate_bits >= rate_at_optimal_beta(chan, init, [1, 1], 3.0) - 1e-10
    single = ao_rates(ao_over_inits(chan, [1, 1], 3.0, inits[:1]))
    assert single.max() == single.mean()
    with pytest.raises(ValueError):
        ao_over_inits(chan, [1, 1], 3.0, [])
