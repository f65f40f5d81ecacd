import numpy as np
import pytest

from irs_cf.baselines import ALL_METHODS, MethodId
from irs_cf.channel import SystemParams, sample_channel, substream
from irs_cf.baselines import no_irs_rate
from irs_cf.montecarlo import (
    EvalConfig,
    SweepSpec,
    SweepVariable,
    evaluate_point,
    evaluate_realizations,
    paper_scale_configs,
    resolve_workers,
    run_sweep,
    summarize,
)

SMALL = dict(num_chnl_realz=12, num_init_point=3, n_random_phase=4, master_seed=5)


def test_summarize_against_two_pass_reference():
    rng = np.random.default_rng(0)
    x = rng.gamma(2.0, 1.5, 257)
    st = summarize(MethodId.AO_AVG, x)
    mean = np.sum(x) / x.size
    sd = np.sqrt(np.sum((x - mean) ** 2) / (x.size - 1))
    assert st.mean_bits == pytest.approx(mean, rel=1e-12)
    assert st.stderr_bits == pytest.approx(sd / np.sqrt(x.size), rel=1e-12)
    assert st.num_realizations == 257
    assert np.isnan(summarize(MethodId.NO_IRS, [1.0]).stderr_bits)


def test_methods_sorted_by_name():
    cfg = EvalConfig(methods=(MethodId.RND_PHZ_MAX, MethodId.AO_MAX, MethodId.NO_IRS))
    assert [m.value for m in cfg.methods] == ["AoMax", "NoIrs", "RndPhzMax"]


def test_eval_config_validation():
    with pytest.raises(ValueError):
        EvalConfig(num_chnl_realz=0)
    with pytest.raises(ValueError):
        EvalConfig(n_random_phase=0)


def test_no_irs_only_is_mean_of_direct_rates():
    p = SystemParams.from_db(2, 4, 5)
    cfg = EvalConfig(methods=(MethodId.NO_IRS,), **SMALL)
    (st,) = evaluate_point(p, cfg, workers=1)
    ref = [no_irs_rate(sample_channel(p, substream(5, i, 0)), p.coeffs, p.snr_linear)
           for i in range(12)]
    assert st.mean_bits == pytest.approx(np.mean(ref), rel=1e-12)


def test_evaluate_point_deterministic():
    p = SystemParams.from_db(2, 3, 5)
    cfg = EvalConfig(**SMALL)
    assert evaluate_point(p, cfg, workers=1) == evaluate_point(p, cfg, workers=1)


def test_worker_count_does_not_change_results():
    p = SystemParams.from_db(2, 3, 5)
    cfg = EvalConfig(**SMALL)
    serial = evaluate_realizations(p, cfg, workers=1)
    parallel = evaluate_realizations(p, cfg, workers=3)
    np.testing.assert_array_equal(serial, parallel)


def test_per_realization_dominance():
    p = SystemParams.from_db(2, 5, 5)
    cfg = EvalConfig(**SMALL)
    s = evaluate_realizations(p, cfg, workers=1)
    col = {m: s[:, k] for k, m in enumerate(cfg.methods)}
    assert np.all(col[MethodId.AO_MAX] >= col[MethodId.AO_AVG])
    assert np.all(col[MethodId.RND_PHZ_MAX] >= col[MethodId.RND_PHZ_AVG])


def test_shared_draws_ao_dominates_random():
    p = SystemParams.from_db(2, 5, 5)
    cfg = EvalConfig(shared_draws=True, **SMALL)
    s = evaluate_realizations(p, cfg, workers=1)
    col = {m: s[:, k] for k, m in enumerate(cfg.methods)}
    assert np.all(col[MethodId.AO_AVG] >= col[MethodId.RND_PHZ_AVG] - 1e-10)
    assert np.all(col[MethodId.AO_MAX] >= col[MethodId.RND_PHZ_MAX] - 1e-10)


def test_m_zero_collapse():
    p = SystemParams.from_db(3, 0, 10)
    cfg = EvalConfig(**SMALL)
    s = evaluate_realizations(p, cfg, workers=1)
    for k in range(s.shape[1]):
        np.testing.assert_array_equal(s[:, k], s[:, cfg.methods.index(MethodId.NO_IRS)])


def test_sweep_validation():
    base = SystemParams.from_db(2, 4, 5)
    with pytest.raises(ValueError):
        SweepSpec(base, SweepVariable.SNR_DB, ())
    with pytest.raises(ValueError):
        SweepSpec(base, SweepVariable.SNR_DB, (5, 0))
    with pytest.raises(ValueError):
        SweepSpec(base, SweepVariable.NUM_IRS_ELEMENTS, (1.5, 3))


def test_single_point_sweep_equals_evaluate_point():
    base = SystemParams.from_db(2, 4, 5)
    cfg = EvalConfig(**SMALL)
    table = run_sweep(SweepSpec(base, SweepVariable.SNR_DB, (5.0,), cfg), workers=1)
    assert [st for _, st in table.rows] == evaluate_point(base, cfg, workers=1)


def test_sweep_over_m_with_zero_row():
    base = SystemParams.from_db(2, 0, 5)
    cfg = EvalConfig(**SMALL)
    table = run_sweep(SweepSpec(base, SweepVariable.NUM_IRS_ELEMENTS, (0, 2), cfg), workers=1)
    assert len(table.rows) == 2 * len(ALL_METHODS)
    no_irs = table.stats(0, MethodId.NO_IRS)
    for m in (MethodId.AO_AVG, MethodId.AO_MAX):
        assert table.stats(0, m).mean_bits == no_irs.mean_bits
        assert table.stats(0, m).stderr_bits == no_irs.stderr_bits
    values = [v for v, _ in table.rows]
    assert values == sorted(values)


def test_snr_sweep_converts_db():
    base = SystemParams.from_db(2, 4, 0)
    spec = SweepSpec(base, SweepVariable.SNR_DB, (0, 10))
    assert spec.params_at(10.0).snr_linear == pytest.approx(10.0)


def test_paper_scale_preset():
    cfgs = paper_scale_configs(3)
    assert cfgs["ao"].num_chnl_realz == 350 and cfgs["ao"].num_init_point == 35
    assert cfgs["random"].num_chnl_realz == 5350


def test_resolve_workers(monkeypatch):
    monkeypatch.setenv("IRS_CF_THREADS", "3")
    assert resolve_workers() == 3
    assert resolve_workers(2) == 2
    monkeypatch.delenv("IRS_CF_THREADS")
    assert resolve_workers() >= 1
