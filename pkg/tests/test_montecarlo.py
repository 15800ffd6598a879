import math

import numpy as np
import pytest

from src.core import basic, design, extensions
from src.core.design import FpcParams, FtsParams, IcParams
from src.core.extensions import MultihopParams
from src.core.fades import LinkDistanceLaw
from src.core.montecarlo import create_instance, engine
from src.core.montecarlo.engine import SimConfig
from src.core.params import NetworkParams, Regime
from src.core.shotnoise import SnSpec
from src.utils.errors import ParameterError


def _within(estimate, value, sigmas=4.0):
    sigma = math.sqrt(max(value * (1.0 - value), 1e-12) / estimate.trials)
    return abs(estimate.mean - value) <= sigmas * sigma


def test_partition_plan():
    assert engine.partition_plan(25000) == [(0, 10000), (1, 10000), (2, 5000)]
    assert engine.partition_plan(10000) == [(0, 10000)]
    assert engine.partition_plan(7) == [(0, 7)]


def test_sim_config_validation(planar):
    with pytest.raises(ParameterError):
        SimConfig("basic", planar, trials=0)
    with pytest.raises(ParameterError):
        SimConfig("relay", planar)
    with pytest.raises(ParameterError):
        SimConfig("basic", planar, confidence=1.0)


def test_factory():
    assert create_instance("basic", NetworkParams(d=2, lam=0.1)).name == "basic"
    with pytest.raises(ParameterError):
        create_instance("vld", NetworkParams(d=2, lam=0.1))
    with pytest.raises(ParameterError):
        create_instance("relay", NetworkParams(d=2, lam=0.1))


def test_basic_matches_exact(small_trials):
    params = NetworkParams(d=2, lam=0.02, alpha=4.0, tau=5.0)
    estimate = engine.estimate_op(SimConfig("basic", params, **small_trials))
    assert estimate.regime == Regime.EMPIRICAL
    assert _within(estimate, basic.op_exact_half(params))
    assert estimate.metadata["seed"] == small_trials["seed"]
    assert estimate.metadata["window_radius"] > params.xi
    assert estimate.metadata["truncation_bias_bound"] <= 1e-3 * params.threshold * (1.0 + 1e-9)


def test_rayleigh_matches_exact(small_trials):
    params = NetworkParams(d=2, lam=0.05, alpha=4.0, tau=5.0)
    estimate = engine.estimate_op(SimConfig("fading", params, **small_trials))
    assert _within(estimate, extensions.op_tc_rayleigh_exact(params).op)


def test_mrc_matches_closed_form(small_trials):
    # n_R = 2 时 q = 1 - e^{-a}(1 + aδ)，a = λ C_α
    params = NetworkParams(d=2, lam=0.05, alpha=4.0, tau=1.0)
    a = params.lam * math.pi * math.gamma(1.5) * math.gamma(0.5)
    exact = 1.0 - math.exp(-a) * (1.0 + 0.5 * a)
    estimate = engine.estimate_op(SimConfig("mrc", params, options={"n_r": 2}, **small_trials))
    assert _within(estimate, exact)


def test_result_is_independent_of_thread_count(monkeypatch):
    params = NetworkParams(d=2, lam=0.05, alpha=4.0, tau=1.0)
    cfg = SimConfig("fading", params, trials=25000, seed=3)
    monkeypatch.setattr(engine, "MAX_WORKERS", 1)
    single = engine.estimate_op(cfg)
    monkeypatch.setattr(engine, "MAX_WORKERS", 4)
    pooled = engine.estimate_op(cfg)
    assert single.mean == pooled.mean
    assert pooled.metadata["plan"]["chunks"] == 3


def test_cancellation_respects_lower_bound(small_trials):
    network = NetworkParams(d=2, lam=0.025, alpha=4.0, tau=1.0)
    ic = IcParams(network, kappa=0.05, K=3, P_min=1.0)
    estimate = engine.estimate_op(SimConfig("ic", ic, **small_trials))
    lb = design.ic_op_lb(ic)
    assert estimate.mean >= lb - 4.0 * math.sqrt(lb * (1.0 - lb) / estimate.trials)
    plain = engine.estimate_op(SimConfig("basic", network, **small_trials))
    assert estimate.mean <= plain.mean


def test_empirical_tc_matches_exact():
    params = NetworkParams(d=2, lam=0.01, alpha=4.0, tau=1.0)
    estimate = engine.estimate_tc(SimConfig("basic", params, trials=100000, seed=11), 0.1)
    assert estimate.mean == pytest.approx(basic.tc_exact_half(params, 0.1), rel=0.1)
    assert estimate.metadata["q_star"] == 0.1


def test_empirical_tc_below_noise_floor():
    params = NetworkParams(d=2, lam=0.01, alpha=4.0, N=0.1, tau=1.0)
    cfg = SimConfig("fading", params, trials=1000, seed=1)
    assert cfg.build().outage_floor() == pytest.approx(1.0 - math.exp(-0.1))
    estimate = engine.estimate_tc(cfg, 0.05)
    assert estimate.mean == 0.0


def test_fts_lambda_sweep(planar_tau5):
    model = create_instance("fts", FtsParams(planar_tau5, 0.1, 0.5))
    assert model.with_lambda(0.05).params.lam_hat == pytest.approx(0.05, rel=1e-12)
    assert model.attempt_intensity == pytest.approx(0.1 * math.exp(-0.5))


def test_sum_dominates_max(planar):
    spec = SnSpec(2, 0.1, 4.0)
    series = engine.estimate_sum_max_ratio(spec, [0.5, 1.0, 2.0, 5.0], SimConfig("basic", planar, trials=20000, seed=5))
    ccdf_sum = np.array(series.column("ccdf_sum"))
    ccdf_max = np.array(series.column("ccdf_max"))
    assert np.all(ccdf_sum >= ccdf_max)
    exact = np.array(series.column("ccdf_max_exact"))
    sigma = np.sqrt(exact * (1.0 - exact) / 20000)
    assert np.all(np.abs(ccdf_max - exact) <= 4.0 * sigma + 1e-12)
    ratio = np.array(series.column("ratio"))
    assert ratio[-1] <= ratio[0]
    with pytest.raises(ParameterError):
        engine.estimate_sum_max_ratio(SnSpec(2, 0.1, 4.0, epsilon=0.5), [1.0], SimConfig("basic", planar))


@pytest.mark.slow
def test_max_interferer_distribution(planar):
    _, pvalue = engine.max_sn_ks_test(SnSpec(2, 0.1, 4.0), SimConfig("basic", planar, trials=50000, seed=17))
    assert pvalue > 0.01


@pytest.mark.slow
def test_rayleigh_tc_matches_exact():
    params = NetworkParams(d=2, lam=0.01, alpha=4.0, tau=1.0)
    estimate = engine.estimate_tc(SimConfig("fading", params, trials=100000, seed=23), 0.1)
    assert estimate.mean == pytest.approx(extensions.op_tc_rayleigh_exact(params, q_star=0.1).tc, rel=0.1)


def test_empirical_tc_reports_exhausted_bisection(monkeypatch, caplog):
    monkeypatch.setattr(engine, "MC_TC_MAXITER", 1)
    params = NetworkParams(d=2, lam=0.01, alpha=4.0, tau=1.0)
    with caplog.at_level("WARNING"):
        estimate = engine.estimate_tc(SimConfig("basic", params, trials=2000, seed=3), 0.1)
    assert estimate.metadata["converged"] is False
    assert estimate.metadata["iterations_max"] == 1
    assert any(record.levelname == "WARNING" for record in caplog.records)


def test_empirical_tc_marks_convergence():
    params = NetworkParams(d=2, lam=0.01, alpha=4.0, tau=1.0)
    estimate = engine.estimate_tc(SimConfig("basic", params, trials=20000, seed=11), 0.1)
    assert estimate.metadata["converged"] is True


def test_sum_over_max_tends_to_one(planar):
    spec = SnSpec(2, 0.1, 4.0)
    series = engine.estimate_sum_max_ratio(spec, [1.0, 10.0, 100.0, 1000.0],
                                           SimConfig("basic", planar, trials=20000, seed=5))
    ratio = series.column("ratio")
    assert ratio[-1] == pytest.approx(1.0, rel=0.1)


def test_mrc_outage_decreases_with_receive_antennas(small_trials):
    params = NetworkParams(d=2, lam=0.05, alpha=4.0, tau=1.0)
    ops = [engine.estimate_op(SimConfig("mrc", params, options={"n_r": n}, **small_trials)).mean
           for n in (1, 2, 4)]
    assert ops[0] > ops[1] > ops[2]


def test_constant_power_control_matches_rayleigh(small_trials):
    network = NetworkParams(d=2, lam=0.05, alpha=4.0, tau=1.0)
    estimate = engine.estimate_op(SimConfig("fpc", FpcParams(network, 0.0), **small_trials))
    assert _within(estimate, extensions.op_tc_rayleigh_exact(network).op)


def test_fractional_power_control_respects_lower_bound(small_trials):
    p = FpcParams(NetworkParams(d=2, lam=0.05, alpha=4.0, tau=1.0), 0.5)
    estimate = engine.estimate_op(SimConfig("fpc", p, **small_trials))
    lb = design.fpc_op_lb(p)
    assert estimate.mean >= lb - 4.0 * math.sqrt(lb * (1.0 - lb) / estimate.trials)


def test_multihop_hop_matches_closed_form(small_trials):
    mp = MultihopParams(U=10.0, A=6, lam=0.01)
    estimate = engine.estimate_op(SimConfig("multihop", mp, options={"M": 4}, **small_trials))
    assert _within(estimate, extensions.per_hop_op(mp, 4))


def test_variable_link_distance_matches_exact(small_trials):
    params = NetworkParams(d=2, lam=0.05, alpha=4.0, tau=1.0)
    law = LinkDistanceLaw.nearest_neighbor(1.0)
    estimate = engine.estimate_op(SimConfig("vld", params, options={"law": law}, **small_trials))
    assert _within(estimate, extensions.op_tc_vld(params, law, 0.1, variant="exact").op)


@pytest.mark.slow
def test_interval_coverage():
    params = NetworkParams(d=2, lam=0.02, alpha=4.0, tau=5.0)
    exact = basic.op_exact_half(params)
    hits = 0
    for seed in range(200):
        lo, hi = engine.estimate_op(SimConfig("basic", params, trials=2000, seed=seed)).interval
        hits += lo <= exact <= hi
    assert hits >= 190
