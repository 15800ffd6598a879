import math

import pytest

from src.core import basic
from src.core.params import NetworkParams, Regime
from src.core.specfun import normal_cdf
from src.utils.errors import DomainError, ParameterError


def test_network_params_validation():
    with pytest.raises(ParameterError):
        NetworkParams(d=2, alpha=2.0)
    with pytest.raises(ParameterError):
        NetworkParams(d=2, lam=-1.0)
    with pytest.raises(ParameterError):
        NetworkParams(d=2, u=1.0, P=1.0, N=0.5, tau=5.0)


def test_exact_op_half(planar):
    assert basic.op_exact_half(planar) == pytest.approx(0.306, abs=1e-3)
    assert basic.op_exact_half(planar.with_lambda(0.0)) == 0.0


def test_exact_op_requires_half(planar):
    with pytest.raises(ParameterError):
        basic.op_exact_half(NetworkParams(d=2, lam=0.1, alpha=3.0))
    with pytest.raises(DomainError):
        basic.tc_exact_half(planar, 1.0)


def test_tc_inverts_op(planar):
    for q in (0.01, 0.1, 0.4):
        tc = basic.tc_exact_half(planar, q)
        lam = tc / (1.0 - q)
        assert basic.op_exact_half(planar.with_lambda(lam)) == pytest.approx(q, rel=1e-9)


def test_general_forms_agree_at_half(planar_tau5):
    assert basic.op_exact_via_ccdf(planar_tau5) == pytest.approx(basic.op_exact_half(planar_tau5), rel=1e-10)
    assert basic.tc_general(planar_tau5, 0.1) == pytest.approx(basic.tc_exact_half(planar_tau5, 0.1), rel=1e-9)


def test_asymptote_is_small_lambda_slope(planar_tau5):
    params = planar_tau5.with_lambda(1e-6)
    pair = basic.op_tc_asymptotic(params, 0.1)
    assert pair.regime == Regime.ASYMPTOTIC
    assert basic.op_exact_half(params) == pytest.approx(pair.op, rel=1e-4)
    assert pair.tc == pytest.approx(1.0 / (math.pi * basic.sphere_packing_radius(params, 0.1) ** 2), rel=1e-12)


def test_throughput_optimum(planar_tau5):
    a = basic.dominant_volume(planar_tau5)
    assert a == pytest.approx(math.sqrt(5.0) * math.pi, rel=1e-12)
    assert round(a, 4) == 7.0248
    lam_opt, tp_max, op_opt = basic.tp_ub_optimum(planar_tau5)
    assert lam_opt == pytest.approx(0.1424, abs=1e-4)
    assert tp_max == pytest.approx(0.0524, abs=1e-4)
    assert op_opt == pytest.approx(1.0 - 1.0 / math.e, abs=1e-12)
    q_opt, tc_max = basic.tc_ub_optimum(planar_tau5)
    assert q_opt == pytest.approx(1.0 - 1.0 / math.e, abs=1e-12)
    assert tc_max == pytest.approx(tp_max, abs=1e-9)


def test_bound_sandwich(planar_tau5):
    for lam in (0.005, 0.01, 0.02, 0.05):
        params = planar_tau5.with_lambda(lam)
        exact = basic.op_exact_half(params)
        assert basic.op_lb(params) <= exact
        assert exact <= basic.op_ub_markov(params)
        assert exact <= basic.op_ub_chernoff(params)
        assert exact <= basic.op_ub_chebychev(params)


def test_lower_bound_pair(planar_tau5):
    pair = basic.op_lb_tc_ub(planar_tau5, 0.1)
    assert pair.regime == Regime.LOWER_BOUND
    assert pair.notes["tc_regime"] == Regime.UPPER_BOUND.value
    assert pair.tc >= basic.tc_exact_half(planar_tau5, 0.1)


def test_chebychev_becomes_trivial(planar_tau5):
    lam = basic.chebychev_threshold(planar_tau5)
    assert basic.op_ub_chebychev(planar_tau5.with_lambda(lam * 1.01)) == 1.0
    assert basic.op_ub_chebychev(planar_tau5.with_lambda(lam * 0.1)) < 1.0


def test_chernoff_exponent_vanishes_at_high_density(planar_tau5):
    assert basic.chernoff_exponent(planar_tau5.with_lambda(0.0)) == math.inf
    assert basic.chernoff_exponent(planar_tau5.with_lambda(0.001)) > 0.0


def test_normal_lower_bound():
    for z in (0.0, 0.3, 1.0, 3.0):
        assert basic.normal_cdf_lower_bound(z) <= normal_cdf(z) + 1e-15
    with pytest.raises(ParameterError):
        basic.normal_cdf_lower_bound(-1.0)


def test_slotted_aloha():
    tp, op = basic.slotted_aloha_limit(1.0)
    assert tp == pytest.approx(0.367879, abs=1e-6)
    assert op == pytest.approx(0.632121, abs=1e-6)
    tp_n, op_n = basic.slotted_aloha(10000, 1e-4)
    assert tp_n == pytest.approx(tp, abs=1e-4)
    assert op_n == pytest.approx(op, abs=1e-4)
    with pytest.raises(ParameterError):
        basic.slotted_aloha(0, 0.5)
