import math

import numpy as np
import pytest

from src.core import extensions, mimo
from src.core.mimo import AntennaConfig, SdmaCluster
from src.core.params import NetworkParams
from src.core.specfun import gamma
from src.utils.errors import DomainError, ParameterError


@pytest.fixture
def link():
    return NetworkParams(d=2, lam=1e-3, alpha=4.0, tau=1.0)


def _slope(ns, values):
    return np.polyfit(np.log(ns), np.log(values), 1)[0]


def test_single_antenna_mrc_is_rayleigh(link):
    op = mimo.mrc_op(link, AntennaConfig(n_r=1))
    rayleigh = extensions.op_tc_rayleigh_exact(link).notes["slope"] * link.lam
    assert op == pytest.approx(rayleigh, rel=1e-12)


def test_diversity_factor_forms_agree():
    for delta in (0.25, 0.5, 0.8):
        for n in (1, 2, 5, 16, 40):
            assert mimo.mrc_diversity_factor(n, delta) == pytest.approx(mimo.mrc_diversity_series(n, delta), rel=1e-10)
    with pytest.raises(ParameterError):
        mimo.mrc_diversity_factor(0, 0.5)


def test_mrc_tc_sandwich(link):
    for alpha in (3.0, 4.0, 6.0):
        params = NetworkParams(d=2, lam=1e-3, alpha=alpha)
        for n in (1, 2, 4, 8, 16, 32):
            cap = mimo.mrc_tc(params, AntennaConfig(n_r=n), 0.1)
            assert cap.lb * (1.0 - 1e-9) <= cap.tc <= cap.ub * (1.0 + 1e-9)
    with pytest.raises(DomainError):
        mimo.mrc_tc(link, AntennaConfig(), 1.0)


def test_mrc_capacity_grows_like_n_to_delta(link):
    ns = np.array([256, 512, 1024])
    tcs = [mimo.mrc_tc(link, AntennaConfig(n_r=int(n)), 0.1).tc for n in ns]
    assert _slope(ns, tcs) == pytest.approx(link.delta, abs=0.05)


def test_pzf_lower_bound_grows_linearly(link):
    theta = mimo.theta_star(link.alpha)
    ns = np.array([64, 128, 256, 512, 1024])
    lbs = [mimo.pzf_tc_lb(link, int(n), round(theta * n), 0.1) for n in ns]
    assert all(lb is not None and lb > 0 for lb in lbs)
    assert _slope(ns, lbs) == pytest.approx(1.0, abs=0.1)


def test_pzf_feasibility(link):
    assert mimo.pzf_op_ub(link, 8, 1) is None
    assert mimo.pzf_op_ub(link, 16, 5) is not None
    bounds = mimo.pzf_bounds(link, AntennaConfig(n_r=16, z=8), 0.1)
    assert bounds.theta_star == pytest.approx(0.5)
    assert bounds.z_star == 8
    assert bounds.tc_lb <= bounds.tc_ub


def test_upper_bound_special_cases(link):
    for n in (2, 4, 8):
        assert mimo.mrc_tc_ub(link, n, 0.1) == pytest.approx(mimo.pzf_tc_ub(link, n, 0, 0.1, l=2), rel=1e-12)
    with pytest.raises(ParameterError):
        mimo.pzf_tc_ub(link, 4, 0, 0.1, l=1)
    with pytest.raises(ParameterError):
        mimo.pzf_tc_ub(link, 4, 4, 0.1)
    assert mimo.mmse_tc_ub(link, 4, 0.1) > mimo.mrc_tc_ub(link, 4, 0.1)


def test_eigen_beamforming_bounds(link):
    lb, ub = mimo.eigenbf_ocd_bounds(link, AntennaConfig(n_t=2, n_r=4), 0.1)
    base = 0.1 / mimo.c_alpha(4.0)
    assert lb == pytest.approx(4.0 ** 0.5 * base)
    assert ub == pytest.approx(gamma(0.5) * 8.0 ** 0.5 * base)


def test_optimal_streams(link):
    cfg = AntennaConfig(n_t=4, n_r=4)
    assert mimo.sm_optimal_streams(link, cfg, "mrc").integer == 2
    assert mimo.sm_optimal_streams(link, cfg, "zf").integer == 2
    assert mimo.sm_optimal_streams(link, cfg, "pzf").integer == 1
    assert mimo.sm_optimal_streams(link, cfg, "blast_d").integer == 4
    with pytest.raises(ParameterError):
        mimo.sm_optimal_streams(link, cfg, "mmse")


def test_stream_count_compares_neighbours():
    # K_raw = 2.56，但 K^{0.8}(3.2 - K)^{0.2} 在 2 处更大
    params = NetworkParams(d=2, lam=1e-3, alpha=10.0, tau=1.25)
    choice = mimo.sm_optimal_streams(params, AntennaConfig(n_t=4, n_r=4), "mrc")
    assert choice.raw == pytest.approx(2.56)
    assert choice.integer == 2


def test_z_star_maximises_lower_bound(link):
    for n_r in (7, 9, 15, 21):
        z_star = mimo.pzf_bounds(link, AntennaConfig(n_r=n_r, z=4), 0.1).z_star
        raw = mimo.theta_star(link.alpha) * n_r
        assert z_star in (math.floor(raw), math.ceil(raw))
        for z in (math.floor(raw), math.ceil(raw)):
            assert mimo.pzf_tc_lb(link, n_r, z_star, 0.1) >= mimo.pzf_tc_lb(link, n_r, z, 0.1)


def test_infeasible_pzf_is_labelled(link):
    bounds = mimo.pzf_bounds(link, AntennaConfig(n_r=8, z=1), 0.1)
    assert bounds.op_ub is None and bounds.tc_lb is None
    assert bounds.notes["infeasible"] == "infeasible: z outside (2, 7)"
    assert "infeasible" not in mimo.pzf_bounds(link, AntennaConfig(n_r=16, z=5), 0.1).notes


def test_vblast_ratio():
    assert mimo.vblast_dblast_ratio(4.0) == pytest.approx(math.sqrt(2.0), rel=1e-12)
    below = mimo.vblast_dblast_ratio(4.0 - 1e-9)
    above = mimo.vblast_dblast_ratio(4.0 + 1e-9)
    assert below == pytest.approx(above, rel=1e-6)


def test_sdma_f_forms_agree():
    for alpha in (3.0, 4.0):
        assert mimo.sdma_f(1, alpha) == pytest.approx(1.0, rel=1e-12)
        for order in range(5, 21):
            direct = mimo.sdma_f(order, alpha, method="sum")
            integral = mimo.sdma_f(order, alpha, method="integral")
            assert direct == pytest.approx(integral, rel=1e-8)
    with pytest.raises(ParameterError):
        mimo.sdma_f(0, 4.0)


def test_sdma_j_closed_form():
    for alpha in (3.0, 4.0, 6.0):
        p = 2.0 / alpha
        assert mimo.sdma_j(1, alpha) == pytest.approx(mimo.c_alpha(alpha), rel=1e-12)
        for K in (2, 5, 30):
            closed = math.pi * gamma(1.0 - p) * math.exp(math.lgamma(K + p) - math.lgamma(K))
            assert mimo.sdma_j(K, alpha) == pytest.approx(closed, rel=1e-10)
    with pytest.raises(ParameterError):
        mimo.sdma_j(0, 4.0)


def test_sdma_j_limit():
    for alpha in (3.0, 4.0):
        ratio = mimo.sdma_j(100, alpha) / 100 ** (2.0 / alpha)
        assert ratio == pytest.approx(mimo.sdma_j_limit(alpha), rel=0.05)


def test_sdma_bounds(link):
    cluster = SdmaCluster(0.5, 1.0)
    cfg = AntennaConfig(n_t=4, n_r=4, K=2)
    bounds = mimo.sdma_dpc_tc_bounds(link, cluster, cfg, 0.1)
    assert bounds.diversity_order == 4 * 3
    assert 0.0 < bounds.lb <= bounds.ub
    lower, upper = mimo.sdma_scaling(4, 4, 2, 4.0)
    assert lower <= upper
    with pytest.raises(ParameterError):
        SdmaCluster(1.0, 0.5)


def test_antenna_config_validation():
    with pytest.raises(ParameterError):
        AntennaConfig(n_t=0)
    with pytest.raises(ParameterError):
        AntennaConfig(n_t=2, n_r=2, K=3)
    with pytest.raises(ParameterError):
        AntennaConfig(n_r=2, z=2)
