import math

import numpy as np
import pytest

from src.core import basic, design, extensions
from src.core.design import FpcParams, FtsParams, IcParams, SpectrumParams
from src.core.fades import FadeDistribution
from src.core.params import NetworkParams
from src.utils.errors import ParameterError

LN2 = math.log(2.0)


def _grid_argmax_nu(delta, ebno):
    nu_max = design.spectrum_nu_max(ebno)
    nu = np.arange(1e-4, nu_max, 1e-4)
    inner = 1.0 / np.expm1(nu * LN2) - 1.0 / (ebno * nu)
    values = np.where(inner > 0, nu * np.clip(inner, 0.0, None) ** delta, -np.inf)
    return nu[np.argmax(values)]


# ================= 多频带 =================
def test_nu_max_fixed_point():
    with pytest.raises(ParameterError):
        design.spectrum_nu_max(LN2)
    with pytest.raises(ParameterError):
        design.spectrum_nu_max(0.5)
    for ebno in (1.0, 2.0, 10.0, 1e4):
        nu = design.spectrum_nu_max(ebno)
        assert nu > 0
        assert nu == pytest.approx(math.log2(1.0 + ebno * nu), rel=1e-9)


@pytest.mark.parametrize("ebno", [1.0, 2.0, 5.0, 10.0])
@pytest.mark.parametrize("delta", [0.25, 0.5, 0.75])
def test_optimal_nu_maximises_objective(ebno, delta):
    nu_star = design.optimal_spectral_efficiency_nu(delta, ebno)
    assert nu_star == pytest.approx(_grid_argmax_nu(delta, ebno), abs=1e-3)


def test_optimal_nu_monotone():
    by_ebno = [design.optimal_spectral_efficiency_nu(0.5, e) for e in (1.0, 2.0, 5.0, 10.0, 100.0)]
    assert all(a < b for a, b in zip(by_ebno, by_ebno[1:]))
    by_delta = [design.optimal_spectral_efficiency_nu(d, 5.0) for d in (0.25, 0.5, 0.75)]
    assert all(a > b for a, b in zip(by_delta, by_delta[1:]))


def test_optimal_nu_limits():
    for delta in (0.25, 0.5, 0.75):
        assert design.optimal_spectral_efficiency_nu(delta, 1e8) == pytest.approx(
            design.nu_star_high_snr(delta), rel=1e-3)
    ebno = LN2 * 1.01
    assert design.spectrum_nu_max(ebno) == pytest.approx(design.nu_max_low_snr(ebno), rel=0.05)
    assert design.optimal_spectral_efficiency_nu(0.5, ebno) == pytest.approx(
        design.nu_star_low_snr(ebno, 0.5), rel=0.05)


def test_optimal_nu_from_spectrum_params():
    p = SpectrumParams()
    assert design.optimal_spectral_efficiency(p) == design.optimal_spectral_efficiency_nu(p.delta, p.ebno)
    assert design.optimal_band_count(p).nu_star == design.optimal_spectral_efficiency(p)


def test_band_objective_scales_spectral_form():
    p = SpectrumParams()
    for B in (1, 3, 5):
        nu = p.R * B / p.W
        assert design.spectrum_objective(p, B) == pytest.approx(
            p.W / p.R * design.spectrum_objective_nu(nu, p.delta, p.ebno), rel=1e-12)


def test_optimal_band_count():
    p = SpectrumParams()
    choice = design.optimal_band_count(p)
    assert choice.continuous == pytest.approx(choice.nu_star * p.W / p.R)
    neighbours = {max(math.floor(choice.continuous), 1), max(math.ceil(choice.continuous), 1)}
    assert choice.integer in neighbours
    best = design.spectrum_objective(p, choice.integer)
    for b in neighbours:
        try:
            assert best >= design.spectrum_objective(p, b)
        except ParameterError:
            continue
    tc = design.spectrum_tc(p, 0.1)
    assert tc == pytest.approx(design.spectrum_kappa(p, 0.1) * design.spectrum_objective(p, choice.integer))
    assert tc > 0


def test_spectrum_params_validation():
    with pytest.raises(ParameterError):
        SpectrumParams(B=0)
    with pytest.raises(ParameterError):
        SpectrumParams(W=-1.0)


# ================= 干扰消除 =================
@pytest.fixture
def ic_network():
    return NetworkParams(d=2, lam=0.025, alpha=4.0, tau=1.0)


def test_ic_reduces_to_plain_lower_bound(ic_network):
    plain = basic.op_lb(ic_network)
    assert design.ic_op_lb(IcParams(ic_network, kappa=0.05, K=0)) == pytest.approx(plain, rel=1e-12)
    assert design.ic_op_lb(IcParams(ic_network, kappa=1.0, K=3)) == pytest.approx(plain, rel=1e-12)


def test_ic_monotonicity(ic_network):
    by_k = [design.ic_op_lb(IcParams(ic_network, kappa=0.05, K=k)) for k in range(0, 6)]
    assert all(b <= a + 1e-10 for a, b in zip(by_k, by_k[1:]))
    by_kappa = [design.ic_op_lb(IcParams(ic_network, kappa=k, K=3)) for k in (0.0, 0.01, 0.1, 0.5, 1.0)]
    assert all(b >= a - 1e-10 for a, b in zip(by_kappa, by_kappa[1:]))
    by_pmin = [design.ic_op_lb(IcParams(ic_network, kappa=0.05, K=3, P_min=p)) for p in (0.01, 0.1, 1.0, 10.0)]
    assert all(b >= a - 1e-10 for a, b in zip(by_pmin, by_pmin[1:]))


def test_perfect_cancellation_is_best(ic_network):
    perfect = design.ic_perfect_op_lb(ic_network, 3)
    assert perfect <= design.ic_op_lb(IcParams(ic_network, kappa=0.05, K=3)) + 1e-10
    assert 0.0 <= perfect < basic.op_lb(ic_network)


def test_ic_params_validation(ic_network):
    with pytest.raises(ParameterError):
        IcParams(ic_network, kappa=1.5)
    with pytest.raises(ParameterError):
        IcParams(ic_network, K=-1)
    with pytest.raises(ParameterError):
        IcParams(ic_network, P_min=0.0)


# ================= 衰落门限调度 =================
def test_fts_b_value(planar_tau5, rayleigh):
    assert design.fts_b(planar_tau5, rayleigh) == pytest.approx(6.226, abs=1e-3)


def test_fts_threshold_maximises_throughput(planar_tau5, rayleigh):
    lambda_pot = 0.1
    choice = design.fts_optimal_threshold(planar_tau5, lambda_pot)
    assert not choice.clamped
    h_star = choice.h_hat
    b = design.fts_b(planar_tau5, rayleigh)
    lhs = rayleigh.cond_neg_moment(0.5, h_star) + h_star ** -0.5 * rayleigh.ccdf(h_star)
    assert lhs == pytest.approx(1.0 / (b * lambda_pot), rel=1e-9)
    grid = np.arange(h_star - 0.1, h_star + 0.1, 1e-3)
    tps = [design.fts_asymptotic(FtsParams(planar_tau5, lambda_pot, h))[1] for h in grid]
    assert grid[int(np.argmax(tps))] == pytest.approx(h_star, abs=2e-3)


def test_fts_lower_bound_below_asymptote(planar_tau5):
    p = FtsParams(planar_tau5, 0.1, 0.5)
    assert p.lam_hat == pytest.approx(0.1 * math.exp(-0.5))
    op, tp = design.fts_asymptotic(p)
    assert design.fts_op_lb(p) <= op
    assert design.fts_tp_ub(p) >= tp


def test_scheduling_comparison_ordering(planar_tau5):
    for lam_hat in np.linspace(0.005, 0.05, 10):
        cmp = design.fts_comparison(planar_tau5, lam_hat, 0.1)
        assert cmp.fading_no_scheduling <= cmp.no_fading <= cmp.threshold_scheduling
        assert cmp.h_hat == pytest.approx(-math.log(lam_hat / 0.1))
    with pytest.raises(ParameterError):
        design.fts_comparison(planar_tau5, 0.2, 0.1)


def test_fts_validation(planar_tau5):
    with pytest.raises(ParameterError):
        FtsParams(planar_tau5, 0.1, -0.1)
    with pytest.raises(ParameterError):
        FtsParams(planar_tau5, -0.1, 0.5)
    with pytest.raises(ParameterError):
        design.fts_optimal_threshold(NetworkParams(d=2, lam=0.1, N=0.01), 0.1)


# ================= 分数功率控制 =================
def _fpc_slope(network, f):
    return design.fpc_asymptotic(FpcParams(network, f), 0.1).notes["slope"]


def test_fpc_rayleigh_slope():
    network = NetworkParams(d=2, lam=1e-3, alpha=4.0, tau=2.0)
    base = network.c_d * network.tau ** network.delta * network.u ** network.d
    for f in (0.0, 0.25, 0.5, 0.8):
        expected = base * design.fpc_rayleigh_slope_factor(network.delta, f)
        assert _fpc_slope(network, f) == pytest.approx(expected, rel=1e-10)
    assert _fpc_slope(network, 0.2) == pytest.approx(_fpc_slope(network, 0.8), rel=1e-10)
    rayleigh_slope = extensions.op_tc_rayleigh_exact(network).notes["slope"]
    assert _fpc_slope(network, 0.0) == pytest.approx(rayleigh_slope, rel=1e-10)


def test_fpc_half_is_optimal():
    fs = np.linspace(0.0, 1.0, 41)[:-1]
    factors = [design.fpc_rayleigh_slope_factor(0.5, f) for f in fs]
    assert fs[int(np.argmin(factors))] == pytest.approx(0.5)


def test_fpc_power_moments():
    _, variance = design.fpc_power_moments(0.3)
    assert math.isfinite(variance) and variance > 0
    for f in (0.5, 0.7):
        moments, variance = design.fpc_power_moments(f)
        assert math.isinf(variance)
        assert math.isinf(moments[2])
    moments, variance = design.fpc_power_moments(0.0)
    assert moments[1] == pytest.approx(1.0) and variance == pytest.approx(0.0, abs=1e-12)
    with pytest.raises(ParameterError):
        design.fpc_power_moments(1.0)


def test_fpc_lower_bound_below_asymptote():
    network = NetworkParams(d=2, lam=0.01, alpha=4.0, tau=1.0)
    p = FpcParams(network, 0.5)
    assert design.fpc_op_lb(p) <= design.fpc_asymptotic(p, 0.1).op
    assert design.fpc_q0(p) == 0.0


def test_fpc_noise_floor():
    network = NetworkParams(d=2, lam=0.01, alpha=4.0, tau=1.0, N=0.05)
    p = FpcParams(network, 0.5)
    q0 = design.fpc_q0(p)
    assert 0.0 < q0 < 1.0
    pair = design.fpc_asymptotic(p, 0.5)
    assert pair.op >= q0
    assert pair.notes["q0"] == q0


def test_fpc_validation(planar):
    with pytest.raises(ParameterError):
        FpcParams(planar, 1.0)
    with pytest.raises(ParameterError):
        FpcParams(NetworkParams(d=2, lam=0.1, epsilon=0.5), 0.5)
