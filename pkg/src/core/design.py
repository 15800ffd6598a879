#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
网络设计问题
多频带划分、(κ, K, P_min) 干扰消除、衰落门限调度 (FTS)、分数功率控制 (FPC)
"""

import math
import logging
from dataclasses import dataclass, field

from scipy import stats

from src.core.fades import FadeDistribution, singular_quad
from src.core.params import NetworkParams, OpTcPair, Regime
from src.core.shotnoise import sn_ccdf_inverse
from src.core.solvers import bracketed_root, expand_upper, fixed_point
from src.core.specfun import ball_coefficient, gamma
from src.utils.errors import DomainError, NumericalError, ParameterError

logger = logging.getLogger(__name__)

LN2 = math.log(2.0)


def _require_q(q_star):
    if not (0.0 < q_star < 1.0):
        raise DomainError(f"target outage must lie in (0,1): q*={q_star}")


# ================= 多频带 =================
@dataclass(frozen=True)
class SpectrumParams:
    """多频带参数

    Attributes:
        P_dbw: 发送功率 (dBW)
        W: 总带宽 (Hz)
        R: 目标速率 (bps)
        eta: 噪声功率谱密度 (W/Hz)
        B: 频带数
    """
    d: int = 2
    u: float = 1.0
    alpha: float = 4.0
    P_dbw: float = 3.0
    W: float = 10e6
    R: float = 1e6
    eta: float = 1e-6
    B: int = 1

    def __post_init__(self):
        ball_coefficient(self.d)
        if not self.alpha > self.d:
            raise ParameterError(f"alpha must exceed d (alpha={self.alpha}, d={self.d})")
        if self.W <= 0 or self.R <= 0 or self.eta <= 0 or self.u <= 0:
            raise ParameterError("W, R, eta and u must be positive")
        if self.B < 1:
            raise ParameterError(f"band count must be >= 1: B={self.B}")

    @property
    def delta(self):
        return self.d / self.alpha

    @property
    def P(self):
        return 10.0 ** (self.P_dbw / 10.0)

    @property
    def received(self):
        return self.P * self.u ** -self.alpha

    @property
    def snr(self):
        """全带宽 SNR：P u^{-α}/(ηW)"""
        return self.received / (self.eta * self.W)

    @property
    def ebno(self):
        """单位比特能量 ε_b/η = P u^{-α}/(ηR)"""
        return self.received / (self.eta * self.R)

    @property
    def nu(self):
        return self.R * self.B / self.W


def spectrum_objective_nu(nu, delta, ebno):
    """ω̃(ν) = ν(1/(2^ν - 1) - 1/(ε_b ν))^δ"""
    if nu <= 0:
        raise ParameterError(f"spectral efficiency must be positive: {nu}")
    inner = 1.0 / math.expm1(nu * LN2) - 1.0 / (ebno * nu)
    if inner < 0:
        raise ParameterError(f"infeasible spectral efficiency {nu:.6g}: SINR target exceeds SNR")
    return nu * inner ** delta


def spectrum_objective(p, B=None):
    """ω(B) = B(1/(2^{RB/W} - 1) - 1/(snr·B))^δ"""
    B = p.B if B is None else B
    if B <= 0:
        raise ParameterError(f"band count must be positive: {B}")
    tau = math.expm1(p.R * B / p.W * LN2)
    inner = 1.0 / tau - 1.0 / (p.snr * B)
    if inner < 0:
        raise ParameterError(f"infeasible band count {B}: SINR target exceeds SNR")
    return B * inner ** p.delta


def _require_ebno(ebno):
    if not ebno > LN2:
        raise ParameterError(f"energy per bit must exceed ln 2 (ebno={ebno:.6g})")


def nu_max_low_snr(ebno):
    """ε_b/η → ln 2 时 ν_max 的展开 2(ε-ln2)/(ln2(2ε-ln2))"""
    return 2.0 * (ebno - LN2) / (LN2 * (2.0 * ebno - LN2))


def nu_star_low_snr(ebno, delta):
    """ε_b/η → ln 2 时 ν* 的展开"""
    gap = ebno - LN2
    return 2.0 * (1.0 - delta) * gap / (LN2 * (LN2 - (1.0 - 2.0 * delta) * gap))


def spectrum_nu_max(ebno):
    """ν = log₂(1 + ε_b ν) 的正不动点；0 是排斥点，普通迭代收敛到它"""
    _require_ebno(ebno)
    seed = max(nu_max_low_snr(ebno), 1e-6)
    try:
        return fixed_point(lambda nu: math.log1p(ebno * nu) / LN2, seed, what="maximum spectral efficiency")
    except NumericalError:
        logger.warning("不动点迭代未收敛，改用区间求根")
    gap = lambda nu: math.log1p(ebno * nu) / LN2 - nu
    lo, hi = expand_upper(gap, 1e-9, 1.0, what="maximum spectral efficiency")
    return bracketed_root(gap, lo, hi, what="maximum spectral efficiency")


def optimal_spectral_efficiency_nu(delta, ebno):
    """ν*：ε ν(2^ν-1) - (1-δ)(2^ν-1)² - δ ln2 ε ν² 2^ν 在 (0, ν_max) 内的根"""
    _require_ebno(ebno)
    nu_max = spectrum_nu_max(ebno)

    def stationarity(nu):
        x = math.expm1(nu * LN2)
        return ebno * nu * x - (1.0 - delta) * x ** 2 - delta * LN2 * ebno * nu ** 2 * (x + 1.0)

    return bracketed_root(stationarity, 1e-8 * nu_max, nu_max, xtol=1e-12 * nu_max,
                          what="optimal spectral efficiency")


def optimal_spectral_efficiency(p):
    """SpectrumParams 下的 ν*，由 p.delta 与 p.ebno 决定"""
    return optimal_spectral_efficiency_nu(p.delta, p.ebno)


def nu_star_high_snr(delta):
    """高 SNR 极限：1 - 2^{-ν} = ln2·δ·ν 的正根"""
    if not (0.0 < delta < 1.0):
        raise ParameterError(f"delta must lie in (0,1): {delta}")
    gap = lambda nu: -math.expm1(-nu * LN2) - LN2 * delta * nu
    return bracketed_root(gap, 1e-9, 1.0 / (LN2 * delta), what="high-SNR spectral efficiency")


def spectrum_kappa(p, q_star):
    """κ(q*) = 2(1-q*)/(c_d u^d (F̄^{-1}(q*))^δ)"""
    _require_q(q_star)
    y_star = sn_ccdf_inverse(p.delta, q_star)
    return 2.0 * (1.0 - q_star) / (ball_coefficient(p.d) * p.u ** p.d * y_star ** p.delta)


@dataclass(frozen=True)
class BandChoice:
    continuous: float
    integer: int
    nu_star: float


def optimal_band_count(p):
    """B* = ν* W/R，整数解取 floor/ceil 中 ω 较大者"""
    nu_star = optimal_spectral_efficiency(p)
    b_cont = nu_star * p.W / p.R
    best = None
    for b in {max(math.floor(b_cont), 1), max(math.ceil(b_cont), 1)}:
        try:
            value = spectrum_objective(p, b)
        except ParameterError:
            continue
        if best is None or value > best[0] or (value == best[0] and b < best[1]):
            best = (value, b)
    if best is None:
        raise NumericalError(f"no feasible integer band count near {b_cont:.6g}")
    return BandChoice(b_cont, best[1], nu_star)


def spectrum_tc(p, q_star, B=None):
    """TC = κ(q*)·ω(B)，B 为空时取最优整数 B"""
    B = optimal_band_count(p).integer if B is None else B
    return spectrum_kappa(p, q_star) * spectrum_objective(p, B)


# ================= 干扰消除 =================
@dataclass(frozen=True)
class IcParams:
    """干扰消除参数：残余比例 κ、最多消除 K 个、可解码最小功率 P_min"""
    network: NetworkParams
    kappa: float = 0.05
    K: int = 3
    P_min: float = 1.0

    def __post_init__(self):
        if not (0.0 <= self.kappa <= 1.0):
            raise ParameterError(f"kappa must lie in [0,1]: {self.kappa}")
        if self.K < 0:
            raise ParameterError(f"cancellation count must be nonnegative: K={self.K}")
        if self.P_min <= 0:
            raise ParameterError(f"P_min must be positive: {self.P_min}")


def _ic_lb(network, kappa, K, cap):
    if network.epsilon != 0:
        raise ParameterError(f"cancellation bound requires epsilon = 0 (epsilon={network.epsilon})")
    half_mass = network.lam * network.c_d / 2.0
    xi_d = network.xi ** network.d
    t_pc_dom = half_mass * kappa ** network.delta * xi_d
    t_uc_dom = half_mass * xi_d

    def survive(t_pc):
        return math.exp(-2.0 * min(t_pc, t_pc_dom) - 2.0 * max(t_uc_dom - t_pc, 0.0))

    if K == 0 or cap == 0:
        return 1.0 - survive(0.0)
    # |t_K| ~ Gamma(K, rate 2)
    law = stats.gamma(K, scale=0.5)
    upper = cap if math.isfinite(cap) else law.isf(1e-16)
    kinks = [t for t in (t_pc_dom, t_uc_dom) if 0.0 < t < upper]
    body = singular_quad(lambda t: survive(t) * law.pdf(t), 0.0, upper, points=kinks or None)
    tail = survive(cap) * law.sf(cap) if math.isfinite(cap) else 0.0
    return min(max(1.0 - body - tail, 0.0), 1.0)


def ic_op_lb(p):
    """干扰消除下的 OP 下界

    q_lb = 1 - E[exp(-2 min(t_pc, t_pc_dom)) exp(-2(t_uc_dom - t_pc)^+)]，
    t_pc = min(|t_K|, (λc_d/2)(P/P_min)^δ)
    """
    net = p.network
    if p.kappa == 1.0:
        return _ic_lb(net, 1.0, 0, 0.0)
    cap = net.lam * net.c_d / 2.0 * (net.P / p.P_min) ** net.delta
    return _ic_lb(net, p.kappa, p.K, cap)


def ic_perfect_op_lb(network, K):
    """完美消除最近 K 个 (κ = 0, P_min → 0)：q = 1 - E[exp(-2(t_uc_dom - |t_K|)^+)]"""
    return _ic_lb(network, 0.0, K, math.inf)


# ================= 衰落门限调度 =================
@dataclass(frozen=True)
class FtsParams:
    """FTS：衰落超过 ĥ 的潜在发送者才发送"""
    network: NetworkParams
    lambda_pot: float
    h_hat: float
    fade: FadeDistribution = field(default_factory=FadeDistribution.rayleigh)

    def __post_init__(self):
        net = self.network
        floor = 0.0 if net.N == 0 else net.tau / net.snr
        if self.lambda_pot < 0:
            raise ParameterError(f"potential intensity must be nonnegative: {self.lambda_pot}")
        if self.h_hat < floor or (net.N > 0 and self.h_hat == floor):
            raise ParameterError(f"threshold must exceed tau/snr (h_hat={self.h_hat}, floor={floor:.6g})")

    @property
    def lam_hat(self):
        """λ̂ = λ_pot F̄(ĥ)"""
        return self.lambda_pot * self.fade.ccdf(self.h_hat)


def _fts_signal_moment(p):
    """E[(ĥ₀₀/(τu^α) - N/P)^{-δ}]，ĥ₀₀ 服从截断在 ĥ 以上的衰落"""
    net = p.network
    delta = net.delta
    scale = net.tau * net.u ** net.alpha
    tail = p.fade.ccdf(p.h_hat)
    if tail <= 0:
        raise NumericalError(f"threshold {p.h_hat} leaves no fade mass")
    if net.N == 0:
        return scale ** delta * p.fade.cond_neg_moment(delta, p.h_hat) / tail
    noise = net.N / net.P
    total = p.fade.expect(lambda h: (h / scale - noise) ** -delta, lower=p.h_hat, singularity=delta)
    return total / tail


def fts_asymptotic(p):
    """渐近 OP 与 TP：q = c_d E[h^δ] E[(ĥ₀₀/(τu^α) - N/P)^{-δ}] λ̂，Λ = λ̂(1 - q)"""
    net = p.network
    slope = net.c_d * p.fade.frac_moment(net.delta) * _fts_signal_moment(p)
    op = slope * p.lam_hat
    return min(op, 1.0), p.lam_hat * max(1.0 - op, 0.0)


@dataclass(frozen=True)
class ThresholdChoice:
    h_hat: float
    clamped: bool


def fts_b(network, fade):
    """b = c_d τ^δ u^d E[h^δ]"""
    return network.c_d * network.tau ** network.delta * network.u ** network.d * fade.frac_moment(network.delta)


def fts_optimal_threshold(network, lambda_pot, fade=None):
    """N = 0 时 TP 最优门限：E[h^{-δ}1{h>ĥ}] + ĥ^{-δ}F̄(ĥ) = 1/(bλ_pot)，左边严格递减"""
    fade = fade or FadeDistribution.rayleigh()
    if network.N != 0:
        raise ParameterError("optimal threshold equation assumes N = 0")
    if lambda_pot <= 0:
        raise ParameterError(f"potential intensity must be positive: {lambda_pot}")
    delta = network.delta
    target = 1.0 / (fts_b(network, fade) * lambda_pot)

    def gap(h):
        return fade.cond_neg_moment(delta, h) + h ** -delta * fade.ccdf(h) - target

    lo, hi = fade.support
    lo = max(lo, 1e-12)
    if gap(lo) <= 0:
        logger.warning(f"门限方程在支撑集内无根，ĥ* 取下端 {lo:.6g}")
        return ThresholdChoice(lo, True)
    if math.isinf(hi):
        lo, hi = expand_upper(gap, lo, 1.0, what="FTS threshold")
    elif gap(hi) > 0:
        logger.warning(f"门限方程在支撑集内无根，ĥ* 取上端 {hi:.6g}")
        return ThresholdChoice(hi, True)
    return ThresholdChoice(bracketed_root(gap, lo, hi, xtol=1e-12, what="FTS threshold"), False)


def fts_op_lb(p):
    """1 - E[exp(-λ̂ c_d E[h^δ](ĥ₀₀/(τu^α) - N/P)^{-δ})]，对截断信号衰落取期望"""
    net = p.network
    delta = net.delta
    theta = p.lam_hat * net.c_d * p.fade.frac_moment(delta)
    if theta == 0:
        return 0.0
    scale = net.tau * net.u ** net.alpha
    noise = net.N / net.P
    tail = p.fade.ccdf(p.h_hat)

    def survive(h):
        excess = h / scale - noise
        return math.exp(-theta * excess ** -delta) if excess > 0 else 0.0

    return 1.0 - p.fade.expect(survive, lower=p.h_hat) / tail


def fts_tp_ub(p):
    return p.lam_hat * (1.0 - fts_op_lb(p))


@dataclass(frozen=True)
class SchedulingComparison:
    no_fading: float
    fading_no_scheduling: float
    threshold_scheduling: float
    h_hat: float


def fts_comparison(network, lam_hat, lambda_pot, fade=None):
    """信号与干扰衰落同分布、N = 0 时三种渐近 TP，a = ½ c_d τ^δ u^d"""
    fade = fade or FadeDistribution.rayleigh()
    if not (0.0 < lam_hat <= lambda_pot):
        raise ParameterError(f"need 0 < lam_hat <= lambda_pot ({lam_hat}, {lambda_pot})")
    delta = network.delta
    a = 0.5 * network.c_d * network.tau ** delta * network.u ** network.d
    h_hat = fade.ccdf_inverse(lam_hat / lambda_pot)
    moment = fade.frac_moment(delta)
    truncated = fade.cond_neg_moment(delta, h_hat) / fade.ccdf(h_hat)
    return SchedulingComparison(
        lam_hat * (1.0 - a * lam_hat),
        lam_hat * (1.0 - a * moment * fade.frac_moment(-delta) * lam_hat),
        lam_hat * (1.0 - a * moment * truncated * lam_hat),
        h_hat,
    )


# ================= 分数功率控制 =================
@dataclass(frozen=True)
class FpcParams:
    """发送功率 P·h^{-f}/E[h^{-f}]，f = 0 为定功率，f = 1 为信道反转"""
    network: NetworkParams
    f: float
    signal: FadeDistribution = field(default_factory=FadeDistribution.rayleigh)
    own: FadeDistribution = field(default_factory=FadeDistribution.rayleigh)
    cross: FadeDistribution = field(default_factory=FadeDistribution.rayleigh)

    def __post_init__(self):
        if not self.f < 1.0:
            raise ParameterError(f"power-control exponent must be below 1: f={self.f}")
        if self.network.epsilon != 0:
            raise ParameterError("power-control formulas require epsilon = 0")


def fpc_q0(p):
    """q_f(0) = F_{h₀₀}((τ/snr·E[h₀₀^{-f}])^{1/(1-f)})"""
    net = p.network
    if net.N == 0:
        return 0.0
    return p.signal.cdf(_fpc_floor(p))


def _fpc_floor(p):
    net = p.network
    if net.N == 0:
        return 0.0
    return (net.tau / net.snr * p.signal.frac_moment(-p.f)) ** (1.0 / (1.0 - p.f))


def _fpc_interference_constant(p):
    """E[h₁₀^δ] E[h₁₁^{-fδ}] E[h₁₁^{-f}]^{-δ}"""
    delta = p.network.delta
    return p.cross.frac_moment(delta) * p.own.frac_moment(-p.f * delta) * p.own.frac_moment(-p.f) ** -delta


def _fpc_signal_terms(p):
    net = p.network
    norm = p.signal.frac_moment(-p.f)
    return norm * net.tau * net.u ** net.alpha, net.N / net.P, _fpc_floor(p)


def fpc_asymptotic(p, q_star):
    """FPC 渐近 OP/TC：q = 1 - (1 - aλ)(1 - q_f(0))"""
    _require_q(q_star)
    net = p.network
    delta, e = net.delta, 1.0 - p.f
    constant = _fpc_interference_constant(p)
    scale, noise, floor = _fpc_signal_terms(p)
    q0 = fpc_q0(p)
    if net.N == 0:
        cond = scale ** delta * p.signal.frac_moment(-e * delta)
    else:
        cond = p.signal.expect(lambda h: (h ** e / scale - noise) ** -delta,
                               lower=floor, singularity=delta) / (1.0 - q0)
    a = net.c_d * constant * cond
    if not math.isfinite(a):
        return OpTcPair(1.0, 0.0, Regime.ASYMPTOTIC, {"slope": math.inf, "q0": q0})
    op = 1.0 - (1.0 - min(a * net.lam, 1.0)) * (1.0 - q0)
    lam_star = max(1.0 - (1.0 - q_star) / (1.0 - q0), 0.0) / a
    return OpTcPair(min(op, 1.0), lam_star * (1.0 - q_star), Regime.ASYMPTOTIC, {"slope": a, "q0": q0})


def fpc_rayleigh_slope_factor(delta, f):
    """全 Rayleigh、N = 0 时斜率中的 Γ(1+δ)Γ(1-fδ)Γ(1-(1-f)δ)"""
    if f * delta >= 1 or (1.0 - f) * delta >= 1:
        return math.inf
    return gamma(1.0 + delta) * gamma(1.0 - f * delta) * gamma(1.0 - (1.0 - f) * delta)


def fpc_op_lb(p):
    """FPC 下界 1 - E[exp(-λ a (h₀₀^{1-f}/(E[h₀₀^{-f}]τu^α) - N/P)^{-δ})]"""
    net = p.network
    delta, e = net.delta, 1.0 - p.f
    a = net.c_d * _fpc_interference_constant(p)
    if not math.isfinite(a):
        return 1.0
    scale, noise, floor = _fpc_signal_terms(p)
    if net.N == 0:
        return 1.0 - p.signal.mgf_neg_power(e * delta, net.lam * a * scale ** delta)

    def survive(h):
        excess = h ** e / scale - noise
        return math.exp(-net.lam * a * excess ** -delta) if excess > 0 else 0.0

    return 1.0 - p.signal.expect(survive, lower=floor)


def fpc_power_moments(f, P=1.0, orders=(1, 2)):
    """Rayleigh 信道下发送功率的矩

    Returns:
        (moments, variance): moments[p] = (P/Γ(1-f))^p Γ(1-pf)，pf ≥ 1 时为 inf；
        variance = P²(Γ(1-2f)/Γ(1-f)² - 1)，f ≥ 1/2 时为 inf
    """
    if not f < 1.0:
        raise ParameterError(f"power-control exponent must be below 1: f={f}")
    base = P / gamma(1.0 - f)
    moments = {order: (base ** order * gamma(1.0 - order * f) if order * f < 1 else math.inf)
               for order in orders}
    variance = P ** 2 * (gamma(1.0 - 2.0 * f) / gamma(1.0 - f) ** 2 - 1.0) if f < 0.5 else math.inf
    return moments, variance
