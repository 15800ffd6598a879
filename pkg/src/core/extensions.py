#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
模型扩展：衰落、可变链路距离、多跳
"""

import math
import logging
from dataclasses import dataclass

import numpy as np
from scipy import special, stats

from src.core.fades import FadeDistribution
from src.core.params import OpTcPair, Regime
from src.core.solvers import bracketed_root, expand_upper
from src.core.specfun import ball_coefficient, gamma, normal_cdf, reflection_product
from src.utils.errors import DomainError, NumericalError, ParameterError

logger = logging.getLogger(__name__)


def _require_q(q_star):
    if not (0.0 < q_star < 1.0):
        raise DomainError(f"target outage must lie in (0,1): q*={q_star}")


def _require_unguarded(params):
    if params.epsilon != 0:
        raise ParameterError(f"fading formulas require epsilon = 0 (epsilon={params.epsilon})")


def _noise_floor(params):
    """τ/snr：信号衰落低于它时即使没有干扰也中断"""
    return 0.0 if params.N == 0 else params.tau / params.snr


# ================= 衰落 =================
def op_tc_rayleigh_exact(params, interf_fade=None, q_star=None):
    """信号 Rayleigh 衰落下的精确 OP 与 TC

    q(λ) = 1 - exp(-λ c_d E[h^δ] Γ(1-δ) τ^δ u^d - τ/snr)

    Args:
        params: NetworkParams
        interf_fade: 干扰者衰落分布，默认 Rayleigh
        q_star: 目标 OP，为空时 tc 记为 0

    Returns:
        OpTcPair
    """
    _require_unguarded(params)
    interf_fade = interf_fade or FadeDistribution.rayleigh()
    delta = params.delta
    if interf_fade.kind == "rayleigh":
        factor = reflection_product(delta)
    else:
        factor = interf_fade.frac_moment(delta) * gamma(1.0 - delta)
    b = params.c_d * factor * params.tau ** delta * params.u ** params.d
    floor = _noise_floor(params)
    op = -math.expm1(-params.lam * b - floor)
    tc = 0.0
    if q_star is not None:
        _require_q(q_star)
        tc = max((-math.log1p(-q_star) - floor) / b, 0.0) * (1.0 - q_star)
    return OpTcPair(op, tc, Regime.EXACT, {"slope": b})


def _conditional_interference_moment(params, signal_fade):
    """E[(h₀/(τu^α) - N/P)^{-δ} · 1{h₀ > τ/snr}]"""
    delta = params.delta
    scale = params.tau * params.u ** params.alpha
    if params.N == 0:
        value = scale ** delta * signal_fade.frac_moment(-delta)
    else:
        floor = _noise_floor(params)
        noise = params.N / params.P
        value = signal_fade.expect(lambda h: (h / scale - noise) ** -delta if h > floor else 0.0,
                                   lower=floor, singularity=delta)
    if not math.isfinite(value):
        raise NumericalError("conditional signal-fade moment diverges")
    return value


def fading_outage_floor(params, signal_fade):
    """q(0) = F_{h₀}(τ/snr)"""
    return signal_fade.cdf(_noise_floor(params)) if params.N > 0 else 0.0


def op_tc_fading_asymptotic(params, signal_fade, interf_fade, q_star):
    """一般衰落下的渐近 OP/TC：q = 1 - (1 - aλ)(1 - q(0))"""
    _require_unguarded(params)
    _require_q(q_star)
    q0 = fading_outage_floor(params, signal_fade)
    if q0 >= 1.0:
        return OpTcPair(1.0, 0.0, Regime.ASYMPTOTIC, {"q0": q0})
    cond = _conditional_interference_moment(params, signal_fade) / (1.0 - q0)
    a = params.c_d * interf_fade.frac_moment(params.delta) * cond
    op = 1.0 - (1.0 - min(a * params.lam, 1.0)) * (1.0 - q0)
    lam_star = max(1.0 - (1.0 - q_star) / (1.0 - q0), 0.0) / a
    return OpTcPair(min(op, 1.0), lam_star * (1.0 - q_star), Regime.ASYMPTOTIC,
                    {"slope": a, "q0": q0})


def op_fading_lb_general_noise(params, signal_fade, interf_fade):
    """N > 0 时的下界 1 - E[exp(-λ c_d E[h^δ](h₀/(τu^α) - N/P)^{-δ}) · 1{h₀ > τ/snr}]"""
    _require_unguarded(params)
    delta = params.delta
    theta = params.lam * params.c_d * interf_fade.frac_moment(delta)
    scale = params.tau * params.u ** params.alpha
    noise = params.N / params.P
    floor = _noise_floor(params)

    def survive(h):
        excess = h / scale - noise
        return math.exp(-theta * excess ** -delta) if excess > 0 else 0.0

    return 1.0 - signal_fade.expect(survive, lower=floor)


def op_lb_fading(params, signal_fade, interf_fade):
    """衰落下的 OP 下界；N = 0 时是 -h₀^{-δ} 的 MGF 在 θ = λ c_d τ^δ u^d E[h^δ] 处的值"""
    _require_unguarded(params)
    if params.N > 0:
        return op_fading_lb_general_noise(params, signal_fade, interf_fade)
    delta = params.delta
    theta = params.lam * params.c_d * params.tau ** delta * params.u ** params.d * interf_fade.frac_moment(delta)
    return 1.0 - signal_fade.mgf_neg_power(delta, theta)


# ================= 可变链路距离 =================
def _require_vld(params):
    _require_unguarded(params)
    if params.N != 0:
        raise ParameterError("variable link distance formulas require N = 0")


def _invert_increasing(f, target, what):
    """求 λ > 0 使 f(λ) = target，f 单调增且 f(0) = 0"""
    lo, hi = expand_upper(lambda lam: f(lam) - target, 0.0, 1e-3, what=what)
    return bracketed_root(lambda lam: f(lam) - target, lo, hi, xtol=1e-14, what=what)


def op_tc_vld(params, law, q_star, variant="asymptotic"):
    """链路距离服从 law 时的 OP/TC

    variant:
        asymptotic   斜率 c_d τ^δ E[u^d]
        lower_bound  1 - E[exp(-λ c_d τ^δ u^d)]
        exact        δ = 1/2：2E[F_Z(√(π/2) u^d √τ c_d λ)] - 1
    """
    _require_vld(params)
    _require_q(q_star)
    c_d, delta, tau = params.c_d, params.delta, params.tau
    if variant == "asymptotic":
        slope = c_d * tau ** delta * law.moment_d
        return OpTcPair(min(slope * params.lam, 1.0), q_star / slope, Regime.ASYMPTOTIC, {"slope": slope})
    if variant == "lower_bound":
        def q_of(lam):
            return 1.0 - law.mgf_neg_power_d(lam * c_d * tau ** delta)
        if law.kind == "nearest_neighbor":
            lam_star = q_star * law.mu / ((1.0 - q_star) * tau ** delta)
        else:
            lam_star = _invert_increasing(q_of, q_star, "VLD lower bound")
        return OpTcPair(q_of(params.lam), lam_star * (1.0 - q_star), Regime.LOWER_BOUND,
                        {"tc_regime": Regime.UPPER_BOUND.value})
    if variant == "exact":
        if not math.isclose(delta, 0.5):
            raise ParameterError(f"exact variable-distance OP requires delta = 1/2 (delta={delta})")
        root = math.sqrt(math.pi / 2.0 * tau)

        def q_of(lam):
            return 2.0 * law.expect(lambda u: normal_cdf(root * u ** params.d * c_d * lam)) - 1.0

        lam_star = _invert_increasing(q_of, q_star, "VLD exact")
        return OpTcPair(max(q_of(params.lam), 0.0), lam_star * (1.0 - q_star), Regime.EXACT)
    raise ParameterError(f"unknown variable-distance variant: {variant}")


def vld_penalty(d):
    """最近邻距离下 E[u^d]/E[u]^d = 1/Γ(1+1/d)^d"""
    ball_coefficient(d)
    return 1.0 / gamma(1.0 + 1.0 / d) ** d


# ================= 多跳 =================
@dataclass(frozen=True)
class MultihopParams:
    """多跳路由参数

    Attributes:
        U: 端到端距离
        A: 端到端最多尝试次数
        lam, alpha, tau, P, N: 与 NetworkParams 相同
        d: 只支持 2
    """
    U: float
    A: int
    lam: float
    alpha: float = 4.0
    tau: float = 1.0
    P: float = 1.0
    N: float = 0.0
    d: int = 2

    def __post_init__(self):
        if self.d != 2:
            raise ParameterError(f"multihop model supports d = 2 only (d={self.d})")
        if self.A < 1:
            raise ParameterError(f"attempt budget must be >= 1: A={self.A}")
        if not self.alpha > self.d:
            raise ParameterError(f"alpha must exceed d (alpha={self.alpha}, d={self.d})")
        if self.U <= 0 or self.lam < 0:
            raise ParameterError("U > 0 and lambda >= 0 are required")

    @property
    def delta(self):
        return self.d / self.alpha

    @property
    def K(self):
        """K_α = π² δ csc(πδ)"""
        return math.pi * reflection_product(self.delta)


def per_hop_op(mp, M):
    """q(λ, M) = 1 - exp(-λ(πδc_d/sin πδ)τ^δ(U/M)^d - τ(N/P)(U/M)^α)"""
    if M < 1:
        raise ParameterError(f"hop count must be >= 1: M={M}")
    hop = mp.U / M
    exponent = mp.lam * mp.K * mp.tau ** mp.delta * hop ** mp.d + mp.tau * mp.N / mp.P * hop ** mp.alpha
    return -math.expm1(-exponent)


def pascal_success_probability(M, A, q):
    """P(T_M ≤ A)，T_M 为 M 次成功所需的尝试次数，单次成功概率 1 - q"""
    if M > A:
        return 0.0
    if q == 0:
        return 1.0
    return float(special.betainc(M, A - M + 1, 1.0 - q))


def _pascal_log_pmf(M, A, q):
    failures = np.arange(0, A - M + 1)
    return failures + M, stats.nbinom.logpmf(failures, M, 1.0 - q)


def pascal_success_probability_pmf(M, A, q):
    """同上，直接对负二项 PMF 求和"""
    if M > A:
        return 0.0
    if q == 0:
        return 1.0
    _, log_pmf = _pascal_log_pmf(M, A, q)
    return float(np.exp(special.logsumexp(log_pmf)))


def pascal_truncated_mean(M, A, q):
    """E[T_M ∧ A]"""
    if q == 0:
        return float(min(M, A))
    if M > A:
        return float(A)
    trials, log_pmf = _pascal_log_pmf(M, A, q)
    pmf = np.exp(log_pmf)
    return float(np.sum(trials * pmf) + A * max(1.0 - pmf.sum(), 0.0))


@dataclass(frozen=True)
class MultihopCapacity:
    exact: float
    ub: float
    best_hops: int
    best_hops_ub: int


def multihop_tc(mp):
    """λ_mh = λ·max_M P(T_M ≤ A)/E[T_M ∧ A]，上界 λ·max_M (1 - q(λ,M))/M"""
    best = (-1.0, 1)
    best_ub = (-1.0, 1)
    for M in range(1, mp.A + 1):
        q = per_hop_op(mp, M)
        ratio = pascal_success_probability(M, mp.A, q) / pascal_truncated_mean(M, mp.A, q)
        ratio_ub = (1.0 - q) / M
        if ratio > best[0]:
            best = (ratio, M)
        if ratio_ub > best_ub[0]:
            best_ub = (ratio_ub, M)
    logger.debug(f"多跳最优跳数: 精确 M={best[1]}, 上界 M={best_ub[1]}")
    return MultihopCapacity(mp.lam * best[0], mp.lam * best_ub[0], best[1], best_ub[1])


def hop_equation(alpha, k1, k2):
    """f(M) = M^α - 2k₂M^{α-2} - αk₁"""
    return lambda M: M ** alpha - 2.0 * k2 * M ** (alpha - 2.0) - alpha * k1


def hop_equation_root(alpha, k1, k2, closed_form=True):
    """f(M) = 0 的最大正根；α = 3, 4 时可用闭式"""
    if k1 == 0:
        return math.sqrt(2.0 * k2)
    if closed_form and alpha == 4:
        return math.sqrt(k2 + math.sqrt(k2 ** 2 + 4.0 * k1))
    if closed_form and alpha == 3:
        # M³ - 2k₂M - 3k₁ = 0，按判别式符号选 Cardano 或三角形式
        disc = 9.0 * k1 ** 2 / 4.0 - 8.0 * k2 ** 3 / 27.0
        if disc >= 0:
            # 两个立方根之积为 2k₂/3，第二个由乘积求出
            first = float(np.cbrt(1.5 * k1 + math.sqrt(disc)))
            return first + 2.0 * k2 / (3.0 * first)
        r = math.sqrt(2.0 * k2 / 3.0)
        return 2.0 * r * math.cos(math.acos(1.5 * k1 / r ** 3) / 3.0)
    f = hop_equation(alpha, k1, k2)
    lo, hi = expand_upper(f, 0.0, 1.0, what="hop equation")
    return bracketed_root(f, lo, hi, xtol=1e-13 * hi, what="hop equation")


@dataclass(frozen=True)
class HopChoice:
    continuous: float
    integer: int


def optimal_hops(mp):
    """最大化 (1 - q(λ,M))/M 的跳数：连续解与 [1, A] 内取整后的比较结果"""
    k1 = mp.tau * mp.N * mp.U ** mp.alpha / mp.P
    k2 = mp.lam * mp.K * mp.tau ** mp.delta * mp.U ** 2
    if k1 == 0 and k2 == 0:
        logger.warning("跳数方程没有正根，取 M*=1")
        return HopChoice(1.0, 1)
    m_cont = hop_equation_root(mp.alpha, k1, k2)
    candidates = {min(max(c, 1), mp.A) for c in (math.floor(m_cont), math.ceil(m_cont))}
    m_int = max(sorted(candidates), key=lambda M: (1.0 - per_hop_op(mp, M)) / M)
    return HopChoice(m_cont, m_int)
