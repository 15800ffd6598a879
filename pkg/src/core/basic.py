#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
基本模型
δ = 1/2 时的精确 OP/TC、一般 δ 的级数解、渐近式、下界与三种上界、吞吐量与时隙 Aloha
"""

import math
import logging

from src.core.fades import singular_quad
from src.core.params import OpTcPair, Regime
from src.core.shotnoise import sn_ccdf_1d_unit, sn_ccdf_inverse
from src.core.solvers import bracketed_root, expand_upper
from src.core.specfun import normal_cdf, normal_quantile
from src.utils.errors import DomainError, ParameterError

logger = logging.getLogger(__name__)


def _require_half(params):
    if params.epsilon != 0:
        raise ParameterError(f"exact OP requires epsilon = 0 (epsilon={params.epsilon})")
    if not math.isclose(params.delta, 0.5):
        raise ParameterError(f"exact OP requires delta = 1/2 (delta={params.delta})")


def _require_q(q_star):
    if not (0.0 < q_star < 1.0):
        raise DomainError(f"target outage must lie in (0,1): q*={q_star}")


def op_exact_half(params):
    """q(λ) = 2F_Z(√((π/2)/(u^{-2d}/τ - N/P))·c_d λ) - 1"""
    _require_half(params)
    z = math.sqrt(math.pi / 2.0 / params.threshold) * params.c_d * params.lam
    return max(2.0 * normal_cdf(z) - 1.0, 0.0)


def tc_exact_half(params, q_star):
    """λ(q*) = (1/c_d)√((u^{-2d}/τ - N/P)/(π/2))·F_Z^{-1}((1+q*)/2)·(1-q*)"""
    _require_half(params)
    _require_q(q_star)
    root = math.sqrt(params.threshold / (math.pi / 2.0))
    return root * normal_quantile((1.0 + q_star) / 2.0) * (1.0 - q_star) / params.c_d


def op_exact_via_ccdf(params):
    """一般 δ、ε = 0：q = F̄((λc_d/2)^{-1/δ} ξ^{-α})，F̄ 为一维单位过程的干扰 CCDF"""
    if params.epsilon != 0:
        raise ParameterError(f"exact OP requires epsilon = 0 (epsilon={params.epsilon})")
    if params.lam == 0:
        return 0.0
    y = (params.lam * params.c_d / 2.0) ** (-1.0 / params.delta) * params.threshold
    return sn_ccdf_1d_unit(params.delta, y)


def tc_general(params, q_star):
    """λ(q*) = 2ξ^{-d}(F̄^{-1}(q*))^{-δ}(1-q*)/c_d"""
    if params.epsilon != 0:
        raise ParameterError(f"exact TC requires epsilon = 0 (epsilon={params.epsilon})")
    _require_q(q_star)
    y_star = sn_ccdf_inverse(params.delta, q_star)
    return 2.0 * params.xi ** -params.d * y_star ** -params.delta * (1.0 - q_star) / params.c_d


def op_tc_asymptotic(params, q_star):
    """小 λ 渐近：q ≈ c_d λ/(u^{-α}/τ - N/P)^δ，λ(q*) ≈ (u^{-α}/τ - N/P)^δ q*/c_d"""
    if params.epsilon != 0:
        raise ParameterError(f"asymptotic OP requires epsilon = 0 (epsilon={params.epsilon})")
    _require_q(q_star)
    scale = params.threshold ** params.delta
    op = params.c_d * params.lam / scale
    return OpTcPair(min(op, 1.0), scale * q_star / params.c_d, Regime.ASYMPTOTIC,
                    {"slope": params.c_d / scale})


def sphere_packing_radius(params, q_star):
    """ũ(q*) = u(τ^δ/q*)^{1/d}，渐近 TC 等于 1/(c_d ũ^d)"""
    _require_q(q_star)
    return params.u * (params.tau ** params.delta / q_star) ** (1.0 / params.d)


def dominant_volume(params):
    """a = c_d(ξ^d - ε^d)：主导干扰者所在环的体积"""
    return max(params.c_d * (params.xi ** params.d - params.epsilon ** params.d), 0.0)


def op_lb(params):
    """q_lb = 1 - exp(-λ c_d(ξ^d - ε^d))"""
    return -math.expm1(-params.lam * dominant_volume(params))


def op_lb_tc_ub(params, q_star):
    """OP 下界与对应的 TC 上界 -(1-q*)ln(1-q*)/(c_d(ξ^d - ε^d))"""
    _require_q(q_star)
    a = dominant_volume(params)
    tc = math.inf if a == 0 else -(1.0 - q_star) * math.log1p(-q_star) / a
    return OpTcPair(op_lb(params), tc, Regime.LOWER_BOUND, {"tc_regime": Regime.UPPER_BOUND.value})


# ---- 上界：q = q_lb + (1 - q_lb)·P(Σ̃ > ξ^{-α}) ----
def _markov_term(params):
    """λ d c_d ξ^d/(α - d)"""
    return params.lam * params.d * params.c_d * params.xi ** params.d / (params.alpha - params.d)


def _combine(params, tail):
    q_lb = op_lb(params)
    return q_lb + (1.0 - q_lb) * min(max(tail, 0.0), 1.0)


def op_ub_markov(params):
    return _combine(params, _markov_term(params))


def chebychev_threshold(params):
    """Chebychev 界平凡 (= 1) 的起点 λ = (α-d)/(d c_d ξ^d)"""
    return (params.alpha - params.d) / (params.d * params.c_d * params.xi ** params.d)


def op_ub_chebychev(params):
    m = _markov_term(params)
    if m >= 1.0:
        return 1.0
    tail = params.lam * params.d * params.c_d / (2.0 * params.alpha - params.d) * params.xi ** params.d / (1.0 - m) ** 2
    return _combine(params, tail)


def chernoff_exponent(params):
    """c(λ) = sup_θ (θξ^{-α} - log E[e^{θΣ̃}])

    令 θ = sξ^α，目标化为 s - k∫_0^1 (e^{sv}-1) v^{-δ-1} dv，k = λ d c_d ξ^d/α；
    对 s 是凹函数，最大点是导数 1 - k∫_0^1 v^{-δ} e^{sv} dv 的零点。
    """
    delta = params.delta
    k = params.lam * params.d * params.c_d * params.xi ** params.d / params.alpha
    if k == 0:
        return math.inf

    def slope(s):
        return 1.0 - k * singular_quad(lambda v: v ** -delta * math.exp(s * v) if v > 0 else 0.0,
                                       0.0, 1.0, singularity=delta)

    if slope(0.0) <= 0:
        return 0.0
    lo, hi = expand_upper(slope, 0.0, 1.0, what="Chernoff theta")
    s_star = bracketed_root(slope, lo, hi, what="Chernoff theta")
    penalty = singular_quad(lambda v: math.expm1(s_star * v) * v ** (-delta - 1.0) if v > 0 else 0.0,
                            0.0, 1.0, singularity=delta)
    return s_star - k * penalty


def op_ub_chernoff(params):
    c = chernoff_exponent(params)
    return _combine(params, 0.0 if math.isinf(c) else math.exp(-c))


def normal_cdf_lower_bound(z):
    """F_Z(z) ≥ 1 - ½ exp(-√(2/π) z)，z ≥ 0"""
    if z < 0:
        raise ParameterError(f"bound holds for z >= 0: z={z}")
    return 1.0 - 0.5 * math.exp(-math.sqrt(2.0 / math.pi) * z)


# ---- 吞吐量 ----
def throughput(params):
    """Λ(λ) = λ(1 - q(λ))；δ = 1/2 且 ε = 0 用精确 OP，否则用下界给出的上界 λe^{-λa}"""
    if params.epsilon == 0 and math.isclose(params.delta, 0.5):
        return params.lam * (1.0 - op_exact_half(params))
    return params.lam * math.exp(-params.lam * dominant_volume(params))


def tp_ub_optimum(params):
    """TP 上界 λe^{-λa} 的最优点：λ* = 1/a，Λ_max = 1/(ea)，q_lb(λ*) = 1 - 1/e

    Returns:
        (lambda_opt, tp_max, op_at_opt)
    """
    a = dominant_volume(params)
    if a == 0:
        raise ParameterError("dominant volume is zero; throughput bound is unbounded")
    lam_opt = 1.0 / a
    return lam_opt, 1.0 / (math.e * a), op_lb(params.with_lambda(lam_opt))


def tc_ub_optimum(params):
    """TC 上界 -(1-q*)ln(1-q*)/a 对 q* 的最大点：q*_opt = 1 - 1/e，最大值 1/(ea)，与 TP 上界的最大值相同"""
    a = dominant_volume(params)
    if a == 0:
        raise ParameterError("dominant volume is zero; capacity bound is unbounded")
    return -math.expm1(-1.0), 1.0 / (math.e * a)


def slotted_aloha(n, p):
    """n 个用户、发送概率 p：Λ = np(1-p)^{n-1}，q = 1 - (1-p)^{n-1}"""
    if n < 1 or not (0.0 <= p <= 1.0):
        raise ParameterError(f"aloha needs n >= 1 and p in [0,1] (n={n}, p={p})")
    idle = (1.0 - p) ** (n - 1)
    return n * p * idle, 1.0 - idle


def slotted_aloha_limit(lam):
    """n → ∞、np → λ：(λe^{-λ}, 1 - e^{-λ})"""
    return lam * math.exp(-lam), -math.expm1(-lam)
