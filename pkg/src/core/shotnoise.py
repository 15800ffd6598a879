#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
干扰（幂律散粒噪声）的分布层
Lévy / 稳定分布参数、最大干扰者的 Fréchet CDF、CCDF 与 PDF 级数、矩和截断 MGF
"""

import math
import sys
import logging
from dataclasses import dataclass

import numpy as np
from scipy import special

from config import SERIES_ARGUMENT_MAX, SERIES_TERMS
from src.core.fades import singular_quad
from src.core.solvers import bracketed_root, expand_upper
from src.core.specfun import ball_coefficient, gamma, normal_ccdf, normal_quantile
from src.utils.errors import DomainError, ParameterError, SeriesUnreliableError

logger = logging.getLogger(__name__)

LOG_FLOAT_MAX = math.log(sys.float_info.max)
# exp 在此之下不会溢出
EXP_SAFE = 700.0


@dataclass(frozen=True)
class SnSpec:
    """散粒噪声 Σ^{α,ε}_{d,λ} 的参数"""
    d: int
    intensity: float
    alpha: float
    epsilon: float = 0.0

    def __post_init__(self):
        ball_coefficient(self.d)
        if not self.alpha > self.d:
            raise ParameterError(f"alpha must exceed d (alpha={self.alpha}, d={self.d})")
        if self.intensity < 0 or self.epsilon < 0:
            raise ParameterError("intensity and epsilon must be nonnegative")

    @property
    def delta(self):
        return self.d / self.alpha

    @property
    def c_d(self):
        return ball_coefficient(self.d)


@dataclass(frozen=True)
class StableParams:
    delta: float
    gamma: float

    def __post_init__(self):
        if not (0.0 < self.delta < 1.0):
            raise ParameterError(f"delta must lie in (0,1): {self.delta}")
        if not (0.0 < self.gamma < math.inf):
            raise ParameterError(f"dispersion must be finite and positive: {self.gamma}")


# ---- Lévy 分布 (δ = 1/2) ----
def _check_levy(gamma_, x):
    if gamma_ <= 0:
        raise ParameterError(f"Lévy dispersion must be positive: {gamma_}")
    if x <= 0:
        raise ParameterError(f"Lévy argument must be positive: {x}")


def levy_cdf(gamma_, x):
    """2·F̄_Z(√(γ/x))"""
    _check_levy(gamma_, x)
    return 2.0 * normal_ccdf(math.sqrt(gamma_ / x))


def levy_ccdf(gamma_, x):
    _check_levy(gamma_, x)
    # 1 - 2F̄_Z(s) = 2F_Z(s) - 1 = erf(s/√2)
    return float(special.erf(math.sqrt(gamma_ / x) / math.sqrt(2.0)))


def levy_pdf(gamma_, x):
    _check_levy(gamma_, x)
    return math.sqrt(gamma_ / (2.0 * math.pi)) * math.exp(-gamma_ / (2.0 * x)) * x ** -1.5


def levy_quantile(gamma_, p):
    """levy_cdf 的逆：x = γ / (F_Z^{-1}(1 - p/2))²"""
    if not (0.0 < p < 1.0):
        raise DomainError(f"levy_quantile requires p in (0,1): p={p}")
    return gamma_ / normal_quantile(1.0 - p / 2.0) ** 2


# ---- 稳定分布参数 ----
def stable_dispersion(spec, fade_delta_moment=1.0):
    """无截断散粒噪声的 (δ, γ)，γ = (λ c_d E[h^δ] Γ(1-δ) cos(πδ/2))^{1/δ}"""
    if spec.epsilon != 0:
        raise ParameterError(f"stable form requires epsilon = 0 (epsilon={spec.epsilon})")
    delta = spec.delta
    if delta >= 1:
        raise ParameterError(f"delta must be below 1: {delta}")
    base = spec.intensity * spec.c_d * fade_delta_moment * gamma(1.0 - delta) * math.cos(math.pi * delta / 2.0)
    return StableParams(delta, base ** (1.0 / delta))


def stable_dispersion_alt(delta, fade_delta_moment=1.0):
    """一维单位强度过程的另一种色散写法 ((1/(1-δ))Γ(2-δ)cos(πδ/2)E[h^δ])^{1/δ}

    与 stable_dispersion(SnSpec(1, 1, 1/δ)) 相差因子 2^{1/δ}（单侧与双侧的约定不同），仅作对照。
    """
    if not (0.0 < delta < 1.0):
        raise ParameterError(f"delta must lie in (0,1): {delta}")
    base = gamma(2.0 - delta) / (1.0 - delta) * math.cos(math.pi * delta / 2.0) * fade_delta_moment
    return base ** (1.0 / delta)


# ---- 级数展开 ----
def series_argument(lambda_1d, delta, fade_delta_moment, y):
    """x = 2λΓ(1-δ)E[h^δ]y^{-δ}"""
    return 2.0 * lambda_1d * gamma(1.0 - delta) * fade_delta_moment * y ** -delta


def _series_terms(delta, x, n_terms, extra):
    """返回 n = 1..n_terms+extra 的各项（不含前置系数）"""
    n = np.arange(1, n_terms + extra + 1, dtype=float)
    log_mag = special.gammaln(1.0 + n * delta) - special.gammaln(n + 1.0) + n * math.log(x)
    sign = np.where(n % 2 == 1, 1.0, -1.0) * np.sin(math.pi * n * delta)
    return n, sign * np.exp(log_mag)


def _check_series(delta, x):
    if not (0.0 < delta < 1.0):
        raise ParameterError(f"delta must lie in (0,1): {delta}")
    if not x < SERIES_ARGUMENT_MAX:
        raise SeriesUnreliableError(
            f"series unreliable: argument {x:.6g} >= {SERIES_ARGUMENT_MAX}")


def sn_ccdf_series(lambda_1d, delta, fade_delta_moment, y, n_terms=SERIES_TERMS, return_bound=False):
    """一维双侧过程的干扰 CCDF 级数

    F̄(y) = (1/πδ) Σ (-1)^{n+1}/(n·n!) Γ(1+nδ) sin(πnδ) x^n

    Args:
        lambda_1d: 一维强度
        delta: 特征指数
        fade_delta_moment: E[h^δ]
        y: 干扰水平
        n_terms: 保留项数
        return_bound: 为 True 时同时返回截断误差界（第一项被舍弃项的绝对值）

    Returns:
        float 或 (float, float)
    """
    if y <= 0:
        raise ParameterError(f"level must be positive: {y}")
    x = series_argument(lambda_1d, delta, fade_delta_moment, y)
    _check_series(delta, x)
    n, terms = _series_terms(delta, x, n_terms, 1)
    terms = terms / n / (math.pi * delta)
    value = float(np.sum(terms[:n_terms]))
    if return_bound:
        return value, float(abs(terms[n_terms]))
    return value


def sn_pdf_series(lambda_1d, delta, fade_delta_moment, y, n_terms=SERIES_TERMS):
    """PDF 级数 (1/(πy)) Σ (-1)^{n+1}/n! Γ(1+nδ) sin(πnδ) x^n"""
    if y <= 0:
        raise ParameterError(f"level must be positive: {y}")
    x = series_argument(lambda_1d, delta, fade_delta_moment, y)
    _check_series(delta, x)
    _, terms = _series_terms(delta, x, n_terms, 0)
    return float(np.sum(terms)) / (math.pi * y)


def sn_ccdf_1d_unit(delta, y, fade_delta_moment=1.0):
    """Σ^{1/δ,h}_{1,1} 的 CCDF：δ = 1/2 用 Lévy 闭式，其余用级数"""
    if y <= 0:
        raise ParameterError(f"level must be positive: {y}")
    if delta == 0.5:
        params = stable_dispersion(SnSpec(1, 1.0, 2.0), fade_delta_moment)
        return levy_ccdf(params.gamma, y)
    return sn_ccdf_series(1.0, delta, fade_delta_moment, y)


def sn_ccdf_inverse(delta, q, fade_delta_moment=1.0):
    """求 y 使 sn_ccdf_1d_unit(δ, y) = q

    δ ≠ 1/2 时在级数可控区域内二分；q 太大（对应 y 落在不可控区域）时抛 SeriesUnreliableError。
    """
    if not (0.0 < q < 1.0):
        raise DomainError(f"ccdf level must lie in (0,1): q={q}")
    if delta == 0.5:
        params = stable_dispersion(SnSpec(1, 1.0, 2.0), fade_delta_moment)
        return levy_quantile(params.gamma, 1.0 - q)
    # x(y) = 0.999·上限 处的 y
    scale = 2.0 * gamma(1.0 - delta) * fade_delta_moment
    lo = (scale / (0.999 * SERIES_ARGUMENT_MAX)) ** (1.0 / delta)
    if sn_ccdf_1d_unit(delta, lo, fade_delta_moment) < q:
        raise SeriesUnreliableError(f"series unreliable: q={q} lies outside the controlled region")

    def gap(y):
        return sn_ccdf_1d_unit(delta, y, fade_delta_moment) - q

    lo, hi = expand_upper(gap, lo, 2.0 * lo, what="series inverse bracket")
    return bracketed_root(gap, lo, hi, xtol=1e-12 * hi, what="series inverse")


# ---- 最大干扰者 ----
def max_sn_cdf(spec, y):
    """P(max ≤ y) = exp(-λc_d(y^{-δ} - ε^d))，y > ε^{-α} 时为 1"""
    if y < 0:
        raise ParameterError(f"level must be nonnegative: {y}")
    if spec.epsilon > 0 and y >= spec.epsilon ** -spec.alpha:
        return 1.0
    if y == 0:
        return 0.0 if spec.intensity > 0 else 1.0
    return math.exp(-spec.intensity * spec.c_d * (y ** -spec.delta - spec.epsilon ** spec.d))


def frechet_scale(spec):
    """ε = 0 时 Fréchet 分布的尺度 (λc_d)^{1/δ}"""
    return (spec.intensity * spec.c_d) ** (1.0 / spec.delta)


def frechet_moment(delta, sigma, p):
    """E[M^p] = σ^p Γ(1 - p/δ)，p ≥ δ 时为 inf"""
    if p >= delta:
        return math.inf
    return sigma ** p * gamma(1.0 - p / delta)


# ---- 矩与 MGF ----
def sn_mean_var(spec):
    """Campbell 定理给出的均值与方差，不存在时为 inf"""
    if spec.epsilon == 0:
        return math.inf, math.inf
    base = spec.intensity * spec.d * spec.c_d
    mean = base / (spec.alpha - spec.d) * spec.epsilon ** (spec.d - spec.alpha)
    var = base / (2.0 * spec.alpha - spec.d) * spec.epsilon ** (spec.d - 2.0 * spec.alpha)
    return mean, var


def log_mgf_truncated(spec, theta, upper):
    """(λdc_d/α) ∫_0^{upper} (e^{θy} - 1) y^{-δ-1} dy，超出浮点范围时返回 inf"""
    if theta < 0:
        raise ParameterError(f"theta must be nonnegative: {theta}")
    if theta == 0 or spec.intensity == 0:
        return 0.0
    delta = spec.delta
    peak = theta * upper
    # θ·upper 过大时被积函数整体乘 e^{-shift}，最后在对数域补回
    shift = peak if peak > EXP_SAFE else 0.0

    def integrand(y):
        if y == 0:
            return 0.0
        ty = theta * y
        if ty < EXP_SAFE:
            scaled = math.exp(-shift) * math.expm1(ty)
        else:
            scaled = math.exp(ty - shift) - math.exp(-shift)
        return scaled * y ** (-delta - 1.0)

    points = None
    if peak > 10.0:
        # 质量集中在 upper 左侧约 1/θ 的范围内
        points = [upper - k / theta for k in (50.0, 10.0, 1.0) if upper - k / theta > 0]
    integral = singular_quad(integrand, 0.0, upper, singularity=delta, points=points)
    coefficient = spec.intensity * spec.d * spec.c_d / spec.alpha
    if integral <= 0:
        return 0.0
    log_value = math.log(coefficient * integral) + shift
    if log_value > LOG_FLOAT_MAX:
        logger.debug(f"截断 log-MGF 超出浮点范围: θ={theta:.6g}, log 值约 {log_value:.6g}")
        return math.inf
    return math.exp(log_value)


def sn_mgf_truncated(spec, theta):
    """截断散粒噪声的 MGF E[e^{θΣ}]，超出浮点范围时返回 inf"""
    if spec.epsilon <= 0:
        raise ParameterError("truncated MGF requires epsilon > 0")
    log_mgf = log_mgf_truncated(spec, theta, spec.epsilon ** -spec.alpha)
    if log_mgf > LOG_FLOAT_MAX:
        return math.inf
    return math.exp(log_mgf)
