#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
特殊函数与几何常数
gamma、不完全 gamma、标准正态 CDF 及其逆、d 维球体积系数
"""

import math
import logging

import numpy as np
from scipy import integrate, special

from src.utils.errors import DomainError, ParameterError

logger = logging.getLogger(__name__)

# c_d：d 维单位球体积
BALL_COEFFICIENTS = {1: 2.0, 2: math.pi, 3: 4.0 * math.pi / 3.0}


def ball_coefficient(d):
    """返回 c_d，d 只支持 1、2、3"""
    if isinstance(d, bool) or d not in BALL_COEFFICIENTS:
        raise ParameterError(f"unsupported dimension: d={d} (expected 1, 2 or 3)")
    return BALL_COEFFICIENTS[d]


def ball_volume(d, r):
    """d 维半径 r 的球体积 c_d·r^d

    Args:
        d: 维数 (1, 2, 3)
        r: 半径，r >= 0

    Returns:
        float: 体积
    """
    c_d = ball_coefficient(d)
    if r < 0:
        raise ParameterError(f"radius must be nonnegative: r={r}")
    return c_d * r ** d


def annulus_volume(d, r_inner, r_outer):
    """环体积 c_d(r_outer^d - r_inner^d)"""
    if r_outer < r_inner:
        raise ParameterError(f"annulus requires r_inner <= r_outer: {r_inner} > {r_outer}")
    return ball_volume(d, r_outer) - ball_volume(d, r_inner)


def _is_pole(z):
    return z <= 0 and float(z).is_integer()


def gamma(z):
    """Γ(z)，非正整数处抛出 DomainError"""
    if _is_pole(z):
        raise DomainError(f"gamma has a pole at z={z}")
    return float(special.gamma(z))


def incomplete_gamma(z, t_lo, t_hi=math.inf):
    """Γ(z, t_lo, t_hi) = ∫_{t_lo}^{t_hi} t^{z-1} e^{-t} dt

    z > 0 时用正则化不完全 gamma 的差；z <= 0 时（要求 t_lo > 0）用自适应积分，
    在被积函数的众数处分段。
    """
    if not (0 <= t_lo <= t_hi):
        raise DomainError(f"incomplete_gamma requires 0 <= t_lo <= t_hi: ({t_lo}, {t_hi})")
    if t_lo == t_hi:
        return 0.0
    if z > 0:
        g = gamma(z)
        if math.isinf(t_hi):
            return g * float(special.gammaincc(z, t_lo))
        if t_lo == 0:
            return g * float(special.gammainc(z, t_hi))
        # 两端都在右尾时用上尾之差，避免相减抵消
        if t_lo > z:
            return g * float(special.gammaincc(z, t_lo) - special.gammaincc(z, t_hi))
        return g * float(special.gammainc(z, t_hi) - special.gammainc(z, t_lo))
    if t_lo == 0:
        raise DomainError(f"incomplete_gamma diverges at t=0 for z={z} <= 0")
    return _incomplete_gamma_quad(z, t_lo, t_hi)


def _incomplete_gamma_quad(z, t_lo, t_hi):
    def integrand(t):
        return math.exp((z - 1.0) * math.log(t) - t)

    mode = max(z - 1.0, 0.0)
    cuts = [t_lo]
    if t_lo < mode < t_hi:
        cuts.append(mode)
    cuts.append(t_hi)
    total = 0.0
    for a, b in zip(cuts[:-1], cuts[1:]):
        value, err = integrate.quad(integrand, a, b, epsabs=0.0, epsrel=1e-12, limit=200)
        total += value
    return total


def normal_cdf(t):
    """标准正态 CDF F_Z(t)"""
    return special.ndtr(t) if np.ndim(t) else float(special.ndtr(t))


def normal_pdf(t):
    return np.exp(-0.5 * np.square(t)) / math.sqrt(2.0 * math.pi)


def normal_quantile(p):
    """F_Z^{-1}(p)，有理近似后再做一步 Newton 修正"""
    if not (0.0 < p < 1.0):
        raise DomainError(f"normal_quantile requires p in (0,1): p={p}")
    t = float(special.ndtri(p))
    density = float(normal_pdf(t))
    if density > 0:
        t -= (float(special.ndtr(t)) - p) / density
    return t


def normal_ccdf(t):
    """F̄_Z(t) = 1 - F_Z(t)，用 ndtr(-t) 保持尾部精度"""
    return special.ndtr(np.negative(t)) if np.ndim(t) else float(special.ndtr(-t))


def reflection_product(delta):
    """Γ(1-δ)Γ(1+δ) 的闭式 πδ/sin(πδ)"""
    return math.pi * delta / math.sin(math.pi * delta)
