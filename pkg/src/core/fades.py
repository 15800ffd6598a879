#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
衰落分布与链路距离分布
FadeDistribution: 衰落系数 h 的分布（退化、Rayleigh、Gamma、表格）
LinkDistanceLaw: 收发距离 u 的分布（固定、最近邻、表格）
"""

import math
import logging

import numpy as np
from scipy import integrate, special
from scipy.interpolate import PchipInterpolator

from config import RAYLEIGH_TRUNCATION
from src.core.specfun import ball_coefficient, gamma, incomplete_gamma
from src.utils.errors import NumericalError, ParameterError

logger = logging.getLogger(__name__)


def _quad(func, lo, hi, points=None):
    try:
        value, _ = integrate.quad(func, lo, hi, epsabs=1e-13, epsrel=1e-10, limit=400, points=points)
    except Exception as e:
        raise NumericalError(f"quadrature failed on [{lo}, {hi}]: {e}") from e
    return value


def singular_quad(func, lo, hi, singularity=0.0, points=None):
    """∫_lo^hi func(h) dh，被积函数在 lo 处可能有 (h-lo)^{-s} 型奇异性

    代换 h = lo + t^m, m = 1/(1-s) 把端点奇异性消掉。
    """
    if hi <= lo:
        return 0.0
    if singularity <= 0:
        return _quad(func, lo, hi, points=points)
    if singularity >= 1:
        raise ParameterError(f"non-integrable endpoint singularity of order {singularity}")
    m = 1.0 / (1.0 - singularity)

    def transformed(t):
        return func(lo + t ** m) * m * t ** (m - 1.0)

    mapped = None
    if points is not None:
        mapped = [(p - lo) ** (1.0 / m) for p in points if lo < p < hi]
    return _quad(transformed, 0.0, (hi - lo) ** (1.0 / m), points=mapped or None)


class FadeDistribution:
    """衰落功率系数 h 的分布

    kind 取值：
        degenerate  全部质量在 value（默认 1，即无衰落）
        rayleigh    单位均值指数分布
        gamma       形状 shape、单位尺度的 Gamma 分布（MRC 的 χ²_{2n} 信号）
        tabulated   给定 (h, F(h)) 网格，单调三次插值
    """

    def __init__(self, kind="rayleigh", value=1.0, shape=1.0, grid=None, cdf_values=None):
        self.kind = kind
        self.value = float(value)
        self.shape = float(shape)
        if kind == "degenerate":
            if self.value <= 0:
                raise ParameterError(f"degenerate fade must be positive: {value}")
        elif kind == "gamma":
            if self.shape <= 0:
                raise ParameterError(f"gamma fade shape must be positive: {shape}")
        elif kind == "tabulated":
            self._init_table(grid, cdf_values)
        elif kind != "rayleigh":
            raise ParameterError(f"unknown fade kind: {kind}")

    @classmethod
    def degenerate(cls, value=1.0):
        return cls("degenerate", value=value)

    @classmethod
    def rayleigh(cls):
        return cls("rayleigh")

    @classmethod
    def gamma_law(cls, shape):
        return cls("gamma", shape=shape)

    @classmethod
    def tabulated(cls, grid, cdf_values):
        return cls("tabulated", grid=grid, cdf_values=cdf_values)

    def _init_table(self, grid, cdf_values):
        xs = np.asarray(grid, dtype=float)
        fs = np.asarray(cdf_values, dtype=float)
        if xs.ndim != 1 or xs.shape != fs.shape or len(xs) < 2:
            raise ParameterError("tabulated fade needs equal-length 1-D grids with at least 2 points")
        if np.any(np.diff(xs) <= 0) or xs[0] < 0:
            raise ParameterError("tabulated fade grid must be nonnegative and strictly increasing")
        if np.any(np.diff(fs) < 0) or fs[0] < 0 or not math.isclose(fs[-1], 1.0):
            raise ParameterError("tabulated CDF must be nondecreasing onto [0,1]")
        self._xs = xs
        self._fs = fs
        self._cdf = PchipInterpolator(xs, fs, extrapolate=False)
        self._pdf = self._cdf.derivative()

    def __repr__(self):
        if self.kind == "degenerate":
            return f"FadeDistribution(degenerate, value={self.value})"
        if self.kind == "gamma":
            return f"FadeDistribution(gamma, shape={self.shape})"
        return f"FadeDistribution({self.kind})"

    @property
    def support(self):
        if self.kind == "degenerate":
            return self.value, self.value
        if self.kind == "tabulated":
            return float(self._xs[0]), float(self._xs[-1])
        return 0.0, math.inf

    # ---- 分布函数 ----
    def cdf(self, h):
        if self.kind == "degenerate":
            return 1.0 if h >= self.value else 0.0
        if h <= 0:
            return 0.0
        if self.kind == "rayleigh":
            return -math.expm1(-h)
        if self.kind == "gamma":
            return float(special.gammainc(self.shape, h))
        lo, hi = self.support
        if h <= lo:
            return float(self._fs[0]) if h == lo else 0.0
        if h >= hi:
            return 1.0
        return float(np.clip(self._cdf(h), 0.0, 1.0))

    def ccdf(self, h):
        if self.kind == "rayleigh":
            return math.exp(-h) if h > 0 else 1.0
        if self.kind == "gamma":
            return float(special.gammaincc(self.shape, h)) if h > 0 else 1.0
        return 1.0 - self.cdf(h)

    def ccdf_inverse(self, p):
        """F̄^{-1}(p)：满足 F̄(h) = p 的 h"""
        if not (0.0 < p <= 1.0):
            raise ParameterError(f"tail probability must lie in (0,1]: p={p}")
        if self.kind == "rayleigh":
            return -math.log(p)
        if self.kind == "gamma":
            return float(special.gammainccinv(self.shape, p))
        if self.kind == "degenerate":
            raise ParameterError("degenerate fade has no continuous inverse")
        return float(self._inverse_cdf(1.0 - p))

    def pdf(self, h):
        if self.kind == "degenerate":
            raise ParameterError("degenerate fade has no density")
        if h < 0:
            return 0.0
        if self.kind == "rayleigh":
            return math.exp(-h)
        if self.kind == "gamma":
            if h == 0:
                return 1.0 if self.shape == 1 else (math.inf if self.shape < 1 else 0.0)
            return math.exp((self.shape - 1.0) * math.log(h) - h - special.gammaln(self.shape))
        lo, hi = self.support
        if h < lo or h > hi:
            return 0.0
        return max(float(self._pdf(h)), 0.0)

    # ---- 期望泛函 ----
    def expect(self, func, lower=0.0, singularity=0.0):
        """E[func(h)·1{h > lower}]

        Args:
            func: 一元函数
            lower: 截断下限
            singularity: func 在 lower 处的奇异阶 s（形如 (h-lower)^{-s}）
        """
        if self.kind == "degenerate":
            return func(self.value) if self.value > lower else 0.0
        lo, hi = self.support
        lo = max(lo, lower)
        if self.kind in ("rayleigh", "gamma"):
            hi = lo + RAYLEIGH_TRUNCATION + (self.shape if self.kind == "gamma" else 0.0)
            return singular_quad(lambda h: func(h) * self.pdf(h), lo, hi, singularity)
        inner = [float(x) for x in self._xs if lo < x < hi]
        return singular_quad(lambda h: func(h) * self.pdf(h), lo, hi, singularity, points=inner or None)

    def frac_moment(self, p):
        """E[h^p]，不存在时返回 inf"""
        if self.kind == "degenerate":
            return self.value ** p
        if self.kind == "rayleigh":
            return gamma(1.0 + p) if p > -1 else math.inf
        if self.kind == "gamma":
            return math.exp(special.gammaln(self.shape + p) - special.gammaln(self.shape)) \
                if p > -self.shape else math.inf
        lo = self.support[0]
        if p < 0 and lo == 0 and self.pdf(0.0) > 0 and p <= -1:
            return math.inf
        return self.expect(lambda h: h ** p if h > 0 else 0.0)

    def cond_neg_moment(self, p, floor):
        """E[h^{-p}·1{h > floor}]"""
        if self.kind == "rayleigh":
            if floor <= 0 and p >= 1:
                return math.inf
            return incomplete_gamma(1.0 - p, max(floor, 0.0))
        if self.kind == "gamma" and floor <= 0:
            return self.frac_moment(-p)
        return self.expect(lambda h: h ** -p, lower=floor)

    def mgf_neg_power(self, p, theta):
        """E[exp(-θ h^{-p})]"""
        if theta == 0:
            return 1.0
        return self.expect(lambda h: math.exp(-theta * h ** -p) if h > 0 else 0.0)

    # ---- 抽样 ----
    def sample(self, rng, size, floor=None):
        """抽样；floor 不为空时抽 h | h > floor"""
        if self.kind == "degenerate":
            return np.full(size, self.value)
        if self.kind == "rayleigh":
            base = rng.exponential(1.0, size)
            return base if floor is None else floor + base
        if floor is None:
            if self.kind == "gamma":
                return rng.gamma(self.shape, 1.0, size)
            return self._inverse_cdf(rng.random(size))
        f0 = self.cdf(floor)
        if f0 >= 1.0:
            raise ParameterError(f"fade floor {floor} leaves no probability mass")
        u = f0 + (1.0 - f0) * rng.random(size)
        if self.kind == "gamma":
            return special.gammaincinv(self.shape, u)
        return self._inverse_cdf(u)

    def _inverse_cdf(self, u):
        fine = np.linspace(self._xs[0], self._xs[-1], 4096)
        fs = np.clip(self._cdf(fine), 0.0, 1.0)
        fs, idx = np.unique(fs, return_index=True)
        return np.interp(u, fs, fine[idx])


class LinkDistanceLaw:
    """收发距离 u 的分布

    kind 取值：
        fixed             u 固定
        nearest_neighbor  到强度 μ 的 PPP 最近点的距离，CCDF exp(-μ c_d u^d)
        tabulated         (u, F(u)) 网格
    """

    def __init__(self, kind="fixed", u=1.0, mu=None, d=2, grid=None, cdf_values=None):
        self.kind = kind
        self.d = d
        self.c_d = ball_coefficient(d)
        if kind == "fixed":
            if u <= 0:
                raise ParameterError(f"link distance must be positive: {u}")
            self.u = float(u)
        elif kind == "nearest_neighbor":
            if mu is None or mu <= 0:
                raise ParameterError(f"nearest-neighbour law needs mu > 0: {mu}")
            self.mu = float(mu)
        elif kind == "tabulated":
            self._fade = FadeDistribution.tabulated(grid, cdf_values)
        else:
            raise ParameterError(f"unknown link-distance kind: {kind}")

    @classmethod
    def fixed(cls, u, d=2):
        return cls("fixed", u=u, d=d)

    @classmethod
    def nearest_neighbor(cls, mu, d=2):
        return cls("nearest_neighbor", mu=mu, d=d)

    @property
    def _rate(self):
        # u^d ~ Exp(μ c_d)
        return self.mu * self.c_d

    def ccdf(self, u):
        if self.kind == "fixed":
            return 1.0 if u < self.u else 0.0
        if self.kind == "nearest_neighbor":
            return math.exp(-self._rate * u ** self.d) if u > 0 else 1.0
        return self._fade.ccdf(u)

    def moment(self, p):
        """E[u^p]"""
        if self.kind == "fixed":
            return self.u ** p
        if self.kind == "nearest_neighbor":
            if p <= -self.d:
                return math.inf
            return gamma(1.0 + p / self.d) / self._rate ** (p / self.d)
        return self._fade.frac_moment(p)

    @property
    def mean(self):
        return self.moment(1.0)

    @property
    def moment_d(self):
        """E[u^d]"""
        return self.moment(self.d)

    def mgf_neg_power_d(self, theta):
        """E[exp(-θ u^d)]"""
        if self.kind == "fixed":
            return math.exp(-theta * self.u ** self.d)
        if self.kind == "nearest_neighbor":
            return self._rate / (theta + self._rate)
        return self.expect(lambda u: math.exp(-theta * u ** self.d))

    def expect(self, func):
        """E[func(u)]"""
        if self.kind == "fixed":
            return func(self.u)
        if self.kind == "nearest_neighbor":
            # 对 s = u^d ~ Exp(rate) 积分
            rate = self._rate
            hi = (RAYLEIGH_TRUNCATION + 10.0) / rate
            return _quad(lambda s: func(s ** (1.0 / self.d)) * rate * math.exp(-rate * s), 0.0, hi)
        return self._fade.expect(func)

    def sample(self, rng, size):
        if self.kind == "fixed":
            return np.full(size, self.u)
        if self.kind == "nearest_neighbor":
            return (rng.exponential(1.0 / self._rate, size)) ** (1.0 / self.d)
        return self._fade.sample(rng, size)
