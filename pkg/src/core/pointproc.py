#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
点过程抽样与距离分布
齐次 PPP（环形窗口内）、BPP、带标记的 PPP，以及到单位强度一维过程的距离映射。
模型都是径向对称的，所以只抽距离，不生成角度。
"""

import math
import logging
from dataclasses import dataclass, field

import numpy as np
from scipy import special

from src.core.specfun import ball_coefficient, annulus_volume
from src.utils.errors import ParameterError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Window:
    """d 维环形窗口 {r_inner <= |x| <= r_outer}"""
    d: int
    r_inner: float
    r_outer: float

    def __post_init__(self):
        ball_coefficient(self.d)
        if self.r_inner < 0 or not self.r_outer > self.r_inner:
            raise ParameterError(
                f"window needs 0 <= r_inner < r_outer (r_inner={self.r_inner}, r_outer={self.r_outer})")

    @property
    def volume(self):
        return annulus_volume(self.d, self.r_inner, self.r_outer)


@dataclass(frozen=True)
class Snapshot:
    """一次实现：按距离升序排列的点，及可选的标记"""
    points: np.ndarray
    marks: np.ndarray = None

    def __post_init__(self):
        if self.marks is not None and len(self.marks) != len(self.points):
            raise ParameterError("marks and points must have the same length")

    def __len__(self):
        return len(self.points)


@dataclass(frozen=True)
class RngStream:
    """(seed, stream_id) 确定一条独立的随机数子流"""
    seed: int
    stream_id: int = 0
    _sub: tuple = field(default=(), repr=False)

    def generator(self):
        seq = np.random.SeedSequence(self.seed, spawn_key=(self.stream_id,) + self._sub)
        return np.random.Generator(np.random.PCG64(seq))

    def child(self, index):
        """派生子流，用于同一次实现里的独立分量（例如标记）"""
        return RngStream(self.seed, self.stream_id, self._sub + (index,))


def as_generator(rng):
    if isinstance(rng, RngStream):
        return rng.generator()
    if isinstance(rng, np.random.Generator):
        return rng
    raise ParameterError(f"expected RngStream or numpy Generator, got {type(rng).__name__}")


def _radial_draws(gen, window, size):
    """按体积均匀的半径：r = (r_in^d + U(r_out^d - r_in^d))^{1/d}"""
    d = window.d
    lo, hi = window.r_inner ** d, window.r_outer ** d
    return (lo + gen.random(size) * (hi - lo)) ** (1.0 / d)


def sample_ppp(intensity, window, rng):
    """在窗口内抽一次强度为 intensity 的 PPP"""
    if intensity < 0:
        raise ParameterError(f"intensity must be nonnegative: {intensity}")
    if intensity == 0:
        return Snapshot(np.empty(0))
    gen = as_generator(rng)
    count = gen.poisson(intensity * window.volume)
    radii = _radial_draws(gen, window, count)
    return Snapshot(np.sort(radii, kind="stable"))


def sample_ppp_batch(intensity, window, rng, trials):
    """一次抽 trials 个独立实现

    Returns:
        (counts, radii): counts[i] 是第 i 次实现的点数；radii 把各次实现按顺序拼接，
        每段内部升序
    """
    if intensity < 0:
        raise ParameterError(f"intensity must be nonnegative: {intensity}")
    gen = as_generator(rng)
    if intensity == 0:
        return np.zeros(trials, dtype=np.int64), np.empty(0)
    counts = gen.poisson(intensity * window.volume, trials)
    radii = _radial_draws(gen, window, int(counts.sum()))
    owner = np.repeat(np.arange(trials), counts)
    order = np.lexsort((radii, owner))
    return counts, radii[order]


def sample_bpp(n, radius, d, rng):
    """球 b_d(o, radius) 内 n 个独立均匀点"""
    if n < 0 or radius <= 0:
        raise ParameterError(f"BPP needs n >= 0 and radius > 0 (n={n}, radius={radius})")
    if n == 0:
        return Snapshot(np.empty(0))
    gen = as_generator(rng)
    radii = _radial_draws(gen, Window(d, 0.0, radius), n)
    return Snapshot(np.sort(radii, kind="stable"))


def void_probability(intensity, d, r):
    """P(b_d(o, r) 内无点) = exp(-λ c_d r^d)"""
    if r < 0:
        raise ParameterError(f"radius must be nonnegative: {r}")
    return math.exp(-intensity * ball_coefficient(d) * r ** d)


def map_distance_to_unit_1d(distance, intensity, d):
    """|x| -> λ c_d |x|^d / 2，映射到单位强度一维 PPP 的 |t|"""
    if np.any(np.asarray(distance) < 0):
        raise ParameterError("distance must be nonnegative")
    return intensity * ball_coefficient(d) * np.power(distance, d) / 2.0


def ordered_distance_pdf(k, intensity, d, t):
    """第 k 近点距离的密度 d(λc_d t^d)^k / (t(k-1)!) · exp(-λc_d t^d)"""
    if k < 1:
        raise ParameterError(f"order index must be >= 1: k={k}")
    if t < 0:
        raise ParameterError(f"distance must be nonnegative: {t}")
    mass = intensity * ball_coefficient(d)
    if mass == 0:
        return 0.0
    power = d * k - 1
    if t == 0:
        return d * mass ** k / math.factorial(k - 1) if power == 0 else 0.0
    log_density = k * math.log(mass) + power * math.log(t) - special.gammaln(k) - mass * t ** d
    return d * math.exp(log_density)


def ordered_distance_cdf(k, intensity, d, t):
    """P(|x_k| <= t) = P(Gamma(k,1) <= λ c_d t^d)"""
    if k < 1:
        raise ParameterError(f"order index must be >= 1: k={k}")
    if t <= 0:
        return 0.0
    return float(special.gammainc(k, intensity * ball_coefficient(d) * t ** d))


def attach_marks(snapshot, law, rng):
    """给每个点附上独立同分布的标记"""
    if snapshot.marks is not None:
        raise ParameterError("snapshot is already marked")
    if isinstance(rng, RngStream):
        rng = rng.child(1)
    gen = as_generator(rng)
    return Snapshot(snapshot.points, np.asarray(law.sample(gen, len(snapshot.points)), dtype=float))


# ---- BPP 单点干扰 I = P|x|^{-α} ----
def _bpp_floor(P, radius, alpha):
    return P * radius ** -alpha


def bpp_interference_ccdf(y, P, radius, d, alpha):
    """P(I > y) = P^δ R^{-d} y^{-δ}，y >= P R^{-α}"""
    if alpha <= d:
        raise ParameterError(f"alpha must exceed d (alpha={alpha}, d={d})")
    if y <= _bpp_floor(P, radius, alpha):
        return 1.0
    delta = d / alpha
    return P ** delta * radius ** -d * y ** -delta


def bpp_interference_hazard(y, P, radius, d, alpha):
    """危险率 f(y)/F̄(y) = δ/y"""
    if y <= _bpp_floor(P, radius, alpha):
        return 0.0
    return (d / alpha) / y


def bpp_interference_moment(p, P, radius, d, alpha):
    """E[I^p] = y_min^p δ/(δ-p)，p >= δ 时为 inf"""
    delta = d / alpha
    if p >= delta:
        return math.inf
    return _bpp_floor(P, radius, alpha) ** p * delta / (delta - p)
