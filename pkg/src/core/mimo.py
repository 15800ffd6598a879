#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
多天线公式层
单流分集 (MRC / 特征波束成形)、部分迫零 (PZF) 与 MMSE 的界、空间复用的最优流数、SDMA (DPC) 的 TC 界。
这些结果都是 q* → 0、高 SNR 下的渐近式，返回值带 regime 标签。
"""

import math
import logging
from dataclasses import dataclass, field

import numpy as np
from scipy import integrate, special

from src.core.params import Regime
from src.core.specfun import gamma, reflection_product
from src.utils.errors import DomainError, NumericalError, ParameterError

logger = logging.getLogger(__name__)

ASYMPTOTIC_NOTE = "asymptotic q*->0, high SNR"
# 直接交错求和的最大 d，再大改用积分形式
DIRECT_SUM_MAX_ORDER = 20


@dataclass(frozen=True)
class AntennaConfig:
    """n_t 发送天线、n_r 接收天线、K 条流、消除 z 个干扰者"""
    n_t: int = 1
    n_r: int = 1
    K: int = 1
    z: int = 0

    def __post_init__(self):
        if self.n_t < 1 or self.n_r < 1:
            raise ParameterError(f"antenna counts must be >= 1 (n_t={self.n_t}, n_r={self.n_r})")
        if not (1 <= self.K <= min(self.n_t, self.n_r)):
            raise ParameterError(f"stream count must lie in [1, min(n_t, n_r)]: K={self.K}")
        if not (0 <= self.z <= self.n_r - 1):
            raise ParameterError(f"cancelled count must lie in [0, n_r - 1]: z={self.z}")


@dataclass(frozen=True)
class SdmaCluster:
    u_min: float
    u_max: float

    def __post_init__(self):
        if not (0.0 < self.u_min <= self.u_max):
            raise ParameterError(f"cluster needs 0 < u_min <= u_max ({self.u_min}, {self.u_max})")


def _require_planar(params):
    if params.d != 2:
        raise ParameterError(f"antenna formulas assume d = 2 (d={params.d})")


def _require_q(q_star):
    if not (0.0 < q_star < 1.0):
        raise DomainError(f"target outage must lie in (0,1): q*={q_star}")


def c_alpha(alpha):
    """C_α = π² δ csc(πδ)，δ = 2/α"""
    return math.pi * reflection_product(2.0 / alpha)


# ================= MRC / 特征波束成形 =================
def mrc_diversity_factor(n_r, delta):
    """A(n) = 1 + Σ_{k=1}^{n-1} (1/k!) ∏_{l=0}^{k-1}(l - δ) = Γ(n-δ)/(Γ(1-δ)Γ(n))"""
    if n_r < 1:
        raise ParameterError(f"antenna count must be >= 1: {n_r}")
    return math.exp(special.gammaln(n_r - delta) - special.gammaln(1.0 - delta) - special.gammaln(n_r))


def mrc_diversity_series(n_r, delta):
    """A(n) 的逐项求和形式"""
    total, term = 1.0, 1.0
    for k in range(1, n_r):
        term *= (k - 1 - delta) / k
        total += term
    return total


def mrc_op(params, cfg):
    """1×n_R MRC 的渐近 OP：λ τ^δ u² C_α A(n_R)"""
    _require_planar(params)
    if params.N != 0:
        raise ParameterError("MRC outage formula assumes N = 0")
    delta = params.delta
    return min(params.lam * params.tau ** delta * params.u ** 2 * c_alpha(params.alpha)
               * mrc_diversity_factor(cfg.n_r, delta), 1.0)


@dataclass(frozen=True)
class MrcCapacity:
    tc: float
    lb: float
    ub: float
    regime: Regime = Regime.ASYMPTOTIC
    notes: dict = field(default_factory=lambda: {"regime": ASYMPTOTIC_NOTE})


def mrc_tc(params, cfg, q_star):
    """TC 以及夹逼界 n_R^δ q*/(C_α τ^δ u²) ≤ λ(q*) ≤ Γ(1-δ)·同式"""
    _require_planar(params)
    _require_q(q_star)
    delta = params.delta
    base = q_star / (c_alpha(params.alpha) * params.tau ** delta * params.u ** 2)
    tc = base / mrc_diversity_factor(cfg.n_r, delta)
    lb = cfg.n_r ** delta * base
    return MrcCapacity(tc, lb, gamma(1.0 - delta) * lb)


def eigenbf_ocd_bounds(params, cfg, q_star):
    """特征波束成形：lb = max(n_T,n_R)^δ q*/(C_α u² τ^δ)，ub = Γ(1-δ)(n_T n_R)^δ q*/(C_α u² τ^δ)"""
    _require_planar(params)
    _require_q(q_star)
    delta = params.delta
    base = q_star / (c_alpha(params.alpha) * params.u ** 2 * params.tau ** delta)
    return max(cfg.n_t, cfg.n_r) ** delta * base, gamma(1.0 - delta) * (cfg.n_t * cfg.n_r) ** delta * base


# ================= PZF / MMSE =================
def theta_star(alpha):
    """PZF 最优消除比例 θ* = 1 - 2/α"""
    return 1.0 - 2.0 / alpha


def pzf_op_ub(params, n_r, z, lam=None):
    """PZF-z 的 OP 上界，需要 ⌈α/2⌉ < z < n_R - 1，否则返回 None"""
    alpha = params.alpha
    lam = params.lam if lam is None else lam
    if not (math.ceil(alpha / 2.0) < z < n_r - 1):
        return None
    interference = (math.pi * params.u ** 2 * lam) ** (alpha / 2.0) / (alpha / 2.0 - 1.0) \
        * (z - math.ceil(alpha / 2.0)) ** (1.0 - alpha / 2.0)
    noise = 0.0 if params.N == 0 else 1.0 / params.snr
    return min(params.tau * (interference + noise) / (n_r - z - 1), 1.0)


def pzf_tc_lb(params, n_r, z, q_star):
    """PZF-z 的 TC 下界；z 不满足 ⌈α/2⌉ < z < n_R - 1 - τ/(q* snr) 时返回 None"""
    _require_q(q_star)
    alpha = params.alpha
    p = 2.0 / alpha
    noise = 0.0 if params.N == 0 else params.tau / (q_star * params.snr)
    room = n_r - z - 1 - noise
    if not (math.ceil(alpha / 2.0) < z and room > 0):
        return None
    return (q_star / params.tau) ** p * (alpha / 2.0 - 1.0) ** p / (math.pi * params.u ** 2) \
        * room ** p * (z - math.ceil(alpha / 2.0)) ** (1.0 - p)


def _ub_denominator(params, q_star):
    p = 2.0 / params.alpha
    return math.pi * params.u ** 2 * params.tau ** p * (1.0 - q_star) ** p


def pzf_tc_ub(params, n_r, z, q_star, l=2):
    """(z + l + α/2)/(πu²τ^{2/α}(1-q*)^{2/α}) · ((n_R - z)/(l - 1))^{2/α}，0 ≤ z ≤ n_R - 1, l ≥ 2"""
    _require_q(q_star)
    if l < 2:
        raise ParameterError(f"uncancelled count must be >= 2: l={l}")
    if not (0 <= z <= n_r - 1):
        raise ParameterError(f"cancelled count must lie in [0, n_r - 1]: z={z}")
    return (z + l + params.alpha / 2.0) / _ub_denominator(params, q_star) \
        * ((n_r - z) / (l - 1.0)) ** (2.0 / params.alpha)


def mmse_tc_ub(params, n_r, q_star):
    """(2n_R + 1 + α/2)/(πu²τ^{2/α}(1-q*)^{2/α})"""
    _require_q(q_star)
    return (2.0 * n_r + 1.0 + params.alpha / 2.0) / _ub_denominator(params, q_star)


def mrc_tc_ub(params, n_r, q_star):
    """(2 + α/2) n_R^{2/α}/(πu²τ^{2/α}(1-q*)^{2/α})，即 z = 0、l = 2"""
    _require_q(q_star)
    return (2.0 + params.alpha / 2.0) * n_r ** (2.0 / params.alpha) / _ub_denominator(params, q_star)


def zf_tc_ub(params, n_r, q_star):
    """(2 + α/(2n_R)) n_R^{1-2/α}/(πu²τ^{2/α}(1-q*)^{2/α})"""
    _require_q(q_star)
    return (2.0 + params.alpha / (2.0 * n_r)) * n_r ** (1.0 - 2.0 / params.alpha) \
        / _ub_denominator(params, q_star)


@dataclass(frozen=True)
class PzfBounds:
    op_ub: float
    tc_lb: float
    tc_ub: float
    theta_star: float
    z_star: int
    notes: dict = field(default_factory=lambda: {"regime": ASYMPTOTIC_NOTE})


def pzf_bounds(params, cfg, q_star, l=2):
    """PZF-z 的三条界，外加 θ* 与取整后的 z*"""
    _require_planar(params)
    op_ub = pzf_op_ub(params, cfg.n_r, cfg.z)
    tc_lb = pzf_tc_lb(params, cfg.n_r, cfg.z, q_star)
    if op_ub is None or tc_lb is None:
        logger.warning(f"z={cfg.z} 不在 PZF 下界的可行区间内 (n_r={cfg.n_r}, alpha={params.alpha})")
    theta = theta_star(params.alpha)
    z_star = _best_cancelled_count(params, cfg.n_r, theta, q_star)
    notes = {"regime": ASYMPTOTIC_NOTE}
    if op_ub is None or tc_lb is None:
        notes["infeasible"] = pzf_feasibility_note(params, cfg.n_r, q_star)
    return PzfBounds(op_ub, tc_lb, pzf_tc_ub(params, cfg.n_r, cfg.z, q_star, l), theta, z_star, notes)


def _best_cancelled_count(params, n_r, theta, q_star):
    """θ*n_R 的上下取整里 TC 下界较大者，两者都不可行时取下整"""
    raw = theta * n_r
    candidates = sorted({min(max(c, 0), n_r - 1) for c in (math.floor(raw), math.ceil(raw))})

    def objective(z):
        value = pzf_tc_lb(params, n_r, z, q_star)
        return -math.inf if value is None else value

    return max(candidates, key=objective)


def pzf_feasibility_note(params, n_r, q_star):
    """PZF 下界要求 z 落在的开区间"""
    upper = n_r - 1
    if params.N > 0:
        upper -= params.tau / (q_star * params.snr)
    return f"infeasible: z outside ({math.ceil(params.alpha / 2.0)}, {upper:g})"


def pzf_strongest_note(n_r):
    """消除最强干扰者时 K* = 1、z* = n_R - 1，TC 为 Θ(n_R (q*)^{1/n_R})"""
    return {"K_star": 1, "z_star": n_r - 1, "scaling": "Theta(n_R q*^(1/n_R))"}


# ================= 空间复用 =================
@dataclass(frozen=True)
class StreamChoice:
    raw: float
    integer: int
    notes: dict = field(default_factory=lambda: {"regime": "large array"})


def _stream_objective(k, scale, cost, p):
    """大阵列 TC 代理 K^{1-p}(A - cK)^p；A - cK ≤ 0 时为 -inf"""
    room = scale - cost * k
    return -math.inf if room <= 0 else k ** (1.0 - p) * room ** p


def _clamp_streams(raw, n_t, objective=None):
    """⌊raw⌋、⌈raw⌉ 截到 [1, n_T] 后取目标较大者，相等取小"""
    candidates = sorted({min(max(c, 1), n_t) for c in (math.floor(raw), math.ceil(raw))})
    if objective is None:
        return StreamChoice(raw, int(candidates[0]))
    return StreamChoice(raw, int(max(candidates, key=objective)))


def sm_optimal_streams(params, cfg, receiver):
    """空间复用的最优流数

    receiver:
        mrc     K* = n_R(1-2/α)/(τ(1 + 1/snr))
        zf      K* = n_R(1-2/α)/(1 + τ/snr)
        blast_d K* = 2(n_T + 1)(1-2/α)
        pzf     高 SNR 下 K* = 1

    K* 是 K^{1-2/α}(A - cK)^{2/α} 的极大点，整数解在上下取整间比较这个目标
    """
    theta = theta_star(params.alpha)
    inv_snr = 0.0 if params.N == 0 else 1.0 / params.snr
    if receiver == "mrc":
        scale, cost = cfg.n_r / params.tau, 1.0 + inv_snr
    elif receiver == "zf":
        scale, cost = cfg.n_r / params.tau, 1.0 / params.tau + inv_snr
    elif receiver == "blast_d":
        scale, cost = 2.0 * (cfg.n_t + 1), 1.0
    elif receiver == "pzf":
        return _clamp_streams(1.0, cfg.n_t)
    else:
        raise ParameterError(f"unknown receiver: {receiver}")
    raw = theta * scale / cost
    p = 2.0 / params.alpha
    return _clamp_streams(raw, cfg.n_t, lambda k: _stream_objective(k, scale, cost, p))


def vblast_dblast_ratio(alpha):
    """V-BLAST 与 D-BLAST 的 TC 比：α ≤ 4 时 2^{1-δ}，否则 2^{-δ}δ^{-δ}(1-δ)^{δ-1}"""
    delta = 2.0 / alpha
    if alpha <= 4:
        return 2.0 ** (1.0 - delta)
    return 2.0 ** -delta * delta ** -delta * (1.0 - delta) ** (delta - 1.0)


# ================= SDMA (DPC) =================
def _alternating_sum(order, p):
    """Σ_{j=1}^{d} C(d,j)(-1)^{j+1} j^p"""
    return math.fsum(special.binom(order, j) * (-1.0) ** (j + 1) * j ** p for j in range(1, order + 1))


def _alternating_integral(order, p):
    """同一个和的积分形式 (p/Γ(1-p)) ∫_0^∞ (1 - e^{-t})^d t^{-p-1} dt"""
    def integrand(t):
        return math.exp(order * math.log(-math.expm1(-t)) - (p + 1.0) * math.log(t))

    mode = math.log(order) + 1.0
    pieces = [(0.0, mode), (mode, 4.0 * mode + 40.0), (4.0 * mode + 40.0, math.inf)]
    total = 0.0
    for lo, hi in pieces:
        value, _ = integrate.quad(integrand, lo, hi, epsabs=0.0, epsrel=1e-12, limit=400)
        total += value
    return p / gamma(1.0 - p) * total


def sdma_f(order, alpha, method="auto"):
    """𝓕_d = [Σ_{j=0}^{d} C(d,j)(-1)^{j+1} j^{2/α}]^{-1}

    method: "sum" 直接求和，"integral" 积分形式，"auto" 在 d > 20 时用积分
    """
    if order < 1:
        raise ParameterError(f"diversity order must be >= 1: {order}")
    p = 2.0 / alpha
    if method == "auto":
        method = "sum" if order <= DIRECT_SUM_MAX_ORDER else "integral"
    value = _alternating_sum(order, p) if method == "sum" else _alternating_integral(order, p)
    if not value > 0:
        raise NumericalError(f"alternating binomial sum lost precision at d={order}")
    return 1.0 / value


def sdma_j(K, alpha):
    """𝓙_K = (2π/(αΓ(K))) Σ_{m=0}^{K-1} C(K,m) Γ(m+2/α) Γ(K-m-2/α) = πΓ(1-2/α)Γ(K+2/α)/Γ(K)

    即 χ²_{2K} 干扰标记下 Laplace 变换的常数；各项在对数域计算
    """
    if K < 1:
        raise ParameterError(f"stream count must be >= 1: K={K}")
    p = 2.0 / alpha
    m = np.arange(K)
    logs = (special.gammaln(K + 1.0) - special.gammaln(m + 1.0) - special.gammaln(K - m + 1.0)
            + special.gammaln(m + p) + special.gammaln(K - m - p) - special.gammaln(K))
    return 2.0 * math.pi / alpha * math.fsum(np.exp(logs))


def sdma_j_limit(alpha):
    """lim 𝓙_K/K^{2/α} = πΓ(1-2/α)"""
    return math.pi * gamma(1.0 - 2.0 / alpha)


@dataclass(frozen=True)
class SdmaBounds:
    lb: float
    ub: float
    K_star_lb: float
    K_star_ub: float
    K_star_miso: float
    diversity_order: int
    notes: dict = field(default_factory=lambda: {"regime": ASYMPTOTIC_NOTE})


def sdma_dpc_tc_bounds(params, cluster, cfg, q_star):
    """DPC 发送、MRC 接收的多流 TC 上下界"""
    _require_q(q_star)
    alpha, K = params.alpha, cfg.K
    p = 2.0 / alpha
    order = cfg.n_t * (cfg.n_r - K + 1)
    j_k = sdma_j(K, alpha)
    lb = K * q_star * (1.0 - q_star) * sdma_f(order, alpha) / (j_k * params.tau ** p * cluster.u_max ** 2)
    ub = K * (4.0 * order) ** p * (1.0 - q_star) * -math.log1p(-q_star) \
        / (j_k * params.tau ** p * cluster.u_min ** 2)
    return SdmaBounds(lb, ub,
                      cfg.n_t * (alpha - 2.0) / (alpha + 2.0),
                      theta_star(alpha) * (cfg.n_t + 1),
                      theta_star(alpha) * cfg.n_t,
                      order)


def sdma_scaling(n_t, n_r, K, alpha):
    """阶数表达式（不含常数）：Ω 为 K^{1-2/α}[(n_T-K+1)(n_R-K+1)]^{2/α}，O 为 K^{1-2/α}[n_T(n_R-K+1)]^{2/α}"""
    p = 2.0 / alpha
    lower = K ** (1.0 - p) * ((n_t - K + 1) * (n_r - K + 1)) ** p
    upper = K ** (1.0 - p) * (n_t * (n_r - K + 1)) ** p
    return lower, upper
