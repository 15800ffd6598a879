#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
网络参数与结果类型
NetworkParams 是所有 OP/TC 公式共用的 (d, λ, α, ε, u, P, N, τ) 参数组
"""

import math
from dataclasses import dataclass, field, replace
from enum import Enum

from src.core.specfun import ball_coefficient
from src.utils.errors import ParameterError


class Regime(str, Enum):
    """结果的适用范围标签"""
    EXACT = "exact"
    ASYMPTOTIC = "asymptotic"
    LOWER_BOUND = "lower_bound"
    UPPER_BOUND = "upper_bound"
    UPPER_BOUND_MARKOV = "upper_bound_markov"
    UPPER_BOUND_CHEBYCHEV = "upper_bound_chebychev"
    UPPER_BOUND_CHERNOFF = "upper_bound_chernoff"
    EMPIRICAL = "empirical"


@dataclass(frozen=True)
class NetworkParams:
    """基本模型参数

    Attributes:
        d: 维数
        lam: 尝试发送的节点密度 λ
        alpha: 路损指数 α
        epsilon: 保护半径 ε
        u: 收发距离
        P: 发送功率 (W)
        N: 噪声功率 (W)
        tau: SINR 门限 τ
    """
    d: int = 2
    lam: float = 0.0
    alpha: float = 4.0
    epsilon: float = 0.0
    u: float = 1.0
    P: float = 1.0
    N: float = 0.0
    tau: float = 1.0

    def __post_init__(self):
        ball_coefficient(self.d)
        if not self.alpha > self.d:
            raise ParameterError(f"alpha must exceed d (alpha={self.alpha}, d={self.d})")
        if self.lam < 0:
            raise ParameterError(f"lambda must be nonnegative: {self.lam}")
        if self.epsilon < 0:
            raise ParameterError(f"epsilon must be nonnegative: {self.epsilon}")
        if not self.u > self.epsilon:
            raise ParameterError(f"u must exceed epsilon (u={self.u}, epsilon={self.epsilon})")
        if self.P <= 0 or self.N < 0 or self.tau <= 0:
            raise ParameterError("P > 0, N >= 0 and tau > 0 are required")
        if self.N > 0 and not self.snr > self.tau:
            raise ParameterError(
                f"snr ≤ τ violates the SNR assumption (snr={self.snr:.6g}, tau={self.tau})")

    @property
    def delta(self):
        return self.d / self.alpha

    @property
    def c_d(self):
        return ball_coefficient(self.d)

    @property
    def snr(self):
        return math.inf if self.N == 0 else self.P * self.u ** -self.alpha / self.N

    @property
    def threshold(self):
        """ξ^{-α} = u^{-α}/τ - N/P：单个干扰者造成中断的门限"""
        return self.u ** -self.alpha / self.tau - self.N / self.P

    @property
    def xi(self):
        """ξ：主导干扰者半径"""
        return self.threshold ** (-1.0 / self.alpha)

    def require_guard_below_xi(self):
        if not self.epsilon < self.xi:
            raise ParameterError(
                f"epsilon must be below xi (epsilon={self.epsilon}, xi={self.xi:.6g})")

    def with_lambda(self, lam):
        return replace(self, lam=lam)


@dataclass(frozen=True)
class OpTcPair:
    """OP 与 TC 的组合结果"""
    op: float
    tc: float
    regime: Regime
    notes: dict = field(default_factory=dict)

    def __post_init__(self):
        if not (0.0 <= self.op <= 1.0) and not math.isnan(self.op):
            raise ParameterError(f"op out of [0,1]: {self.op}")
        if self.tc < 0:
            raise ParameterError(f"tc must be nonnegative: {self.tc}")
