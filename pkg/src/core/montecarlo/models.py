#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
各模型的单次快照 SINR 抽样
每个模型在截断的环形窗口里抽干扰者 PPP，挂上标记，精确计算原点接收端的 SINR，
返回每次试验是否中断。
"""

import math
import logging
from dataclasses import replace

import numpy as np

from src.core.design import fpc_q0
from src.core.fades import FadeDistribution
from src.core.params import NetworkParams
from src.core.pointproc import Window, sample_ppp_batch
from src.core.solvers import bracketed_root, expand_upper
from src.utils.errors import ParameterError

logger = logging.getLogger(__name__)


class SinrModel:
    """模型基类：定功率、无衰落、保护半径 ε 内无干扰者"""

    name = "basic"

    def __init__(self, network):
        if not isinstance(network, NetworkParams):
            raise ParameterError(f"{self.name} model expects NetworkParams, got {type(network).__name__}")
        self.network = network

    # ---- 强度 ----
    @property
    def attempt_intensity(self):
        """TC 里乘 (1 - q) 的那个密度"""
        return self.network.lam

    @property
    def interferer_intensity(self):
        return self.network.lam

    @property
    def sampling_intensity(self):
        """窗口内实际抽样的密度（FTS 抽潜在发送者后再稀疏化）"""
        return self.interferer_intensity

    @property
    def mark_mean(self):
        """干扰者接收功率标记的均值（相对 P r^{-α}）"""
        return 1.0

    @property
    def inner_radius(self):
        return self.network.epsilon

    @property
    def reference_threshold(self):
        """窗口规则用的中断门限 ξ^{-α}"""
        return self.network.threshold

    # ---- 窗口 ----
    def window(self, tolerance):
        """选 R 使截掉的干扰均值 λ d c_d E[mark] R^{d-α}/(α-d) ≤ tolerance·ξ^{-α}

        Returns:
            (Window, 截断偏差上界)
        """
        net = self.network
        d, alpha = net.d, net.alpha
        lam = self.interferer_intensity
        r_in = self.inner_radius
        floor = 2.0 * max(r_in, net.xi, 1.0)
        if lam == 0 or self.mark_mean == 0:
            return Window(d, r_in, floor), 0.0
        scale = lam * d * net.c_d * self.mark_mean / (alpha - d)
        radius = (scale / (tolerance * self.reference_threshold)) ** (1.0 / (alpha - d))
        radius = max(radius, floor)
        bias = scale * radius ** (d - alpha)
        logger.debug(f"{self.name} 截断窗口半径 R={radius:.6g}, 截断偏差上界 {bias:.3g}")
        return Window(d, r_in, radius), bias

    # ---- 单次快照 ----
    def signal_power(self, gen, trials):
        net = self.network
        return np.full(trials, net.P * net.u ** -net.alpha)

    def interferer_powers(self, gen, radii, owner, counts):
        """每个干扰者在原点的接收功率"""
        return self.network.P * radii ** -self.network.alpha

    def sample_outage(self, gen, trials, window):
        """trials 次独立快照，返回布尔数组：SINR < τ"""
        net = self.network
        counts, radii = sample_ppp_batch(self.sampling_intensity, window, gen, trials)
        owner = np.repeat(np.arange(trials), counts)
        if radii.size:
            powers = self.interferer_powers(gen, radii, owner, counts)
            interference = np.bincount(owner, weights=powers, minlength=trials)
        else:
            interference = np.zeros(trials)
        signal = self.signal_power(gen, trials)
        return signal < net.tau * (interference + net.N)

    def outage_floor(self):
        """q(0)：没有干扰时的中断概率"""
        net = self.network
        return 1.0 if net.P * net.u ** -net.alpha < net.tau * net.N else 0.0

    # ---- λ 扫描 ----
    def with_lambda(self, lam):
        return type(self)(self.network.with_lambda(lam))

    def describe(self):
        return {"model": self.name, "network": _as_dict(self.network)}


class BasicModel(SinrModel):
    name = "basic"


class FadingModel(SinrModel):
    """信号衰落 h₀₀ 与干扰衰落 h_i0 独立同分布于各自的分布"""

    name = "fading"

    def __init__(self, network, signal_fade=None, interf_fade=None):
        super().__init__(network)
        self.signal_fade = signal_fade or FadeDistribution.rayleigh()
        self.interf_fade = interf_fade or FadeDistribution.rayleigh()

    @property
    def mark_mean(self):
        return self.interf_fade.frac_moment(1.0)

    def signal_power(self, gen, trials):
        net = self.network
        return net.P * net.u ** -net.alpha * self.signal_fade.sample(gen, trials)

    def interferer_powers(self, gen, radii, owner, counts):
        net = self.network
        return net.P * self.interf_fade.sample(gen, radii.size) * radii ** -net.alpha

    def outage_floor(self):
        net = self.network
        if net.N == 0:
            return 0.0
        return self.signal_fade.cdf(net.tau / net.snr)

    def with_lambda(self, lam):
        return FadingModel(self.network.with_lambda(lam), self.signal_fade, self.interf_fade)

    def describe(self):
        info = super().describe()
        info.update(signal_fade=repr(self.signal_fade), interf_fade=repr(self.interf_fade))
        return info


class VldModel(SinrModel):
    """收发距离每次快照按 law 抽取，N = 0"""

    name = "vld"
    TAIL = 1e-3

    def __init__(self, network, law):
        super().__init__(network)
        if network.N != 0:
            raise ParameterError("variable link distance simulation requires N = 0")
        self.law = law

    @property
    def reference_threshold(self):
        return self._high_distance() ** -self.network.alpha / self.network.tau

    def _high_distance(self):
        """P(u > u_hi) = TAIL"""
        law = self.law
        if law.kind == "fixed":
            return law.u
        if law.kind == "nearest_neighbor":
            return (math.log(1.0 / self.TAIL) / (law.mu * law.c_d)) ** (1.0 / law.d)
        gap = lambda u: law.ccdf(u) - self.TAIL
        lo, hi = expand_upper(gap, 0.0, 1.0, what="link distance quantile")
        return bracketed_root(gap, lo, hi, what="link distance quantile")

    def signal_power(self, gen, trials):
        net = self.network
        return net.P * self.law.sample(gen, trials) ** -net.alpha

    def outage_floor(self):
        return 0.0

    def with_lambda(self, lam):
        return VldModel(self.network.with_lambda(lam), self.law)

    def describe(self):
        info = super().describe()
        info.update(law=self.law.kind)
        return info


class IcModel(SinrModel):
    """干扰消除：最近的 K 个且接收功率超过 P_min 的干扰者残留 κ 倍"""

    name = "ic"

    def __init__(self, ic_params):
        super().__init__(ic_params.network)
        self.params = ic_params

    def interferer_powers(self, gen, radii, owner, counts):
        p = self.params
        powers = self.network.P * radii ** -self.network.alpha
        if p.K == 0:
            return powers
        # radii 在每次试验内升序，rank 即远近次序；无衰落时最近者即最强者
        offsets = np.concatenate(([0], np.cumsum(counts)[:-1]))
        rank = np.arange(radii.size) - offsets[owner]
        cancel = (rank < p.K) & (powers > p.P_min)
        return np.where(cancel, p.kappa * powers, powers)

    def with_lambda(self, lam):
        return IcModel(replace(self.params, network=self.network.with_lambda(lam)))

    def describe(self):
        info = super().describe()
        info.update(kappa=self.params.kappa, K=self.params.K, P_min=self.params.P_min)
        return info


class FtsModel(SinrModel):
    """衰落门限调度：抽潜在发送者 PPP，自身信道衰落超过 ĥ 的才发送"""

    name = "fts"

    def __init__(self, fts_params):
        super().__init__(fts_params.network)
        self.params = fts_params

    @property
    def attempt_intensity(self):
        return self.params.lam_hat

    @property
    def interferer_intensity(self):
        return self.params.lam_hat

    @property
    def sampling_intensity(self):
        return self.params.lambda_pot

    @property
    def mark_mean(self):
        return self.params.fade.frac_moment(1.0)

    def signal_power(self, gen, trials):
        net = self.network
        return net.P * net.u ** -net.alpha * self.params.fade.sample(gen, trials, floor=self.params.h_hat)

    def interferer_powers(self, gen, radii, owner, counts):
        fade = self.params.fade
        own = fade.sample(gen, radii.size)
        cross = fade.sample(gen, radii.size)
        active = own > self.params.h_hat
        return np.where(active, self.network.P * cross * radii ** -self.network.alpha, 0.0)

    def outage_floor(self):
        return 0.0

    def with_lambda(self, lam):
        """lam 是发送者密度 λ̂，换算成潜在发送者密度"""
        tail = self.params.fade.ccdf(self.params.h_hat)
        return FtsModel(replace(self.params, lambda_pot=lam / tail))

    def describe(self):
        info = super().describe()
        info.update(lambda_pot=self.params.lambda_pot, h_hat=self.params.h_hat,
                    lam_hat=self.params.lam_hat, fade=repr(self.params.fade))
        return info


class FpcModel(SinrModel):
    """分数功率控制：节点 i 以 P h_ii^{-f}/E[h^{-f}] 发送"""

    name = "fpc"

    def __init__(self, fpc_params):
        super().__init__(fpc_params.network)
        self.params = fpc_params

    @property
    def mark_mean(self):
        return self.params.cross.frac_moment(1.0)

    def signal_power(self, gen, trials):
        p, net = self.params, self.network
        h = p.signal.sample(gen, trials)
        return net.P * net.u ** -net.alpha * h ** (1.0 - p.f) / p.signal.frac_moment(-p.f)

    def interferer_powers(self, gen, radii, owner, counts):
        p, net = self.params, self.network
        own = p.own.sample(gen, radii.size)
        cross = p.cross.sample(gen, radii.size)
        power = net.P * own ** -p.f / p.own.frac_moment(-p.f)
        return power * cross * radii ** -net.alpha

    def outage_floor(self):
        return fpc_q0(self.params)

    def with_lambda(self, lam):
        return FpcModel(replace(self.params, network=self.network.with_lambda(lam)))

    def describe(self):
        info = super().describe()
        info.update(f=self.params.f)
        return info


class MrcModel(SinrModel):
    """n_R 根天线最大比合并：信号功率 ~ Gamma(n_R, 1)，干扰标记 ~ Exp(1)"""

    name = "mrc"

    def __init__(self, network, n_r):
        super().__init__(network)
        if n_r < 1:
            raise ParameterError(f"receive antenna count must be >= 1: n_r={n_r}")
        self.n_r = int(n_r)

    def signal_power(self, gen, trials):
        net = self.network
        return net.P * net.u ** -net.alpha * gen.gamma(self.n_r, 1.0, trials)

    def interferer_powers(self, gen, radii, owner, counts):
        return self.network.P * gen.exponential(1.0, radii.size) * radii ** -self.network.alpha

    def outage_floor(self):
        net = self.network
        if net.N == 0:
            return 0.0
        return FadeDistribution.gamma_law(self.n_r).cdf(net.tau / net.snr)

    def with_lambda(self, lam):
        return MrcModel(self.network.with_lambda(lam), self.n_r)

    def describe(self):
        info = super().describe()
        info.update(n_r=self.n_r)
        return info


class MultihopModel(FadingModel):
    """多跳路由中单跳的中断：跳长 U/M，信号与干扰都为 Rayleigh 衰落"""

    name = "multihop"

    def __init__(self, mp, M):
        if M < 1:
            raise ParameterError(f"hop count must be >= 1: M={M}")
        network = NetworkParams(d=mp.d, lam=mp.lam, alpha=mp.alpha, u=mp.U / M,
                                P=mp.P, N=mp.N, tau=mp.tau)
        super().__init__(network)
        self.mp = mp
        self.M = int(M)

    def with_lambda(self, lam):
        return MultihopModel(replace(self.mp, lam=lam), self.M)

    def describe(self):
        info = super().describe()
        info.update(U=self.mp.U, A=self.mp.A, M=self.M)
        return info


def _as_dict(network):
    return {key: getattr(network, key) for key in ("d", "lam", "alpha", "epsilon", "u", "P", "N", "tau")}
