#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
蒙特卡洛估计引擎
试验按 MC_CHUNK_TRIALS 分块，第 i 块使用 RngStream(seed, i)，
各块在线程池中运行，结果按块序做整数计数相加，所以与线程数无关。
"""

import math
import logging
import concurrent.futures
from dataclasses import dataclass, field

import numpy as np
from scipy import stats

from config import (MAX_WORKERS, MC_CHUNK_TRIALS, MC_CONFIDENCE, MC_DEFAULT_SEED,
                    MC_DEFAULT_TRIALS, MC_TC_MAXITER, MC_WINDOW_TOLERANCE)
from src.core.montecarlo import MODELS, create_instance
from src.core.params import Regime
from src.core.pointproc import RngStream, Window, sample_ppp_batch
from src.core.shotnoise import max_sn_cdf
from src.core.specfun import normal_quantile
from src.utils.common import CurveSeries
from src.utils.errors import DomainError, NumericalError, ParameterError

logger = logging.getLogger(__name__)

# 寻找 TC 区间上端时最多倍增的次数
MAX_BRACKET_DOUBLINGS = 60


@dataclass(frozen=True)
class SimConfig:
    """一次仿真的完整配置

    Attributes:
        model: 模型名，见 MODELS
        params: 该模型的参数记录
        trials: 快照数
        seed: 随机种子
        window_tolerance: 截断干扰均值相对 ξ^{-α} 的上限
        confidence: 置信水平
        options: 传给模型工厂的额外选项
    """
    model: str
    params: object
    trials: int = MC_DEFAULT_TRIALS
    seed: int = MC_DEFAULT_SEED
    window_tolerance: float = MC_WINDOW_TOLERANCE
    confidence: float = MC_CONFIDENCE
    options: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.model not in MODELS:
            raise ParameterError(f"unsupported simulation model: {self.model} (supported: {', '.join(MODELS)})")
        if int(self.trials) != self.trials or self.trials < 1:
            raise ParameterError(f"trials must be >= 1: {self.trials}")
        if self.seed < 0:
            raise ParameterError(f"seed must be nonnegative: {self.seed}")
        if not (0.0 < self.window_tolerance < 1.0):
            raise ParameterError(f"window tolerance must lie in (0,1): {self.window_tolerance}")
        if not (0.0 < self.confidence < 1.0):
            raise ParameterError(f"confidence must lie in (0,1): {self.confidence}")

    def build(self):
        return create_instance(self.model, self.params, **self.options)


@dataclass(frozen=True)
class EmpiricalEstimate:
    """蒙特卡洛估计：均值、置信半宽、试验数，以及复现所需的元数据"""
    mean: float
    half_width: float
    trials: int
    metadata: dict = field(default_factory=dict)

    @property
    def regime(self):
        return Regime.EMPIRICAL

    @property
    def interval(self):
        return self.mean - self.half_width, self.mean + self.half_width


def z_value(confidence):
    """双侧置信水平对应的正态分位数"""
    return normal_quantile(1.0 - (1.0 - confidence) / 2.0)


def proportion_half_width(mean, trials, confidence):
    """z·√(p(1-p)/n)"""
    return z_value(confidence) * math.sqrt(max(mean * (1.0 - mean), 0.0) / trials)


def partition_plan(trials, chunk=MC_CHUNK_TRIALS):
    """[(块号, 试验数), ...]，只取决于 trials 与块大小"""
    full, rest = divmod(int(trials), chunk)
    plan = [(i, chunk) for i in range(full)]
    if rest:
        plan.append((full, rest))
    return plan


def _run_chunks(task, seed, trials):
    """并行执行所有块，按块序相加

    Args:
        task: task(generator, n) -> 计数数组
        seed: 随机种子
        trials: 总试验数

    Returns:
        (合计计数, 分块计划描述)
    """
    plan = partition_plan(trials)
    workers = min(MAX_WORKERS, len(plan))

    def run(item):
        index, n = item
        return np.asarray(task(RngStream(seed, index).generator(), n), dtype=np.int64)

    if workers == 1:
        results = [run(item) for item in plan]
    else:
        with concurrent.futures.ThreadPoolExecutor(max_workers=workers) as executor:
            results = list(executor.map(run, plan))
    total = results[0].copy()
    for counts in results[1:]:
        total += counts
    info = {"chunk_trials": MC_CHUNK_TRIALS, "chunks": len(plan), "workers": workers}
    return total, info


def _estimate_model(model, cfg):
    window, bias = model.window(cfg.window_tolerance)

    def task(gen, n):
        return [np.count_nonzero(model.sample_outage(gen, n, window))]

    total, plan = _run_chunks(task, cfg.seed, cfg.trials)
    mean = int(total[0]) / cfg.trials
    half_width = proportion_half_width(mean, cfg.trials, cfg.confidence)
    metadata = {
        "regime": Regime.EMPIRICAL.value,
        "seed": cfg.seed,
        "trials": cfg.trials,
        "confidence": cfg.confidence,
        "window_tolerance": cfg.window_tolerance,
        "window_radius": window.r_outer,
        "inner_radius": window.r_inner,
        "truncation_bias_bound": bias,
        "plan": plan,
    }
    metadata.update(model.describe())
    return EmpiricalEstimate(mean, half_width, cfg.trials, metadata)


def estimate_op(cfg):
    """经验 OP：SINR < τ 的快照比例"""
    model = cfg.build()
    estimate = _estimate_model(model, cfg)
    logger.info(f"{cfg.model} 经验OP = {estimate.mean:.6g} ± {estimate.half_width:.3g} "
                f"({cfg.trials} 次试验, R={estimate.metadata['window_radius']:.4g})")
    return estimate


def estimate_tc(cfg, q_star):
    """经验 TC：对 λ 二分经验 OP 直到 |q̂ - q*| ≤ 半宽，返回 λ(1 - q*)

    每个 λ 使用同一组随机子流（公共随机数）。
    """
    if not (0.0 < q_star < 1.0):
        raise DomainError(f"target outage must lie in (0,1): q*={q_star}")
    model = cfg.build()
    floor = model.outage_floor()
    if q_star <= floor:
        logger.info(f"q*={q_star} 不高于 q(0)={floor:.6g}，TC 为 0")
        return EmpiricalEstimate(0.0, 0.0, cfg.trials, {"regime": Regime.EMPIRICAL.value,
                                                         "outage_floor": floor, "seed": cfg.seed,
                                                         "converged": True})

    def q_at(lam):
        return _estimate_model(model.with_lambda(lam), cfg)

    net = model.network
    lo, q_lo = 0.0, floor
    hi = 1.0 / (net.c_d * net.xi ** net.d)
    est_hi = q_at(hi)
    doublings = 0
    while est_hi.mean <= q_star:
        doublings += 1
        if doublings > MAX_BRACKET_DOUBLINGS:
            raise NumericalError(f"non-bracketing interval for empirical TC at q*={q_star}")
        lo, q_lo = hi, est_hi.mean
        hi *= 2.0
        est_hi = q_at(hi)
    q_hi = est_hi.mean

    mid, est = hi, est_hi
    converged = False
    for iteration in range(MC_TC_MAXITER):
        mid = 0.5 * (lo + hi)
        est = q_at(mid)
        logger.debug(f"TC 二分第 {iteration + 1} 步: λ={mid:.6g}, q̂={est.mean:.6g}")
        if abs(est.mean - q_star) <= est.half_width:
            converged = True
            break
        if est.mean < q_star:
            lo, q_lo = mid, est.mean
        else:
            hi, q_hi = mid, est.mean
    if not converged:
        logger.warning(f"经验TC二分 {MC_TC_MAXITER} 步未收敛: q̂={est.mean:.6g}, q*={q_star}, "
                       f"半宽 {est.half_width:.3g}, λ 区间 [{lo:.6g}, {hi:.6g}]")

    # OP 在 λ 处的割线斜率把 q 的半宽换成 λ 的半宽
    slope = (q_hi - q_lo) / (hi - lo) if hi > lo else 0.0
    lam_hw = est.half_width / slope if slope > 0 else 0.5 * (hi - lo)
    tc = mid * (1.0 - q_star)
    metadata = dict(est.metadata)
    metadata.update(q_star=q_star, lambda_star=mid, lambda_bracket=[lo, hi], outage_floor=floor,
                    converged=converged, iterations_max=MC_TC_MAXITER)
    logger.info(f"{cfg.model} 经验TC = {tc:.6g} (λ*={mid:.6g})")
    return EmpiricalEstimate(tc, lam_hw * (1.0 - q_star), cfg.trials, metadata)


def _sn_window(spec, y_min, tolerance):
    """窗口外干扰均值 λdc_d R^{d-α}/(α-d) ≤ tolerance·y_min，且 R 覆盖最大值的全部相关半径"""
    d, alpha = spec.d, spec.alpha
    reach = y_min ** (-1.0 / alpha)
    radius = (spec.intensity * d * spec.c_d / ((alpha - d) * tolerance * y_min)) ** (1.0 / (alpha - d))
    return Window(d, 0.0, max(radius, 2.0 * reach))


def _sum_and_max(spec, window, gen, n):
    counts, radii = sample_ppp_batch(spec.intensity, window, gen, n)
    owner = np.repeat(np.arange(n), counts)
    powers = radii ** -spec.alpha
    total = np.bincount(owner, weights=powers, minlength=n)
    peak = np.zeros(n)
    occupied = counts > 0
    # 每次试验内距离升序，第一个点就是最强者
    offsets = np.concatenate(([0], np.cumsum(counts)[:-1]))
    peak[occupied] = powers[offsets[occupied]]
    return total, peak


def estimate_sum_max_ratio(spec, y_grid, cfg):
    """经验 P(Σ > y)/P(M > y)，附 Σ 与最大值的 CCDF 置信半宽及最大值的闭式 CCDF"""
    if spec.epsilon != 0:
        raise ParameterError(f"sum/max comparison requires epsilon = 0 (epsilon={spec.epsilon})")
    y = np.asarray(sorted(float(v) for v in y_grid))
    if y.size == 0 or y[0] <= 0:
        raise ParameterError("y grid must be nonempty and positive")
    window = _sn_window(spec, y[0], cfg.window_tolerance)

    def task(gen, n):
        total, peak = _sum_and_max(spec, window, gen, n)
        return np.concatenate([(total[:, None] > y).sum(axis=0), (peak[:, None] > y).sum(axis=0)])

    counts, plan = _run_chunks(task, cfg.seed, cfg.trials)
    sum_counts, max_counts = counts[:y.size], counts[y.size:]
    n = cfg.trials
    ccdf_sum = sum_counts / n
    ccdf_max = max_counts / n
    ratio = [s / m if m > 0 else math.nan for s, m in zip(sum_counts, max_counts)]
    series = CurveSeries(
        name="sn-sum-max",
        x_label="y",
        metadata={
            "regime": Regime.EMPIRICAL.value, "seed": cfg.seed, "trials": n,
            "confidence": cfg.confidence, "window_radius": window.r_outer, "plan": plan,
            "d": spec.d, "intensity": spec.intensity, "alpha": spec.alpha,
        },
    )
    series.add_column("y", y.tolist())
    series.add_column("ccdf_sum", ccdf_sum.tolist())
    series.add_column("ccdf_sum_hw", [proportion_half_width(p, n, cfg.confidence) for p in ccdf_sum])
    series.add_column("ccdf_max", ccdf_max.tolist())
    series.add_column("ccdf_max_hw", [proportion_half_width(p, n, cfg.confidence) for p in ccdf_max])
    series.add_column("ratio", ratio)
    series.add_column("ccdf_max_exact", [1.0 - max_sn_cdf(spec, v) for v in y])
    series.add_column("exceedances_max", max_counts.tolist())
    return series


def max_sn_ks_test(spec, cfg, void=1e-12):
    """最大干扰者经验分布对闭式 CDF 的 KS 检验，返回 (统计量, p 值)

    只需要最近点，窗口取到 b_d(o, R) 内无点的概率不超过 void
    """
    if spec.epsilon != 0:
        raise ParameterError(f"max-interferer test requires epsilon = 0 (epsilon={spec.epsilon})")
    radius = (math.log(1.0 / void) / (spec.intensity * spec.c_d)) ** (1.0 / spec.d)
    window = Window(spec.d, 0.0, radius)
    samples = []
    for index, n in partition_plan(cfg.trials):
        _, peak = _sum_and_max(spec, window, RngStream(cfg.seed, index).generator(), n)
        samples.append(peak)
    result = stats.kstest(np.concatenate(samples), np.vectorize(lambda v: max_sn_cdf(spec, max(v, 0.0))))
    logger.info(f"最大干扰者 KS 检验: D={result.statistic:.4g}, p={result.pvalue:.4g}")
    return float(result.statistic), float(result.pvalue)
