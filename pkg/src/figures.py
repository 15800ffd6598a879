#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
figure 命令：按图号生成 CurveSeries
解析列为精确值，经验列带置信半宽列；同样的参数与种子得到同样的数据。
"""

import math
import logging
from dataclasses import replace

import numpy as np

from src import evaluators
from src.core import basic, design, extensions, mimo
from src.core.fades import LinkDistanceLaw
from src.core.montecarlo.engine import (SimConfig, estimate_op, estimate_sum_max_ratio,
                                        partition_plan, proportion_half_width)
from src.core.params import Regime
from src.core.pointproc import RngStream, Window, ordered_distance_cdf, sample_ppp_batch
from src.core.shotnoise import SnSpec, levy_ccdf, sn_ccdf_series, stable_dispersion
from src.core.specfun import ball_coefficient, reflection_product
from src.utils.common import CurveSeries
from src.utils.errors import ParameterError, SeriesUnreliableError

logger = logging.getLogger(__name__)

FIGURES = {}


def figure(fig_id, preset=None):
    """注册图号；preset 为该图默认使用的 config.yaml 预设"""
    def register(func):
        FIGURES[fig_id] = (func, preset)
        return func
    return register


def _series(fig_id, x_label, opts, panel=None, **extra):
    name = fig_id if panel is None else f"{fig_id}-{panel}"
    metadata = {"figure": fig_id, "flags": dict(opts)}
    metadata.update(extra)
    return CurveSeries(name=name, x_label=x_label, metadata=metadata)


def _mc_column(model, params_list, opts, **options):
    """对每组参数跑一次 estimate_op，返回 (均值列, 半宽列)"""
    means, widths = [], []
    for params in params_list:
        cfg = SimConfig(model, params, trials=int(opts["trials"]), seed=int(opts["seed"]), options=options)
        est = estimate_op(cfg)
        means.append(est.mean)
        widths.append(est.half_width)
    return means, widths


def _lambda_grid(top, points=12):
    return np.linspace(top / points, top, points).tolist()


# ================= 点过程与散粒噪声 =================
@figure("ppp-hist", preset="basic_fig")
def fig_ppp_hist(opts):
    """球内点数直方图与最近点距离 CDF，对照 Poisson PMF 与闭式 CDF"""
    d, lam = int(opts["d"]), opts["lam"]
    if lam <= 0:
        raise ParameterError(f"ppp-hist needs a positive intensity: lambda={lam}")
    radius = (5.0 / (lam * ball_coefficient(d))) ** (1.0 / d)
    window = Window(d, 0.0, radius)
    trials, seed = int(opts["trials"]), int(opts["seed"])
    counts_all, nearest_all = [], []
    for index, n in partition_plan(trials):
        counts, radii = sample_ppp_batch(lam, window, RngStream(seed, index).generator(), n)
        offsets = np.concatenate(([0], np.cumsum(counts)[:-1]))
        nearest = np.full(n, np.inf)
        occupied = counts > 0
        nearest[occupied] = radii[offsets[occupied]]
        counts_all.append(counts)
        nearest_all.append(nearest)
    counts = np.concatenate(counts_all)
    nearest = np.concatenate(nearest_all)

    mean = lam * window.volume
    ks = np.arange(0, 21)
    freq = np.bincount(np.minimum(counts, ks[-1] + 1), minlength=ks[-1] + 2)[:ks.size] / trials
    log_pmf = ks * math.log(mean) - mean - np.array([math.lgamma(k + 1.0) for k in ks])
    hist = _series("ppp-hist", "k", opts, panel="counts", radius=radius, regime=Regime.EMPIRICAL.value)
    hist.add_column("k", ks.tolist())
    hist.add_column("empirical", freq.tolist())
    hist.add_column("empirical_hw", [proportion_half_width(p, trials, 0.99) for p in freq])
    hist.add_column("poisson", np.exp(log_pmf).tolist())

    ts = np.linspace(radius / 40.0, radius, 40)
    ecdf = [(nearest <= t).mean() for t in ts]
    dist = _series("ppp-hist", "t", opts, panel="nearest", radius=radius, regime=Regime.EMPIRICAL.value)
    dist.add_column("t", ts.tolist())
    dist.add_column("empirical", [float(v) for v in ecdf])
    dist.add_column("empirical_hw", [proportion_half_width(p, trials, 0.99) for p in ecdf])
    dist.add_column("exact", [ordered_distance_cdf(1, lam, d, t) for t in ts])
    return [hist, dist]


@figure("sn-ccdf", preset="sn_fig")
def fig_sn_ccdf(opts):
    """一维 Lévy 情形的闭式 CCDF 与级数，及平面上和与最大值的经验 CCDF"""
    gamma_ = stable_dispersion(SnSpec(1, 1.0, 2.0)).gamma
    ys = np.geomspace(1.0, 1e4, 41)
    levy = _series("sn-ccdf", "y", opts, panel="levy", dispersion=gamma_, regime=Regime.EXACT.value)
    series_vals, bounds = [], []
    for y in ys:
        try:
            value, bound = sn_ccdf_series(1.0, 0.5, 1.0, y, return_bound=True)
        except SeriesUnreliableError:
            value, bound = math.nan, math.nan
        series_vals.append(value)
        bounds.append(bound)
    levy.add_column("y", ys.tolist())
    levy.add_column("levy", [levy_ccdf(gamma_, y) for y in ys])
    levy.add_column("series", series_vals)
    levy.add_column("series_bound", bounds)

    spec = SnSpec(int(opts["d"]), opts["lam"], opts["alpha"])
    cfg = SimConfig("basic", evaluators.network_from(opts), trials=int(opts["trials"]), seed=int(opts["seed"]))
    ratio = estimate_sum_max_ratio(spec, np.geomspace(1.0, 1e3, 25), cfg)
    ratio.name = "sn-ccdf-sum-max"
    ratio.metadata.update(figure="sn-ccdf", flags=dict(opts))
    return [levy, ratio]


# ================= 基本模型 =================
@figure("op-tc-exact", preset="basic_fig")
def fig_op_tc_exact(opts):
    params = evaluators.network_from(opts)
    lams = _lambda_grid(0.2, 40)
    op = _series("op-tc-exact", "lambda", opts, panel="op", regime=Regime.EXACT.value)
    op.add_column("lambda", lams)
    op.add_column("op_exact", [basic.op_exact_half(params.with_lambda(l)) for l in lams])
    op.add_column("op_asymptotic", [basic.op_tc_asymptotic(params.with_lambda(l), 0.1).op for l in lams])

    qs = np.linspace(0.01, 0.5, 50).tolist()
    tc = _series("op-tc-exact", "qstar", opts, panel="tc", regime=Regime.EXACT.value)
    tc.add_column("qstar", qs)
    tc.add_column("tc_exact", [basic.tc_exact_half(params, q) for q in qs])
    tc.add_column("tc_asymptotic", [basic.op_tc_asymptotic(params, q).tc for q in qs])
    return [op, tc]


@figure("bounds-sandwich", preset="basic_fig")
def fig_bounds_sandwich(opts):
    """下界、三种上界与经验 OP"""
    params = evaluators.network_from(opts)
    lams = [0.005, 0.01, 0.02, 0.05]
    grid = [params.with_lambda(l) for l in lams]
    mc, mc_hw = _mc_column("basic", grid, opts)
    out = _series("bounds-sandwich", "lambda", opts, seed=int(opts["seed"]), trials=int(opts["trials"]))
    out.add_column("lambda", lams)
    if params.epsilon == 0 and math.isclose(params.delta, 0.5):
        out.add_column("op_exact", [basic.op_exact_half(p) for p in grid])
    out.add_column("op_lb", [basic.op_lb(p) for p in grid])
    out.add_column("op_ub_markov", [basic.op_ub_markov(p) for p in grid])
    out.add_column("op_ub_chebychev", [basic.op_ub_chebychev(p) for p in grid])
    out.add_column("op_ub_chernoff", [basic.op_ub_chernoff(p) for p in grid])
    out.add_column("op_mc", mc)
    out.add_column("op_mc_hw", mc_hw)
    return [out]


@figure("tp-tc", preset="basic_fig")
def fig_tp_tc(opts):
    """TP 上界 λe^{-λa} 与 TC 上界，两者的最大值相同"""
    params = evaluators.network_from(opts)
    lam_opt, tp_max, _ = basic.tp_ub_optimum(params)
    a = basic.dominant_volume(params)
    lams = np.linspace(0.005, 0.5, 100).tolist()
    tp = _series("tp-tc", "lambda", opts, panel="tp", a=a, lambda_opt=lam_opt, tp_max=tp_max,
                 regime=Regime.UPPER_BOUND.value)
    tp.add_column("lambda", lams)
    tp.add_column("tp_ub", [l * math.exp(-l * a) for l in lams])
    tp.add_column("op_lb", [basic.op_lb(params.with_lambda(l)) for l in lams])
    if params.epsilon == 0 and math.isclose(params.delta, 0.5):
        tp.add_column("tp_exact", [basic.throughput(params.with_lambda(l)) for l in lams])

    q_opt, tc_max = basic.tc_ub_optimum(params)
    qs = np.linspace(0.01, 0.99, 99).tolist()
    tc = _series("tp-tc", "qstar", opts, panel="tc", qstar_opt=q_opt, tc_max=tc_max,
                 regime=Regime.UPPER_BOUND.value)
    tc.add_column("qstar", qs)
    tc.add_column("tc_ub", [basic.op_lb_tc_ub(params, q).tc for q in qs])
    return [tp, tc]


@figure("mark-cheb-cher", preset="basic_fig")
def fig_mark_cheb_cher(opts):
    params = evaluators.network_from(opts)
    lams = _lambda_grid(0.1, 20)
    out = _series("mark-cheb-cher", "lambda", opts, chebychev_threshold=basic.chebychev_threshold(params))
    out.add_column("lambda", lams)
    out.add_column("op_lb", [basic.op_lb(params.with_lambda(l)) for l in lams])
    out.add_column("op_ub_markov", [basic.op_ub_markov(params.with_lambda(l)) for l in lams])
    out.add_column("op_ub_chebychev", [basic.op_ub_chebychev(params.with_lambda(l)) for l in lams])
    out.add_column("op_ub_chernoff", [basic.op_ub_chernoff(params.with_lambda(l)) for l in lams])
    return [out]


# ================= 衰落与可变距离 =================
@figure("fad-compare", preset="basic_fig")
def fig_fad_compare(opts):
    """Rayleigh 衰落与无衰落的渐近斜率比 = πδ/sin(πδ)"""
    params = evaluators.network_from(opts)
    deltas = np.round(np.arange(0.05, 0.951, 0.05), 10).tolist()
    slope = _series("fad-compare", "delta", opts, panel="slope", regime=Regime.ASYMPTOTIC.value)
    nonfading, fading = [], []
    for delta in deltas:
        p = replace(params, alpha=params.d / delta)
        nonfading.append(basic.op_tc_asymptotic(p, 0.1).notes["slope"])
        fading.append(extensions.op_tc_rayleigh_exact(p).notes["slope"])
    slope.add_column("delta", deltas)
    slope.add_column("slope_nonfading", nonfading)
    slope.add_column("slope_rayleigh", fading)
    slope.add_column("ratio", [f / n for f, n in zip(fading, nonfading)])
    slope.add_column("ratio_exact", [reflection_product(delta) for delta in deltas])

    lams = _lambda_grid(0.1, 20)
    op = _series("fad-compare", "lambda", opts, panel="op", regime=Regime.EXACT.value)
    op.add_column("lambda", lams)
    if params.epsilon == 0 and math.isclose(params.delta, 0.5):
        op.add_column("op_nonfading", [basic.op_exact_half(params.with_lambda(l)) for l in lams])
    op.add_column("op_rayleigh", [extensions.op_tc_rayleigh_exact(params.with_lambda(l)).op for l in lams])
    return [slope, op]


@figure("fad-bounds", preset="basic_fig")
def fig_fad_bounds(opts):
    params = evaluators.network_from(opts)
    signal, interf = evaluators.fades_from(opts)
    q_star = opts["qstar"]
    lams = [0.005, 0.01, 0.02, 0.05, 0.1]
    grid = [params.with_lambda(l) for l in lams]
    mc, mc_hw = _mc_column("fading", grid, opts, signal_fade=signal, interf_fade=interf)
    out = _series("fad-bounds", "lambda", opts, seed=int(opts["seed"]), trials=int(opts["trials"]))
    out.add_column("lambda", lams)
    if signal.kind == "rayleigh":
        out.add_column("op_exact", [extensions.op_tc_rayleigh_exact(p, interf).op for p in grid])
    out.add_column("op_lb", [extensions.op_lb_fading(p, signal, interf) for p in grid])
    out.add_column("op_asymptotic",
                   [extensions.op_tc_fading_asymptotic(p, signal, interf, q_star).op for p in grid])
    out.add_column("op_mc", mc)
    out.add_column("op_mc_hw", mc_hw)
    return [out]


@figure("vld", preset="basic_fig")
def fig_vld(opts):
    """最近邻链路距离与同均值固定距离的 OP 之比，λ → 0 时趋于 E[u^d]/E[u]^d"""
    params = evaluators.network_from(opts, N=0.0, epsilon=0.0)
    mu = opts["mu"] if opts["mu"] is not None else 1.0
    law = LinkDistanceLaw.nearest_neighbor(mu, params.d)
    fixed = LinkDistanceLaw.fixed(law.mean, params.d)
    lams = np.geomspace(1e-4, 0.5, 30).tolist()
    out = _series("vld", "lambda", opts, mu=mu, mean_distance=law.mean,
                  penalty=extensions.vld_penalty(params.d))
    vld_lb, fld_lb, vld_asym, fld_asym = [], [], [], []
    for l in lams:
        p = params.with_lambda(l)
        vld_lb.append(extensions.op_tc_vld(p, law, 0.1, "lower_bound").op)
        fld_lb.append(extensions.op_tc_vld(p, fixed, 0.1, "lower_bound").op)
        vld_asym.append(extensions.op_tc_vld(p, law, 0.1).op)
        fld_asym.append(extensions.op_tc_vld(p, fixed, 0.1).op)
    out.add_column("lambda", lams)
    out.add_column("op_vld_lb", vld_lb)
    out.add_column("op_fld_lb", fld_lb)
    out.add_column("ratio_lb", [v / f for v, f in zip(vld_lb, fld_lb)])
    out.add_column("op_vld_asymptotic", vld_asym)
    out.add_column("op_fld_asymptotic", fld_asym)
    return [out]


# ================= 多跳 =================
@figure("multihop-A", preset="multihop_default")
def fig_multihop_a(opts):
    """端到端尝试次数 A 对多跳 TC 的影响"""
    mp = evaluators.multihop_from(opts)
    budgets = list(range(1, 21))
    caps = [extensions.multihop_tc(replace(mp, A=A)) for A in budgets]
    out = _series("multihop-A", "A", opts, regime=Regime.EXACT.value)
    out.add_column("A", budgets)
    out.add_column("tc_exact", [c.exact for c in caps])
    out.add_column("tc_ub", [c.ub for c in caps])
    out.add_column("best_hops", [c.best_hops for c in caps])
    out.add_column("best_hops_ub", [c.best_hops_ub for c in caps])
    return [out]


@figure("multihop-M", preset="multihop_default")
def fig_multihop_m(opts):
    """固定 A 时各跳数 M 的精确比值与上界"""
    mp = evaluators.multihop_from(opts)
    hops = list(range(1, mp.A + 1))
    exact, ub = [], []
    for M in hops:
        q = extensions.per_hop_op(mp, M)
        exact.append(mp.lam * extensions.pascal_success_probability(M, mp.A, q)
                     / extensions.pascal_truncated_mean(M, mp.A, q))
        ub.append(mp.lam * (1.0 - q) / M)
    choice = extensions.optimal_hops(mp)
    out = _series("multihop-M", "M", opts, M_continuous=choice.continuous, M_integer=choice.integer,
                  regime=Regime.EXACT.value)
    out.add_column("M", hops)
    out.add_column("tc_exact", exact)
    out.add_column("tc_ub", ub)
    return [out]


# ================= 多频带 =================
def _db_to_linear(db):
    return 10.0 ** (db / 10.0)


@figure("spec-omega", preset="spectrum_default")
def fig_spec_omega(opts):
    """ω̃(ν) 在几个 ε_b/η 下的曲线"""
    delta = int(opts["d"]) / opts["alpha"]
    nus = np.linspace(0.02, 8.0, 400).tolist()
    levels = (3.0, 10.0, 20.0)
    out = _series("spec-omega", "nu", opts, delta=delta, ebno_db=list(levels), regime=Regime.EXACT.value)
    out.add_column("nu", nus)
    for db in levels:
        ebno = _db_to_linear(db)
        column = []
        for nu in nus:
            try:
                column.append(design.spectrum_objective_nu(nu, delta, ebno))
            except ParameterError:
                column.append(math.nan)
        out.add_column(f"omega_{db:g}dB", column)
    return [out]


@figure("spec-nu", preset="spectrum_default")
def fig_spec_nu(opts):
    """ν_max 与 ν* 随 ε_b/η 的变化，以及低 SNR 展开"""
    delta = int(opts["d"]) / opts["alpha"]
    dbs = np.round(np.arange(-1.5, 30.01, 0.5), 10).tolist()
    out = _series("spec-nu", "ebno_db", opts, delta=delta, nu_star_high_snr=design.nu_star_high_snr(delta),
                  regime=Regime.EXACT.value)
    nu_max, nu_star, nu_max_low, nu_star_low = [], [], [], []
    for db in dbs:
        ebno = _db_to_linear(db)
        nu_max.append(design.spectrum_nu_max(ebno))
        nu_star.append(design.optimal_spectral_efficiency_nu(delta, ebno))
        nu_max_low.append(design.nu_max_low_snr(ebno))
        nu_star_low.append(design.nu_star_low_snr(ebno, delta))
    out.add_column("ebno_db", dbs)
    out.add_column("nu_max", nu_max)
    out.add_column("nu_star", nu_star)
    out.add_column("nu_max_low_snr", nu_max_low)
    out.add_column("nu_star_low_snr", nu_star_low)
    return [out]


# ================= 干扰消除 / FTS / FPC =================
@figure("ic-grid", preset="ic_default")
def fig_ic_grid(opts):
    """干扰消除下界、无消除下界、完美消除下界与显式消除的经验 OP"""
    p = evaluators.ic_from(opts)
    lams = [0.005, 0.01, 0.025, 0.05]
    grid = [replace(p, network=p.network.with_lambda(l)) for l in lams]
    mc, mc_hw = _mc_column("ic", grid, opts)
    out = _series("ic-grid", "lambda", opts, seed=int(opts["seed"]), trials=int(opts["trials"]))
    out.add_column("lambda", lams)
    out.add_column("op_lb_no_ic", [basic.op_lb(g.network) for g in grid])
    out.add_column("op_lb_ic", [design.ic_op_lb(g) for g in grid])
    out.add_column("op_lb_perfect", [design.ic_perfect_op_lb(g.network, g.K) for g in grid])
    out.add_column("op_mc", mc)
    out.add_column("op_mc_hw", mc_hw)
    return [out]


@figure("fts-asymp", preset="fts_default")
def fig_fts_asymp(opts):
    """三种调度的渐近 TP，及 TP 随门限 ĥ 的变化"""
    network = evaluators.network_from(opts)
    _, fade = evaluators.fades_from(opts)
    lambda_pot = opts["lambda_pot"] if opts["lambda_pot"] is not None else network.lam
    hats = np.linspace(lambda_pot / 20.0, lambda_pot, 20).tolist()
    comps = [design.fts_comparison(network, h, lambda_pot, fade) for h in hats]
    cmp_ = _series("fts-asymp", "lam_hat", opts, panel="compare", lambda_pot=lambda_pot,
                   regime=Regime.ASYMPTOTIC.value)
    cmp_.add_column("lam_hat", hats)
    cmp_.add_column("tp_no_fading", [c.no_fading for c in comps])
    cmp_.add_column("tp_fading_no_scheduling", [c.fading_no_scheduling for c in comps])
    cmp_.add_column("tp_threshold_scheduling", [c.threshold_scheduling for c in comps])
    cmp_.add_column("h_hat", [c.h_hat for c in comps])

    choice = design.fts_optimal_threshold(network, lambda_pot, fade)
    thresholds = np.linspace(0.01, 5.0, 500).tolist()
    tps = [design.fts_asymptotic(design.FtsParams(network, lambda_pot, h, fade))[1] for h in thresholds]
    scan = thresholds[int(np.argmax(tps))]
    thr = _series("fts-asymp", "h_hat", opts, panel="threshold", lambda_pot=lambda_pot,
                  b=design.fts_b(network, fade), h_star=choice.h_hat, h_scan=scan,
                  regime=Regime.ASYMPTOTIC.value)
    thr.add_column("h_hat", thresholds)
    thr.add_column("tp", tps)
    return [cmp_, thr]


@figure("fpc-f", preset="fpc_default")
def fig_fpc_f(opts):
    """OP 随功率控制指数 f 的变化，f = 1/2 处最小"""
    network = evaluators.network_from(opts)
    signal, interf = evaluators.fades_from(opts)
    fs = np.round(np.linspace(0.0, 1.0, 41), 12).tolist()
    asym, lb = [], []
    for f in fs:
        if f >= 1.0:
            asym.append(math.nan)
            lb.append(math.nan)
            continue
        p = design.FpcParams(network, f, signal=signal, own=interf, cross=interf)
        asym.append(design.fpc_asymptotic(p, opts["qstar"]).op)
        lb.append(design.fpc_op_lb(p))
    out = _series("fpc-f", "f", opts, regime=Regime.ASYMPTOTIC.value)
    out.add_column("f", fs)
    out.add_column("slope_factor", [design.fpc_rayleigh_slope_factor(network.delta, f) for f in fs])
    out.add_column("op_asymptotic", asym)
    out.add_column("op_lb", lb)
    return [out]


@figure("fpc-lam", preset="fpc_default")
def fig_fpc_lam(opts):
    network = evaluators.network_from(opts)
    signal, interf = evaluators.fades_from(opts)
    lams = _lambda_grid(0.1, 20)
    out = _series("fpc-lam", "lambda", opts)
    out.add_column("lambda", lams)
    for f in sorted({0.0, 0.5, float(opts["f"])}):
        ps = [design.FpcParams(network.with_lambda(l), f, signal=signal, own=interf, cross=interf) for l in lams]
        label = f"{f:g}"
        out.add_column(f"op_asymptotic_f{label}", [design.fpc_asymptotic(p, opts["qstar"]).op for p in ps])
        out.add_column(f"op_lb_f{label}", [design.fpc_op_lb(p) for p in ps])
    return [out]


# ================= 多天线 =================
@figure("mimo-ocd", preset="mimo_default")
def fig_mimo_ocd(opts):
    """接收天线数 n_R 对 TC 的影响：MRC、PZF、MMSE、ZF"""
    params = evaluators.network_from(opts)
    q_star = opts["qstar"]
    theta = mimo.theta_star(params.alpha)
    antennas = list(range(1, 33))
    mrc, mrc_lb, mrc_ub, pzf_ub, pzf_lb, mmse, zf = [], [], [], [], [], [], []
    for n_r in antennas:
        cap = mimo.mrc_tc(params, mimo.AntennaConfig(n_t=1, n_r=n_r), q_star)
        mrc.append(cap.tc)
        mrc_lb.append(cap.lb)
        mrc_ub.append(cap.ub)
        z = min(max(round(theta * n_r), 0), n_r - 1)
        pzf_ub.append(mimo.pzf_tc_ub(params, n_r, z, q_star))
        lb = mimo.pzf_tc_lb(params, n_r, z, q_star)
        pzf_lb.append(math.nan if lb is None else lb)
        mmse.append(mimo.mmse_tc_ub(params, n_r, q_star))
        zf.append(mimo.zf_tc_ub(params, n_r, q_star))
    out = _series("mimo-ocd", "n_r", opts, theta_star=theta, regime=Regime.ASYMPTOTIC.value,
                  note=mimo.ASYMPTOTIC_NOTE)
    out.add_column("n_r", antennas)
    out.add_column("tc_mrc", mrc)
    out.add_column("tc_mrc_lb", mrc_lb)
    out.add_column("tc_mrc_ub", mrc_ub)
    out.add_column("tc_pzf_ub", pzf_ub)
    out.add_column("tc_pzf_lb", pzf_lb)
    out.add_column("tc_mmse_ub", mmse)
    out.add_column("tc_zf_ub", zf)
    return [out]


def build(fig_id, opts):
    if fig_id not in FIGURES:
        raise ParameterError(f"unknown figure '{fig_id}' (supported: {', '.join(FIGURES)})")
    func, _ = FIGURES[fig_id]
    logger.info(f"生成图数据: {fig_id}")
    return func(opts)


def default_preset(fig_id):
    if fig_id not in FIGURES:
        raise ParameterError(f"unknown figure '{fig_id}' (supported: {', '.join(FIGURES)})")
    return FIGURES[fig_id][1]
