#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
eval 命令的量值注册表
每个量值名对应一个函数：接收合并后的参数字典，返回若干 Quantity。
参数记录的构造函数（network_from 等）也供 figure 与 mc 共用。
"""

import math
import logging
from dataclasses import dataclass

from src.core import basic, design, extensions, mimo
from src.core.fades import FadeDistribution, LinkDistanceLaw
from src.core.params import NetworkParams, Regime
from src.utils.errors import ParameterError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Quantity:
    name: str
    value: float
    regime: str


QUANTITIES = {}


def quantity(name):
    """注册一个 eval 量值"""
    def register(func):
        QUANTITIES[name] = func
        return func
    return register


# ================= 参数记录 =================
def network_from(opts, **overrides):
    values = dict(d=int(opts["d"]), lam=opts["lam"], alpha=opts["alpha"], epsilon=opts["epsilon"],
                  u=opts["u"], P=opts["power"], N=opts["noise"], tau=opts["tau"])
    values.update(overrides)
    return NetworkParams(**values)


def parse_fade(text):
    """rayleigh | none | gamma:<shape>"""
    if text is None:
        return None
    text = str(text).strip().lower()
    if text == "rayleigh":
        return FadeDistribution.rayleigh()
    if text in ("none", "degenerate"):
        return FadeDistribution.degenerate()
    if text.startswith("gamma:"):
        try:
            shape = float(text.split(":", 1)[1])
        except ValueError as e:
            raise ParameterError(f"bad gamma fade shape in '{text}'") from e
        return FadeDistribution.gamma_law(shape)
    raise ParameterError(f"unknown fade law '{text}' (use rayleigh, none or gamma:<shape>)")


def fades_from(opts):
    """(信号衰落, 干扰衰落)；--signal-fade 缺省时与 --fade 相同"""
    interf = parse_fade(opts["fade"]) or FadeDistribution.rayleigh()
    signal = parse_fade(opts["signal_fade"]) or interf
    return signal, interf


def law_from(opts):
    if opts["mu"] is not None:
        return LinkDistanceLaw.nearest_neighbor(opts["mu"], int(opts["d"]))
    return LinkDistanceLaw.fixed(opts["u"], int(opts["d"]))


def multihop_from(opts):
    return extensions.MultihopParams(U=opts["U"], A=int(opts["A"]), lam=opts["lam"], alpha=opts["alpha"],
                                     tau=opts["tau"], P=opts["power"], N=opts["noise"], d=int(opts["d"]))


def ic_from(opts):
    return design.IcParams(network_from(opts), kappa=opts["kappa"], K=int(opts["K"]), P_min=opts["pmin"])


def fts_from(opts):
    """λ_pot 缺省为 --lambda；ĥ 缺省为 N = 0 下的最优门限"""
    network = network_from(opts)
    _, fade = fades_from(opts)
    lambda_pot = opts["lambda_pot"] if opts["lambda_pot"] is not None else network.lam
    h_hat = opts["hhat"]
    if h_hat is None:
        h_hat = design.fts_optimal_threshold(network, lambda_pot, fade).h_hat
    return design.FtsParams(network, lambda_pot, h_hat, fade)


def fpc_from(opts):
    signal, interf = fades_from(opts)
    return design.FpcParams(network_from(opts), opts["f"], signal=signal, own=interf, cross=interf)


def spectrum_from(opts):
    return design.SpectrumParams(d=int(opts["d"]), u=opts["u"], alpha=opts["alpha"], P_dbw=opts["pdbw"],
                                 W=opts["W"], R=opts["R"], eta=opts["eta"], B=int(opts["B"]))


def antenna_from(opts):
    return mimo.AntennaConfig(n_t=int(opts["nt"]), n_r=int(opts["nr"]), K=int(opts["streams"]), z=int(opts["z"]))


def _optional(value):
    return math.nan if value is None else value


# ================= 基本模型 =================
@quantity("basic-op")
def eval_basic_op(opts):
    params = network_from(opts)
    if params.epsilon != 0:
        raise ParameterError("exact OP with epsilon > 0 has no closed form; use the mc command")
    if math.isclose(params.delta, 0.5):
        return [Quantity("op", basic.op_exact_half(params), Regime.EXACT.value)]
    return [Quantity("op", basic.op_exact_via_ccdf(params), Regime.EXACT.value)]


@quantity("basic-tc")
def eval_basic_tc(opts):
    params = network_from(opts)
    q_star = opts["qstar"]
    if params.epsilon == 0 and math.isclose(params.delta, 0.5):
        tc = basic.tc_exact_half(params, q_star)
    else:
        tc = basic.tc_general(params, q_star)
    return [Quantity("tc", tc, Regime.EXACT.value)]


@quantity("basic-asym")
def eval_basic_asym(opts):
    pair = basic.op_tc_asymptotic(network_from(opts), opts["qstar"])
    return [Quantity("op", pair.op, pair.regime.value),
            Quantity("tc", pair.tc, pair.regime.value),
            Quantity("slope", pair.notes["slope"], pair.regime.value)]


@quantity("basic-lb")
def eval_basic_lb(opts):
    pair = basic.op_lb_tc_ub(network_from(opts), opts["qstar"])
    return [Quantity("op", pair.op, pair.regime.value),
            Quantity("tc", pair.tc, pair.notes["tc_regime"])]


@quantity("basic-ub")
def eval_basic_ub(opts):
    params = network_from(opts)
    bounds = {
        "markov": (basic.op_ub_markov, Regime.UPPER_BOUND_MARKOV),
        "chebychev": (basic.op_ub_chebychev, Regime.UPPER_BOUND_CHEBYCHEV),
        "chernoff": (basic.op_ub_chernoff, Regime.UPPER_BOUND_CHERNOFF),
    }
    names = list(bounds) if opts["bound"] == "all" else [opts["bound"]]
    out = []
    for name in names:
        if name not in bounds:
            raise ParameterError(f"unknown bound '{name}' (use markov, chebychev, chernoff or all)")
        func, regime = bounds[name]
        out.append(Quantity(f"op_{name}", func(params), regime.value))
    return out


@quantity("tp")
def eval_tp(opts):
    params = network_from(opts)
    exact = params.epsilon == 0 and math.isclose(params.delta, 0.5)
    lam_opt, tp_max, op_opt = basic.tp_ub_optimum(params)
    q_opt, tc_max = basic.tc_ub_optimum(params)
    bound = Regime.UPPER_BOUND.value
    return [Quantity("tp", basic.throughput(params), Regime.EXACT.value if exact else bound),
            Quantity("a", basic.dominant_volume(params), Regime.EXACT.value),
            Quantity("lambda_opt", lam_opt, bound),
            Quantity("tp_max", tp_max, bound),
            Quantity("op_at_opt", op_opt, Regime.LOWER_BOUND.value),
            Quantity("qstar_opt", q_opt, bound),
            Quantity("tc_max", tc_max, bound)]


@quantity("aloha")
def eval_aloha(opts):
    n, lam = opts["n"], opts["lam"]
    if math.isinf(n):
        tp, op = basic.slotted_aloha_limit(lam)
    else:
        if n < 1 or n != int(n):
            raise ParameterError(f"aloha user count must be a positive integer or inf: n={n}")
        tp, op = basic.slotted_aloha(int(n), lam / n)
    return [Quantity("tp", tp, Regime.EXACT.value), Quantity("op", op, Regime.EXACT.value)]


# ================= 扩展模型 =================
@quantity("rayleigh")
def eval_rayleigh(opts):
    _, interf = fades_from(opts)
    pair = extensions.op_tc_rayleigh_exact(network_from(opts), interf, opts["qstar"])
    return [Quantity("op", pair.op, pair.regime.value), Quantity("tc", pair.tc, pair.regime.value)]


@quantity("fading-asym")
def eval_fading_asym(opts):
    signal, interf = fades_from(opts)
    pair = extensions.op_tc_fading_asymptotic(network_from(opts), signal, interf, opts["qstar"])
    return [Quantity("op", pair.op, pair.regime.value),
            Quantity("tc", pair.tc, pair.regime.value),
            Quantity("q0", pair.notes["q0"], Regime.EXACT.value)]


@quantity("fading-lb")
def eval_fading_lb(opts):
    signal, interf = fades_from(opts)
    return [Quantity("op", extensions.op_lb_fading(network_from(opts), signal, interf),
                     Regime.LOWER_BOUND.value)]


@quantity("vld")
def eval_vld(opts):
    params = network_from(opts)
    pair = extensions.op_tc_vld(params, law_from(opts), opts["qstar"], opts["variant"])
    out = [Quantity("op", pair.op, pair.regime.value),
           Quantity("tc", pair.tc, pair.notes.get("tc_regime", pair.regime.value))]
    if opts["mu"] is not None:
        out.append(Quantity("penalty", extensions.vld_penalty(params.d), Regime.EXACT.value))
    return out


@quantity("multihop")
def eval_multihop(opts):
    mp = multihop_from(opts)
    cap = extensions.multihop_tc(mp)
    out = [Quantity("tc", cap.exact, Regime.EXACT.value),
           Quantity("tc_ub", cap.ub, Regime.UPPER_BOUND.value),
           Quantity("best_hops", cap.best_hops, Regime.EXACT.value),
           Quantity("best_hops_ub", cap.best_hops_ub, Regime.UPPER_BOUND.value)]
    if opts["M"] is not None:
        out.append(Quantity("hop_op", extensions.per_hop_op(mp, int(opts["M"])), Regime.EXACT.value))
    return out


@quantity("hops")
def eval_hops(opts):
    choice = extensions.optimal_hops(multihop_from(opts))
    return [Quantity("M_continuous", choice.continuous, Regime.UPPER_BOUND.value),
            Quantity("M_integer", choice.integer, Regime.UPPER_BOUND.value)]


# ================= 网络设计 =================
@quantity("spectrum")
def eval_spectrum(opts):
    if opts["ebno"] is not None:
        delta = int(opts["d"]) / opts["alpha"]
        nu_star = design.optimal_spectral_efficiency_nu(delta, opts["ebno"])
        return [Quantity("nu_max", design.spectrum_nu_max(opts["ebno"]), Regime.EXACT.value),
                Quantity("nu_star", nu_star, Regime.EXACT.value),
                Quantity("B_continuous", nu_star * opts["W"] / opts["R"], Regime.EXACT.value)]
    p = spectrum_from(opts)
    choice = design.optimal_band_count(p)
    return [Quantity("ebno", p.ebno, Regime.EXACT.value),
            Quantity("nu_max", design.spectrum_nu_max(p.ebno), Regime.EXACT.value),
            Quantity("nu_star", choice.nu_star, Regime.EXACT.value),
            Quantity("B_continuous", choice.continuous, Regime.EXACT.value),
            Quantity("B_integer", choice.integer, Regime.EXACT.value),
            Quantity("tc", design.spectrum_tc(p, opts["qstar"], choice.integer), Regime.EXACT.value)]


@quantity("ic")
def eval_ic(opts):
    p = ic_from(opts)
    return [Quantity("op", design.ic_op_lb(p), Regime.LOWER_BOUND.value),
            Quantity("op_no_ic", basic.op_lb(p.network), Regime.LOWER_BOUND.value),
            Quantity("op_perfect", design.ic_perfect_op_lb(p.network, p.K), Regime.LOWER_BOUND.value)]


@quantity("fts")
def eval_fts(opts):
    p = fts_from(opts)
    op, tp = design.fts_asymptotic(p)
    return [Quantity("h_hat", p.h_hat, Regime.EXACT.value),
            Quantity("lam_hat", p.lam_hat, Regime.EXACT.value),
            Quantity("op", op, Regime.ASYMPTOTIC.value),
            Quantity("tp", tp, Regime.ASYMPTOTIC.value),
            Quantity("op_lb", design.fts_op_lb(p), Regime.LOWER_BOUND.value),
            Quantity("tp_ub", design.fts_tp_ub(p), Regime.UPPER_BOUND.value)]


@quantity("fpc")
def eval_fpc(opts):
    p = fpc_from(opts)
    pair = design.fpc_asymptotic(p, opts["qstar"])
    return [Quantity("op", pair.op, pair.regime.value),
            Quantity("tc", pair.tc, pair.regime.value),
            Quantity("q0", pair.notes["q0"], Regime.EXACT.value),
            Quantity("op_lb", design.fpc_op_lb(p), Regime.LOWER_BOUND.value)]


@quantity("fpc-power")
def eval_fpc_power(opts):
    moments, variance = design.fpc_power_moments(opts["f"], opts["power"])
    return [Quantity("mean", moments[1], Regime.EXACT.value),
            Quantity("second_moment", moments[2], Regime.EXACT.value),
            Quantity("variance", variance, Regime.EXACT.value)]


# ================= 多天线 =================
@quantity("mrc")
def eval_mrc(opts):
    params, cfg = network_from(opts), antenna_from(opts)
    cap = mimo.mrc_tc(params, cfg, opts["qstar"])
    return [Quantity("op", mimo.mrc_op(params, cfg), Regime.ASYMPTOTIC.value),
            Quantity("tc", cap.tc, Regime.ASYMPTOTIC.value),
            Quantity("tc_lb", cap.lb, Regime.LOWER_BOUND.value),
            Quantity("tc_ub", cap.ub, Regime.UPPER_BOUND.value)]


@quantity("eigenbf")
def eval_eigenbf(opts):
    lb, ub = mimo.eigenbf_ocd_bounds(network_from(opts), antenna_from(opts), opts["qstar"])
    return [Quantity("tc_lb", lb, Regime.LOWER_BOUND.value), Quantity("tc_ub", ub, Regime.UPPER_BOUND.value)]


@quantity("pzf")
def eval_pzf(opts):
    params, cfg = network_from(opts), antenna_from(opts)
    b = mimo.pzf_bounds(params, cfg, opts["qstar"], int(opts["l"]))
    infeasible = b.notes.get("infeasible")
    return [Quantity("op_ub", _optional(b.op_ub), infeasible if b.op_ub is None else Regime.UPPER_BOUND.value),
            Quantity("tc_lb", _optional(b.tc_lb), infeasible if b.tc_lb is None else Regime.LOWER_BOUND.value),
            Quantity("tc_ub", b.tc_ub, Regime.UPPER_BOUND.value),
            Quantity("tc_ub_mmse", mimo.mmse_tc_ub(params, cfg.n_r, opts["qstar"]), Regime.UPPER_BOUND.value),
            Quantity("theta_star", b.theta_star, Regime.ASYMPTOTIC.value),
            Quantity("z_star", b.z_star, Regime.ASYMPTOTIC.value)]


@quantity("sm")
def eval_sm(opts):
    params, cfg = network_from(opts), antenna_from(opts)
    choice = mimo.sm_optimal_streams(params, cfg, opts["receiver"])
    return [Quantity("K_raw", choice.raw, Regime.ASYMPTOTIC.value),
            Quantity("K_star", choice.integer, Regime.ASYMPTOTIC.value),
            Quantity("vblast_dblast_ratio", mimo.vblast_dblast_ratio(params.alpha), Regime.ASYMPTOTIC.value)]


@quantity("sdma")
def eval_sdma(opts):
    params, cfg = network_from(opts), antenna_from(opts)
    u_min = opts["umin"] if opts["umin"] is not None else params.u
    u_max = opts["umax"] if opts["umax"] is not None else params.u
    b = mimo.sdma_dpc_tc_bounds(params, mimo.SdmaCluster(u_min, u_max), cfg, opts["qstar"])
    return [Quantity("tc_lb", b.lb, Regime.LOWER_BOUND.value),
            Quantity("tc_ub", b.ub, Regime.UPPER_BOUND.value),
            Quantity("K_star_lb", b.K_star_lb, Regime.ASYMPTOTIC.value),
            Quantity("K_star_ub", b.K_star_ub, Regime.ASYMPTOTIC.value),
            Quantity("K_star_miso", b.K_star_miso, Regime.ASYMPTOTIC.value),
            Quantity("diversity_order", b.diversity_order, Regime.EXACT.value)]


def evaluate(name, opts):
    if name not in QUANTITIES:
        raise ParameterError(f"unknown quantity '{name}' (supported: {', '.join(sorted(QUANTITIES))})")
    logger.debug(f"计算量值 {name}")
    return QUANTITIES[name](opts)
