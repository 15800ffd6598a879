#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
命令行入口：eval / figure / mc
参数优先级：内置默认值 < config.yaml 预设 (--preset) < key=value 文件 (--config) < 命令行参数
退出码：0 成功，2 参数或用法错误，3 数值失败
"""

import argparse
import logging
import math
import sys

from config import MC_CONFIDENCE, MC_DEFAULT_SEED, MC_DEFAULT_TRIALS, MC_WINDOW_TOLERANCE
from src import evaluators, figures
from src.core.montecarlo import MODELS
from src.core.montecarlo.engine import SimConfig, estimate_op, estimate_tc
from src.utils.common import CurveSeries, PresetManager, format_value, parse_kv_file, write_series
from src.utils.errors import NumericalError, ParameterError
from src.utils.logger import set_level

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_PARAMETER = 2
EXIT_NUMERICAL = 3


def _float(value):
    """接受 inf/-inf"""
    try:
        return float(value)
    except (TypeError, ValueError) as e:
        raise ParameterError(f"expected a number, got '{value}'") from e


def _int(value):
    number = _float(value)
    if not math.isfinite(number) or number != int(number):
        raise ParameterError(f"expected an integer, got '{value}'")
    return int(number)


def _optional_float(value):
    if value is None or str(value).strip().lower() in ("", "none", "null"):
        return None
    return _float(value)


def _optional_int(value):
    if value is None or str(value).strip().lower() in ("", "none", "null"):
        return None
    return _int(value)


def _text(value):
    return None if value is None else str(value)


# 参数表：键 -> (命令行参数, 类型, 默认值, 说明)
PARAMETERS = {
    "d": ("--d", _int, 2, "维数"),
    "alpha": ("--alpha", _float, 4.0, "路损指数"),
    "u": ("--u", _float, 1.0, "收发距离"),
    "tau": ("--tau", _float, 1.0, "SINR 门限"),
    "lam": ("--lambda", _float, 0.1, "发送者密度 (别名 --lam)"),
    "qstar": ("--qstar", _float, 0.1, "目标 OP"),
    "power": ("--power", _float, 1.0, "发送功率 P (W)"),
    "noise": ("--noise", _float, 0.0, "噪声功率 N (W)"),
    "epsilon": ("--epsilon", _float, 0.0, "保护半径"),
    "fade": ("--fade", _text, "rayleigh", "干扰衰落: rayleigh | none | gamma:<shape>"),
    "signal_fade": ("--signal-fade", _text, None, "信号衰落，缺省同 --fade"),
    "mu": ("--mu", _optional_float, None, "接收者密度（最近邻链路距离）"),
    "variant": ("--variant", _text, "asymptotic", "vld: asymptotic | lower_bound | exact"),
    "bound": ("--bound", _text, "all", "basic-ub: markov | chebychev | chernoff | all"),
    "kappa": ("--kappa", _float, 0.05, "干扰消除残余比例"),
    "K": ("--K", _int, 3, "最多消除的干扰者数"),
    "pmin": ("--pmin", _float, 1.0, "可消除的最小接收功率"),
    "hhat": ("--hhat", _optional_float, None, "FTS 门限，缺省取最优门限"),
    "lambda_pot": ("--lambda-pot", _optional_float, None, "FTS 潜在发送者密度，缺省同 --lambda"),
    "f": ("--f", _float, 0.5, "功率控制指数"),
    "ebno": ("--ebno", _optional_float, None, "单位比特能量 ε_b/η（线性值）"),
    "pdbw": ("--pdbw", _float, 3.0, "发送功率 (dBW)"),
    "W": ("--W", _float, 10e6, "总带宽 (Hz)"),
    "R": ("--R", _float, 1e6, "目标速率 (bps)"),
    "eta": ("--eta", _float, 1e-6, "噪声功率谱密度 (W/Hz)"),
    "B": ("--B", _int, 1, "频带数"),
    "nt": ("--nt", _int, 4, "发送天线数"),
    "nr": ("--nr", _int, 4, "接收天线数"),
    "streams": ("--streams", _int, 1, "流数"),
    "z": ("--z", _int, 0, "PZF 消除的干扰者数"),
    "l": ("--l", _int, 2, "PZF 上界中未消除的干扰者序号"),
    "receiver": ("--receiver", _text, "mrc", "sm: mrc | zf | blast_d | pzf"),
    "umin": ("--umin", _optional_float, None, "SDMA 簇内最小距离"),
    "umax": ("--umax", _optional_float, None, "SDMA 簇内最大距离"),
    "U": ("--U", _float, 10.0, "多跳端到端距离"),
    "M": ("--M", _optional_int, None, "跳数"),
    "A": ("--A", _int, 6, "端到端最多尝试次数"),
    "n": ("--n", _float, math.inf, "aloha 用户数，inf 为极限"),
    "trials": ("--trials", _int, MC_DEFAULT_TRIALS, "蒙特卡洛试验数"),
    "seed": ("--seed", _int, MC_DEFAULT_SEED, "随机种子"),
    "tolerance": ("--tolerance", _float, MC_WINDOW_TOLERANCE, "截断窗口容差"),
    "confidence": ("--confidence", _float, MC_CONFIDENCE, "置信水平"),
}


def defaults():
    return {key: default for key, (_, _, default, _) in PARAMETERS.items()}


def _coerce(values, source):
    """把预设或配置文件里的值按参数表转换类型"""
    out = {}
    for key, raw in values.items():
        key = str(key).replace("-", "_")
        if key == "lambda":
            key = "lam"
        if key not in PARAMETERS:
            raise ParameterError(f"unknown parameter '{key}' in {source}")
        out[key] = PARAMETERS[key][1](raw)
    return out


def _add_parameter_flags(parser):
    for key, (flag, convert, _, help_text) in PARAMETERS.items():
        names = [flag, "--lam"] if key == "lam" else [flag]
        parser.add_argument(*names, dest=key, type=str, default=argparse.SUPPRESS, help=help_text)
    parser.add_argument("--out", default=argparse.SUPPRESS, help="输出目录")
    parser.add_argument("--config", default=None, help="key = value 配置文件")
    parser.add_argument("--preset", default=None, help="config.yaml 中的预设名")
    parser.add_argument("-v", "--verbose", action="store_true", help="输出调试日志")
    parser.add_argument("-q", "--quiet", action="store_true", help="只输出警告和错误")


def build_parser():
    parser = argparse.ArgumentParser(prog="txcap", description="无线网络传输容量计算工具")
    sub = parser.add_subparsers(dest="command", required=True)

    p_eval = sub.add_parser("eval", help="计算解析量值")
    p_eval.add_argument("quantity", help=", ".join(sorted(evaluators.QUANTITIES)))
    _add_parameter_flags(p_eval)

    p_fig = sub.add_parser("figure", help="生成图数据 CSV")
    p_fig.add_argument("figure_id", help=", ".join(figures.FIGURES))
    _add_parameter_flags(p_fig)

    p_mc = sub.add_parser("mc", help="蒙特卡洛估计 OP / TC")
    p_mc.add_argument("model", nargs="?", default=None, help=", ".join(MODELS))
    p_mc.add_argument("--model", dest="model_flag", default=None, help="同位置参数 model")
    p_mc.add_argument("--tc", action="store_true", help="按 --qstar 估计 TC")
    _add_parameter_flags(p_mc)
    return parser


def resolve_options(args, preset=None):
    """合并默认值、预设、配置文件与命令行参数"""
    opts = defaults()
    name = args.preset or preset
    manager = PresetManager()
    opts.update(_coerce(manager.get(name), f"preset '{name or manager.selected}'"))
    if args.config:
        opts.update(_coerce(parse_kv_file(args.config), args.config))
    for key in PARAMETERS:
        if hasattr(args, key):
            opts[key] = PARAMETERS[key][1](getattr(args, key))
    opts["out"] = getattr(args, "out", None)
    return opts


def cmd_eval(args):
    opts = resolve_options(args)
    for q in evaluators.evaluate(args.quantity, opts):
        print(f"{q.name} = {format_value(q.value)} ({q.regime})")
    return EXIT_OK


def cmd_figure(args):
    preset = figures.default_preset(args.figure_id)
    opts = resolve_options(args, preset)
    out_dir = opts.pop("out") or "out"
    for series in figures.build(args.figure_id, opts):
        print(write_series(series, out_dir))
    return EXIT_OK


def _mc_config(model, opts):
    options = {}
    if model in ("basic", "fading", "vld", "mrc"):
        params = evaluators.network_from(opts)
        if model == "fading":
            options["signal_fade"], options["interf_fade"] = evaluators.fades_from(opts)
        elif model == "vld":
            options["law"] = evaluators.law_from(opts)
        elif model == "mrc":
            options["n_r"] = opts["nr"]
    elif model == "ic":
        params = evaluators.ic_from(opts)
    elif model == "fts":
        params = evaluators.fts_from(opts)
    elif model == "fpc":
        params = evaluators.fpc_from(opts)
    elif model == "multihop":
        params = evaluators.multihop_from(opts)
        options["M"] = opts["M"] or 1
    else:
        raise ParameterError(f"unsupported simulation model: {model} (supported: {', '.join(MODELS)})")
    return SimConfig(model, params, trials=opts["trials"], seed=opts["seed"],
                     window_tolerance=opts["tolerance"], confidence=opts["confidence"], options=options)


def cmd_mc(args):
    model = args.model or args.model_flag
    if model is None:
        raise ParameterError(f"mc needs a model (supported: {', '.join(MODELS)})")
    opts = resolve_options(args)
    out_dir = opts.pop("out")
    cfg = _mc_config(model, opts)
    if args.tc:
        est = estimate_tc(cfg, opts["qstar"])
        label = "tc"
    else:
        est = estimate_op(cfg)
        label = "op"
    meta = est.metadata
    print(f"{label} = {format_value(est.mean)} ({est.regime.value})")
    print(f"half_width = {format_value(est.half_width)}")
    print(f"confidence = {format_value(cfg.confidence)}")
    print(f"trials = {est.trials}")
    print(f"seed = {cfg.seed}")
    if "window_radius" in meta:
        print(f"window_radius = {format_value(meta['window_radius'])}")
        print(f"truncation_bias_bound = {format_value(meta['truncation_bias_bound'])}")
    if out_dir:
        series = CurveSeries(name=f"mc-{model}-{label}", x_label="lambda",
                             metadata={"flags": dict(opts), "model": model, **meta})
        series.add_column("lambda", [opts["lam"]])
        series.add_column(label, [est.mean])
        series.add_column(f"{label}_hw", [est.half_width])
        print(write_series(series, out_dir))
    return EXIT_OK


COMMANDS = {"eval": cmd_eval, "figure": cmd_figure, "mc": cmd_mc}


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.verbose:
        set_level(logging.DEBUG)
    elif args.quiet:
        set_level(logging.WARNING)
    try:
        return COMMANDS[args.command](args)
    except ParameterError as e:
        logger.error(f"参数错误: {e}")
        print(f"error: {e}", file=sys.stderr)
        return EXIT_PARAMETER
    except NumericalError as e:
        logger.error(f"数值计算失败: {e}")
        print(f"error: {e}", file=sys.stderr)
        return EXIT_NUMERICAL


if __name__ == "__main__":
    sys.exit(main())
