#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
求根与一维搜索
全部基于 scipy.optimize，失败时统一抛 NumericalError
"""

import logging
import math
import sys

from scipy import optimize

from config import SOLVER_XTOL, SOLVER_MAXITER
from src.utils.errors import NumericalError

logger = logging.getLogger(__name__)


def bracketed_root(f, lo, hi, xtol=SOLVER_XTOL, what="root"):
    """在 [lo, hi] 上求 f 的根，要求两端异号

    Args:
        f: 一元函数
        lo, hi: 区间端点
        xtol: 区间宽度精度
        what: 出错时的描述

    Returns:
        float: 根
    """
    f_lo, f_hi = f(lo), f(hi)
    if f_lo == 0:
        return lo
    if f_hi == 0:
        return hi
    if math.isnan(f_lo) or math.isnan(f_hi) or f_lo * f_hi > 0:
        raise NumericalError(f"non-bracketing interval for {what}: f({lo:.6g})={f_lo:.6g}, f({hi:.6g})={f_hi:.6g}")
    try:
        root, info = optimize.brentq(f, lo, hi, xtol=xtol, rtol=4 * sys.float_info.epsilon,
                                     maxiter=SOLVER_MAXITER, full_output=True)
    except (RuntimeError, ValueError) as e:
        raise NumericalError(f"{what}: {e}") from e
    logger.debug(f"{what} 求根完成: x={root:.12g}, 迭代 {info.iterations} 次")
    return root


def expand_upper(f, lo, hi, factor=2.0, max_steps=200, what="root"):
    """把 hi 按倍数外扩直到 f(lo) 与 f(hi) 异号，lo 跟进到上一个 hi"""
    f_lo = f(lo)
    for _ in range(max_steps):
        f_hi = f(hi)
        if f_lo * f_hi <= 0:
            return lo, hi
        lo, f_lo = hi, f_hi
        hi *= factor
    raise NumericalError(f"could not bracket {what} after {max_steps} expansions")


def fixed_point(g, x0, xtol=SOLVER_XTOL, what="fixed point", method="iteration"):
    """x = g(x) 的不动点，默认普通迭代（method="del2" 为 Steffensen 加速）"""
    try:
        return float(optimize.fixed_point(g, x0, xtol=xtol, maxiter=SOLVER_MAXITER, method=method))
    except RuntimeError as e:
        raise NumericalError(f"{what}: {e}") from e
