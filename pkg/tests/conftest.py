#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""测试公共夹具"""

import pytest

from src.core.fades import FadeDistribution
from src.core.params import NetworkParams


@pytest.fixture
def planar():
    """d=2, α=4, u=1, τ=1, N=0"""
    return NetworkParams(d=2, lam=0.1, alpha=4.0, u=1.0, tau=1.0)


@pytest.fixture
def planar_tau5():
    """图中常用的 τ=5 参数组"""
    return NetworkParams(d=2, lam=0.1, alpha=4.0, u=1.0, tau=5.0)


@pytest.fixture
def rayleigh():
    return FadeDistribution.rayleigh()


@pytest.fixture
def small_trials():
    """蒙特卡洛测试用的试验数与种子"""
    return {"trials": 20000, "seed": 7}
