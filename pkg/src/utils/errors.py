#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
异常定义
参数错误对应 CLI 退出码 2，数值失败对应退出码 3
"""


class TxcapError(Exception):
    """所有工具箱异常的基类"""


class ParameterError(TxcapError, ValueError):
    """参数违反了模型的不变量或前置条件，消息里写明被违反的条件"""


class DomainError(ParameterError):
    """特殊函数的定义域错误（极点、p 不在 (0,1) 等）"""


class NumericalError(TxcapError, ArithmeticError):
    """数值失败：找不到根、区间不夹根、积分失败"""


class SeriesUnreliableError(NumericalError):
    """级数参数超出可控区域"""


def require(condition, message):
    """条件不成立时抛出 ParameterError"""
    if not condition:
        raise ParameterError(message)
