#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
蒙特卡洛模块
按模型名创建快照 SINR 抽样器，供 engine 估计经验 OP 和 TC
"""

from .models import (BasicModel, FadingModel, FpcModel, FtsModel, IcModel,
                     MrcModel, MultihopModel, SinrModel, VldModel)
from src.utils.errors import ParameterError


__all__ = ['SinrModel', 'MODELS', 'create_instance']

MODELS = ("basic", "fading", "vld", "ic", "fts", "fpc", "mrc", "multihop")


class ModelFactory:
    """模型工厂类，用于按名字创建不同的 SINR 抽样器"""

    @staticmethod
    def create_instance(model, params, **options):
        """动态创建模型实例

        Args:
            model: 模型名 (basic, fading, vld, ic, fts, fpc, mrc, multihop)
            params: 该模型的参数记录
            options: 模型特有的选项，例如 fading 的 signal_fade/interf_fade、
                vld 的 law、mrc 的 n_r、multihop 的 M

        Returns:
            SinrModel 实例
        """
        if model == 'basic':
            return BasicModel(params)
        elif model == 'fading':
            return FadingModel(params, options.get('signal_fade'), options.get('interf_fade'))
        elif model == 'vld':
            if options.get('law') is None:
                raise ParameterError("vld simulation needs a link-distance law")
            return VldModel(params, options['law'])
        elif model == 'ic':
            return IcModel(params)
        elif model == 'fts':
            return FtsModel(params)
        elif model == 'fpc':
            return FpcModel(params)
        elif model == 'mrc':
            return MrcModel(params, options.get('n_r', 1))
        elif model == 'multihop':
            return MultihopModel(params, options.get('M', 1))
        else:
            raise ParameterError(f"unsupported simulation model: {model} (supported: {', '.join(MODELS)})")


def create_instance(model, params, **options):
    """创建模型实例的便捷函数"""
    return ModelFactory.create_instance(model, params, **options)
