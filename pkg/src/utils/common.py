#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
公共工具
CurveSeries 曲线数据、CSV 输出、key=value 配置文件解析、config.yaml 预设加载
"""

import csv
import math
import os
import logging
from dataclasses import dataclass, field

import numpy as np
import yaml

from config import CSV_DIGITS, PRESET_FILE
from src.utils.errors import ParameterError

logger = logging.getLogger(__name__)


@dataclass
class CurveSeries:
    """一条或多条同 x 轴的曲线

    Attributes:
        name: 文件名（不含扩展名）
        x_label: 第一列的列名
        columns: [(label, values), ...]，第一列是 x
        metadata: 重新生成该文件所需的全部参数
    """
    name: str
    x_label: str
    columns: list = field(default_factory=list)
    metadata: dict = field(default_factory=dict)

    def __post_init__(self):
        self._check_lengths()

    def _check_lengths(self):
        lengths = {len(values) for _, values in self.columns}
        if len(lengths) > 1:
            raise ParameterError(f"curve '{self.name}' has columns of unequal length: {sorted(lengths)}")

    def add_column(self, label, values):
        self.columns.append((label, list(values)))
        self._check_lengths()

    def column(self, label):
        for name, values in self.columns:
            if name == label:
                return values
        raise KeyError(label)

    @property
    def labels(self):
        return [label for label, _ in self.columns]

    def __len__(self):
        return len(self.columns[0][1]) if self.columns else 0


def format_value(value):
    """浮点数保留 CSV_DIGITS 位有效数字，整数和字符串原样输出"""
    if isinstance(value, (bool, np.bool_)):
        return str(int(value))
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if value is None:
        return ""
    if isinstance(value, (float, np.floating)):
        value = float(value)
        if math.isnan(value):
            return "nan"
        if math.isinf(value):
            return "inf" if value > 0 else "-inf"
        return f"{value:.{CSV_DIGITS}g}"
    return str(value)


def _plain(value):
    """把 numpy 标量、元组等转成 yaml 能安全输出的类型"""
    if isinstance(value, dict):
        return {str(k): _plain(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_plain(v) for v in value]
    if isinstance(value, (np.integer,)):
        return int(value)
    if isinstance(value, (np.floating,)):
        return float(value)
    if hasattr(value, "value") and isinstance(getattr(value, "value"), str):
        return value.value
    return value


def write_series(series, out_dir):
    """写出 <name>.csv 和 <name>.meta.yaml，返回 csv 路径"""
    os.makedirs(out_dir, exist_ok=True)
    csv_path = os.path.join(out_dir, f"{series.name}.csv")
    with open(csv_path, "w", encoding="utf-8", newline="") as f:
        writer = csv.writer(f, lineterminator="\r\n")
        writer.writerow(series.labels)
        for row in zip(*(values for _, values in series.columns)):
            writer.writerow([format_value(v) for v in row])
    meta_path = os.path.join(out_dir, f"{series.name}.meta.yaml")
    with open(meta_path, "w", encoding="utf-8") as f:
        yaml.safe_dump(_plain(series.metadata), f, sort_keys=True, allow_unicode=True)
    logger.info(f"曲线已写出: {csv_path} ({len(series)} 行)")
    return csv_path


def parse_kv_file(path):
    """解析 key = value 配置文件，# 开头为注释

    Returns:
        dict: 键和值都是字符串
    """
    values = {}
    try:
        with open(path, "r", encoding="utf-8") as f:
            lines = f.readlines()
    except OSError as e:
        raise ParameterError(f"cannot read config file {path}: {e}") from e
    for number, raw in enumerate(lines, start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ParameterError(f"{path}:{number}: expected 'key = value', got '{raw.strip()}'")
        key, value = (part.strip() for part in line.split("=", 1))
        if not key:
            raise ParameterError(f"{path}:{number}: empty key")
        values[key.replace("-", "_")] = value
    return values


class PresetManager:
    """config.yaml 里的命名参数预设"""

    def __init__(self, config_path=PRESET_FILE):
        self.config_path = config_path
        self.config = {}
        self._load_config()

    def _load_config(self):
        """加载配置文件，失败时退回内置默认值"""
        try:
            with open(self.config_path, "r", encoding="utf-8") as f:
                self.config = yaml.safe_load(f) or {}
        except Exception as e:
            logger.error(f"加载配置文件失败: {e}")
            self.config = {}

    @property
    def selected(self):
        return self.config.get("selected_module", {}).get("preset")

    @property
    def names(self):
        return sorted(self.config.get("presets", {}) or {})

    def get(self, name=None):
        """返回预设参数字典；name 为空时用 selected_module.preset"""
        name = name or self.selected
        if not name:
            return {}
        presets = self.config.get("presets", {}) or {}
        if name not in presets:
            raise ParameterError(f"unknown preset '{name}' (available: {', '.join(self.names) or 'none'})")
        logger.debug(f"使用预设参数: {name}")
        return dict(presets[name] or {})
