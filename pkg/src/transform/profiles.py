"""
问题定义解析模块
问题 JSON：
{"grid": {"x_max": 16, "n": 2048}, "u": spec, "p": spec, "alpha": 0.3}
spec 取 {"type": "zero"} | {"type": "gaussian", "amplitude", "center", "width"}
| {"type": "step", "height", "from", "to"} | {"type": "samples", "values": [...]}
"""

import math
from typing import Any, Dict, Optional

import numpy as np

from .problems import SchrodingerProblem
from ..numerics import SampledFunction, UniformGrid
from ..errors import ConfigError, DomainError


def _number(spec: Dict[str, Any], key: str) -> float:
    """读取数值字段"""
    if key not in spec:
        raise ConfigError(f"剖面 {spec.get('type')} 缺少字段: {key}")
    try:
        value = float(spec[key])
    except (TypeError, ValueError):
        raise ConfigError(f"剖面字段 {key} 不是数值: {spec[key]!r}")
    if not math.isfinite(value):
        raise ConfigError(f"剖面字段 {key} 不是有限值: {value}")
    return value


def build_profile(spec: Optional[Dict[str, Any]], grid: UniformGrid) -> SampledFunction:
    """
    按剖面定义在网格上采样实值函数

    Args:
        spec: 剖面定义，None 视为 zero
        grid: 网格

    Returns:
        实值采样函数

    Raises:
        ConfigError: 剖面定义不合法
    """
    if spec is None:
        spec = {"type": "zero"}
    if not isinstance(spec, dict):
        raise ConfigError(f"剖面定义必须是对象: {spec!r}")

    kind = spec.get("type")
    x = grid.nodes

    if kind == "zero":
        values = np.zeros(grid.n)
    elif kind == "gaussian":
        amplitude = _number(spec, "amplitude")
        center = _number(spec, "center")
        width = _number(spec, "width")
        if width <= 0:
            raise ConfigError(f"高斯剖面宽度必须为正: {width}")
        values = amplitude * np.exp(-0.5 * ((x - center) / width) ** 2)
    elif kind == "step":
        height = _number(spec, "height")
        x1 = _number(spec, "from")
        x2 = _number(spec, "to")
        if x2 < x1:
            raise ConfigError(f"阶跃剖面区间为空: [{x1}, {x2}]")
        # 闭区间；节点判断留出舍入余量
        slack = 1e-9 * grid.h
        values = np.where((x >= x1 - slack) & (x <= x2 + slack), height, 0.0)
    elif kind == "samples":
        raw = spec.get("values")
        if not isinstance(raw, (list, tuple)):
            raise ConfigError("samples 剖面需要 values 数组")
        values = np.asarray(raw, dtype=float)
        if values.shape != (grid.n,):
            raise ConfigError(f"samples 长度 {values.shape} 与网格节点数 {grid.n} 不一致")
    else:
        raise ConfigError(f"未知的剖面类型: {kind!r}")

    try:
        return SampledFunction(grid, values.astype(float))
    except DomainError as e:
        raise ConfigError(f"剖面采样失败: {e.message}")


def grid_from_dict(data: Dict[str, Any], x_max: Optional[float] = None, n: Optional[int] = None) -> UniformGrid:
    """
    解析问题 JSON 中的 grid 字段，x_max / n 参数优先

    Raises:
        ConfigError: 字段缺失或不合法
    """
    grid_spec = data.get("grid") or {}
    if not isinstance(grid_spec, dict):
        raise ConfigError("grid 字段必须是对象")
    try:
        x_max = float(x_max if x_max is not None else grid_spec.get("x_max", 16.0))
        n = int(n if n is not None else grid_spec.get("n", 2048))
        return UniformGrid(x_max, n)
    except (TypeError, ValueError) as e:
        raise ConfigError(f"grid 字段不合法: {e}")


def problem_from_dict(
    data: Dict[str, Any],
    x_max: Optional[float] = None,
    n: Optional[int] = None
) -> SchrodingerProblem:
    """
    由问题 JSON 构造薛定谔问题

    Args:
        data: 问题定义
        x_max: 覆盖 grid.x_max
        n: 覆盖 grid.n

    Returns:
        SchrodingerProblem

    Raises:
        ConfigError: 定义不合法
    """
    if not isinstance(data, dict):
        raise ConfigError("问题定义必须是 JSON 对象")
    grid = grid_from_dict(data, x_max, n)
    u = build_profile(data.get("u"), grid)
    p = build_profile(data.get("p"), grid)
    try:
        alpha = float(data.get("alpha", 0.0))
        return SchrodingerProblem(u=u, p=p, alpha=alpha)
    except (TypeError, ValueError) as e:
        raise ConfigError(f"问题定义不合法: {e}")


def problem_to_dict(sp: SchrodingerProblem) -> Dict[str, Any]:
    """
    把薛定谔问题写成 samples 形式的问题 JSON，可直接交给 forward 命令

    Args:
        sp: 薛定谔问题

    Returns:
        问题定义
    """
    return {
        "grid": {"x_max": sp.grid.x_max, "n": sp.grid.n},
        "u": {"type": "samples", "values": sp.u.values.tolist()},
        "p": {"type": "samples", "values": sp.p.values.tolist()},
        "alpha": sp.alpha,
    }
