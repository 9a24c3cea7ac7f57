"""
求积模块
全部积分统一使用复合梯形公式（包括 Nyström 权重），保证离散伴随的一致性
"""

from dataclasses import dataclass

import numpy as np
from scipy.integrate import cumulative_trapezoid, trapezoid

from .grid import SampledFunction
from ..errors import DomainError
from ..utils.logger import get_logger

logger = get_logger("numerics")

# 尾部检查使用的网格末端比例
TAIL_FRACTION = 0.1


@dataclass(frozen=True)
class TailIntegral:
    """右侧累积积分 g(x) = ∫_x^{x_max} f 及尾部诊断"""
    function: SampledFunction
    tail_mass: float
    tolerance: float

    @property
    def warning(self) -> bool:
        """尾部质量超过容差时为 True"""
        return self.tail_mass > self.tolerance


def integrate(f: SampledFunction, a: float, b: float) -> complex:
    """
    复合梯形公式计算 ∫ₐᵇ f

    端点不在网格节点上时，被积函数在端点处线性插值（对线性函数精确）。

    Args:
        f: 采样函数
        a: 下限
        b: 上限

    Returns:
        积分值（实值函数返回 float）

    Raises:
        DomainError: 区间不在 [0, x_max] 内或 a > b
    """
    grid = f.grid
    slack = 1e-12 * grid.x_max
    if a > b:
        raise DomainError(f"积分下限大于上限: a={a}, b={b}")
    if a < -slack or b > grid.x_max + slack:
        raise DomainError(f"积分区间 [{a}, {b}] 超出网格范围 [0, {grid.x_max}]")
    a = min(max(a, 0.0), grid.x_max)
    b = min(max(b, 0.0), grid.x_max)
    if a == b:
        return 0.0 * f.values[0]

    nodes = grid.nodes
    inside = (nodes > a) & (nodes < b)
    x = np.concatenate(([a], nodes[inside], [b]))
    y = np.concatenate(([f.interpolate(a)], f.values[inside], [f.interpolate(b)]))
    return trapezoid(y, x)


def tail_integral(f: SampledFunction, tolerance_ratio: float = 1e-8) -> TailIntegral:
    """
    右侧累积积分 g(x_j) = ∫_{x_j}^{x_max} f

    g(x_{n−1}) = 0 精确成立。若网格最后 10% 上的积分绝对值超过
    tolerance_ratio·‖f‖₁，记录警告（不抛出异常）。

    Args:
        f: 采样函数
        tolerance_ratio: 尾部容差相对 ‖f‖₁ 的比例

    Returns:
        TailIntegral
    """
    grid = f.grid
    reversed_cumulative = cumulative_trapezoid(f.values[::-1], dx=grid.h, initial=0)
    g = reversed_cumulative[::-1]

    start = min(int(np.floor((1.0 - TAIL_FRACTION) * (grid.n - 1))), grid.n - 2)
    tail_mass = float(np.abs(g[start]))
    tolerance = tolerance_ratio * f.norm_l1()
    result = TailIntegral(function=f.with_values(g), tail_mass=tail_mass, tolerance=tolerance)
    if result.warning:
        logger.warning(
            f"尾部质量 {tail_mass:.3e} 超过容差 {tolerance:.3e}，截断长度 x_max={grid.x_max} 可能不足"
        )
    return result


def derivative(f: SampledFunction) -> SampledFunction:
    """
    数值导数：内部节点中心差分，端点二阶单侧差分

    Args:
        f: 采样函数（标量或矩阵值，沿第 0 轴求导）

    Returns:
        导数的采样函数
    """
    edge_order = 2 if f.grid.n >= 3 else 1
    return f.with_values(np.gradient(f.values, f.grid.h, axis=0, edge_order=edge_order))
