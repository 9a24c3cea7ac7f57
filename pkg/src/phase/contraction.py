"""
相位恢复模块
φ′ = −(Re v)·sin 2φ − (Im v)·cos 2φ，φ(∞) = 0
尾部 [x₀, x_max] 上用压缩映射 (Tf)(x) = ∫ₓ^∞ (v₁ sin 2f + v₂ cos 2f) 求不动点，
再用四阶 Runge-Kutta 自 x₀ 反向延拓到 0
"""

from dataclasses import dataclass, field
from typing import List

import numpy as np
from scipy.integrate import cumulative_trapezoid

from ..direct.jost import potential_interpolant
from ..numerics import SampledFunction, derivative
from ..errors import ContractionError, DomainError, IntegrationError
from ..utils.logger import get_logger

logger = get_logger("phase")

CONTRACTION_THRESHOLD = 0.25
FIXED_POINT_TOL = 1e-12
MAX_ITERATIONS = 200
# 压缩起点必须落在网格前 90% 之内
X0_LIMIT = 0.9


@dataclass(frozen=True)
class PhaseTail:
    """
    尾部不动点

    Attributes:
        x0: 压缩起点
        start: x0 在网格中的下标
        values: 节点 start..n−1 上的 φ
        iterations: 迭代次数
        contraction_ratios: 相邻两次增量的 Y 范数之比
    """
    x0: float
    start: int
    values: np.ndarray
    iterations: int
    contraction_ratios: List[float] = field(default_factory=list)


@dataclass(frozen=True)
class PhaseSolution:
    """[0, x_max] 上的 φ 与迭代诊断"""
    phi: SampledFunction
    x0: float
    iterations: int
    contraction_ratios: List[float]
    ode_residual: float


def _rhs(v: np.ndarray, phi: np.ndarray) -> np.ndarray:
    """v₁·sin 2φ + v₂·cos 2φ（φ′ 的相反数）"""
    return v.real * np.sin(2.0 * phi) + v.imag * np.cos(2.0 * phi)


def _absolute_tail(v: SampledFunction) -> np.ndarray:
    """∫_{x_j}^{x_max} (|Re v| + |Im v|)"""
    density = np.abs(v.values.real) + np.abs(v.values.imag)
    return cumulative_trapezoid(density[::-1], dx=v.grid.h, initial=0)[::-1]


def find_x0(v: SampledFunction, threshold: float = CONTRACTION_THRESHOLD) -> float:
    """
    尾部积分严格小于阈值的最小网格节点

    Args:
        v: 复势
        threshold: 尾部阈值，默认 ¼

    Returns:
        x₀

    Raises:
        DomainError: 压缩起点落在网格最后 10% 内（截断长度不足）
    """
    tail = _absolute_tail(v)
    below = np.flatnonzero(tail < threshold)
    start = int(below[0])
    x0 = float(v.grid.nodes[start])
    if start >= v.grid.n - 1 or x0 > X0_LIMIT * v.grid.x_max:
        raise DomainError(
            f"截断长度不足: 尾部积分在 x={x0:.4f} 处才小于 {threshold}（x_max={v.grid.x_max}），请增大 x_max"
        )
    logger.debug(f"压缩起点 x₀={x0:.4f}，尾部积分 {tail[start]:.4e}")
    return x0


def _total_variation(values: np.ndarray) -> float:
    """离散 Y 范数：∫|f′| 近似为全变差"""
    return float(np.sum(np.abs(np.diff(values))))


def fixed_point_phi(
    v: SampledFunction,
    x0: float,
    tolerance: float = FIXED_POINT_TOL,
    max_iterations: int = MAX_ITERATIONS
) -> PhaseTail:
    """
    在 [x₀, x_max] 上迭代 f₀ ≡ 0，f_{n+1} = T f_n

    Args:
        v: 复势
        x0: 压缩起点（网格节点）
        tolerance: 相邻迭代 Y 范数差的收敛阈值
        max_iterations: 最大迭代次数

    Returns:
        PhaseTail

    Raises:
        ContractionError: 未在 max_iterations 次内收敛
    """
    grid = v.grid
    start = grid.index_at_or_after(x0 - 1e-9 * grid.h)
    segment = v.values[start:].astype(complex)
    h = grid.h

    def apply(f: np.ndarray) -> np.ndarray:
        if f.size == 1:
            return np.zeros(1)
        return cumulative_trapezoid(_rhs(segment, f)[::-1], dx=h, initial=0)[::-1]

    current = np.zeros(segment.size)
    ratios: List[float] = []
    previous_step = None
    for iteration in range(1, max_iterations + 1):
        updated = apply(current)
        step = _total_variation(updated - current)
        if previous_step is not None and previous_step > 0:
            ratios.append(step / previous_step)
        current = updated
        if step < tolerance:
            logger.info(f"不动点迭代收敛: {iteration} 次, x₀={grid.nodes[start]:.4f}")
            return PhaseTail(
                x0=float(grid.nodes[start]),
                start=start,
                values=current,
                iterations=iteration,
                contraction_ratios=ratios,
            )
        previous_step = step

    raise ContractionError(
        f"不动点迭代在 {max_iterations} 次内未收敛，最后一次增量 {previous_step:.3e}"
    )


def extend_phi(v: SampledFunction, tail: PhaseTail) -> SampledFunction:
    """
    从 x₀ 反向积分到 0，拼接出 [0, x_max] 上的 φ

    Args:
        v: 复势
        tail: 尾部不动点

    Returns:
        φ 的采样函数

    Raises:
        IntegrationError: 出现非有限值
    """
    grid = v.grid
    phi = np.empty(grid.n)
    phi[tail.start:] = tail.values
    if tail.start == 0:
        return SampledFunction(grid, phi)

    h = grid.h
    x = grid.nodes
    v_at = potential_interpolant(v)
    v_mid = v_at(x[:tail.start] + 0.5 * h)
    values = v.values.astype(complex)

    def slope(v_value, state):
        return -_rhs(np.asarray(v_value), np.asarray(state))

    state = phi[tail.start]
    for j in range(tail.start, 0, -1):
        k1 = slope(values[j], state)
        k2 = slope(v_mid[j - 1], state - 0.5 * h * k1)
        k3 = slope(v_mid[j - 1], state - 0.5 * h * k2)
        k4 = slope(values[j - 1], state - h * k3)
        state = state - (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
        if not np.isfinite(state):
            raise IntegrationError(f"φ 的反向积分在 x={x[j - 1]:.4f} 处出现非有限值")
        phi[j - 1] = float(state)
    return SampledFunction(grid, phi)


def ode_residual(v: SampledFunction, phi: SampledFunction) -> float:
    """φ′ + v₁ sin 2φ + v₂ cos 2φ 在内部节点上的最大值"""
    residual = derivative(phi).values + _rhs(v.values.astype(complex), phi.values)
    interior = np.abs(residual[1:-1])
    return float(np.max(interior)) if interior.size else 0.0


def solve_phase(
    v: SampledFunction,
    threshold: float = CONTRACTION_THRESHOLD,
    tolerance: float = FIXED_POINT_TOL,
    max_iterations: int = MAX_ITERATIONS
) -> PhaseSolution:
    """
    find_x0 → fixed_point_phi → extend_phi

    Returns:
        PhaseSolution
    """
    x0 = find_x0(v, threshold)
    tail = fixed_point_phi(v, x0, tolerance, max_iterations)
    phi = extend_phi(v, tail)
    return PhaseSolution(
        phi=phi,
        x0=tail.x0,
        iterations=tail.iterations,
        contraction_ratios=tail.contraction_ratios,
        ode_residual=ode_residual(v, phi),
    )
