"""
Marchenko 方程模块
Γ(x,ζ) + Ω(x+ζ) + ∫₀^∞ Γ(x,t)·Ω(x+t+ζ) dt = 0，Ω(s) = [[0, F̄(s)], [F(s), 0]]
积分截断到 [0, L]，用梯形权重的 Nyström 方法离散，节点上配置
"""

from dataclasses import dataclass
from typing import Literal, Optional

import numpy as np

from ..numerics import DenseFactorization, SampledFunction, UniformGrid, integrate
from ..errors import (
    DomainError,
    InconsistencyError,
    MarchenkoSolveError,
    SingularMatrixError,
)
from ..utils.logger import get_logger

logger = get_logger("marchenko")

RESIDUAL_TOL = 1e-8
PAIR_TOL = 1e-8


@dataclass(frozen=True)
class MarchenkoKernel:
    """由 F（ζ ≥ 0）构成的核，节点间线性插值，超出范围取零"""
    F: SampledFunction

    @property
    def zeta_max(self) -> float:
        return self.F.grid.x_max

    def values(self, s: np.ndarray) -> np.ndarray:
        """F(s)"""
        return self.F.interpolate(s).astype(complex)

    def omega(self, s) -> np.ndarray:
        """Ω(s)，标量 s 返回 2×2 矩阵，数组返回 (..., 2, 2)"""
        f = self.values(np.asarray(s, dtype=float))
        out = np.zeros(np.shape(f) + (2, 2), dtype=complex)
        out[..., 0, 1] = np.conj(f)
        out[..., 1, 0] = f
        return out

    def tail_mass(self, start: float) -> float:
        """∫_{start}^{ζ_max} |F|"""
        if start >= self.zeta_max:
            return 0.0
        return float(integrate(self.F.abs(), max(start, 0.0), self.zeta_max))


def build_omega(F: SampledFunction) -> MarchenkoKernel:
    """
    由 F 构造 Marchenko 核

    Args:
        F: ζ ∈ [0, ζ_max] 上的 F

    Returns:
        MarchenkoKernel
    """
    return MarchenkoKernel(F=F.with_values(F.values.astype(complex)))


@dataclass(frozen=True)
class MarchenkoSolution:
    """
    固定 x 的 Γ(x,·)

    Attributes:
        x: 位置
        gamma_row: ζ ∈ [0, L] 上的 Γ(x,ζ)，形状 (n, 2, 2)
        residual: 离散方程回代后的最大残差
    """
    x: float
    gamma_row: SampledFunction
    residual: float

    @property
    def gamma12_at_zero(self) -> complex:
        return complex(self.gamma_row.values[0, 0, 1])

    @property
    def gamma21_at_zero(self) -> complex:
        return complex(self.gamma_row.values[0, 1, 0])

    @property
    def pair_error(self) -> float:
        """|Γ₁₂(x,0) − conj Γ₂₁(x,0)|"""
        return abs(self.gamma12_at_zero - np.conj(self.gamma21_at_zero))


class NystromSystem:
    """
    Nyström 节点与权重，在多个 x 上重复使用

    ζ、t 共用节点 t_j = j·L/(n−1)，K_ij = w_j·F(x + t_i + t_j)
    """

    def __init__(self, kern: MarchenkoKernel, length: Optional[float] = None, n_nodes: int = 512):
        self.kern = kern
        self.grid = UniformGrid(length or kern.zeta_max, n_nodes)
        self.nodes = self.grid.nodes
        self.weights = self.grid.trapezoid_weights()
        self._pair_sum = self.nodes[:, None] + self.nodes[None, :]

    def solve(self, x: float, tolerance: float = RESIDUAL_TOL) -> MarchenkoSolution:
        """
        在 x 处求解两行非平凡未知量

        行 1：[[I, K], [K̄, I]]·[Γ₁₁; Γ₁₂] = [0; −F̄(x+ζ)]
        行 2：[[I, K̄], [K, I]]·[Γ₂₂; Γ₂₁] = [0; −F(x+ζ)]，系数矩阵为行 1 的共轭

        Raises:
            MarchenkoSolveError: 矩阵奇异或残差超限
        """
        n = self.grid.n
        K = self.kern.values(x + self._pair_sum) * self.weights[None, :]
        f = self.kern.values(x + self.nodes)

        A = np.eye(2 * n, dtype=complex)
        A[:n, n:] = K
        A[n:, :n] = np.conj(K)
        rhs1 = np.concatenate([np.zeros(n, dtype=complex), -np.conj(f)])
        rhs2 = np.concatenate([np.zeros(n, dtype=complex), -f])

        try:
            lu = DenseFactorization(A)
        except SingularMatrixError as e:
            raise MarchenkoSolveError(
                f"x={x:.4f} 处 Marchenko 方程组奇异: {e.message}",
                condition=float(np.linalg.cond(A))
            )
        row1 = lu.solve(rhs1, tol=tolerance)
        row2 = lu.solve(rhs2, tol=tolerance, conjugate=True)

        residual = max(
            float(np.max(np.abs(A @ row1.x - rhs1))),
            float(np.max(np.abs(np.conj(A) @ row2.x - rhs2))),
        )
        if residual > tolerance:
            raise MarchenkoSolveError(
                f"x={x:.4f} 处 Marchenko 残差 {residual:.3e} 超过 {tolerance:.1e}",
                condition=float(np.linalg.cond(A))
            )

        gamma = np.empty((n, 2, 2), dtype=complex)
        gamma[:, 0, 0] = row1.x[:n]
        gamma[:, 0, 1] = row1.x[n:]
        gamma[:, 1, 1] = row2.x[:n]
        gamma[:, 1, 0] = row2.x[n:]
        return MarchenkoSolution(x=float(x), gamma_row=SampledFunction(self.grid, gamma), residual=residual)


def solve_marchenko(
    kern: MarchenkoKernel,
    x: float,
    length: Optional[float] = None,
    n_nodes: int = 512,
    tolerance: float = RESIDUAL_TOL
) -> MarchenkoSolution:
    """
    固定 x 求解 Marchenko 方程

    Args:
        kern: 核
        x: 位置（≥ 0）
        length: 截断长度 L，默认为 F 的采样范围 ζ_max
        n_nodes: Nyström 节点数
        tolerance: 残差上限

    Returns:
        MarchenkoSolution
    """
    if x < 0:
        raise DomainError(f"x 必须非负: {x}")
    return NystromSystem(kern, length, n_nodes).solve(x, tolerance)


@dataclass(frozen=True)
class VExtraction:
    """
    v 的提取结果

    Attributes:
        v: 重构网格上的 v
        residuals: 每个节点的 Marchenko 残差
        pair_errors: 每个节点的 |Γ₁₂(x,0) − conj Γ₂₁(x,0)|
        truncation_estimate: 截断长度之外 |F| 的尾部质量
    """
    v: SampledFunction
    residuals: np.ndarray
    pair_errors: np.ndarray
    truncation_estimate: float

    @property
    def max_residual(self) -> float:
        return float(np.max(self.residuals))


def extract_v(
    kern: MarchenkoKernel,
    x_grid: UniformGrid,
    length: Optional[float] = None,
    n_nodes: int = 512,
    method: Literal["collocation", "extrapolate"] = "collocation",
    tolerance: float = RESIDUAL_TOL,
    pair_tolerance: float = PAIR_TOL
) -> VExtraction:
    """
    v(x) = −Γ₁₂(x,0) = −conj Γ₂₁(x,0)，逐个网格节点求解

    Args:
        kern: 核
        x_grid: 重构网格
        length: 截断长度 L
        n_nodes: Nyström 节点数
        method: "collocation" 取 ζ = 0 节点；"extrapolate" 取 2Γ(ζ₁) − Γ(ζ₂)
        tolerance: 残差上限
        pair_tolerance: 共轭对恒等式容差

    Returns:
        VExtraction

    Raises:
        InconsistencyError: 共轭对恒等式不成立
    """
    if method not in ("collocation", "extrapolate"):
        raise DomainError(f"未知的 v 提取方式: {method}")
    system = NystromSystem(kern, length, n_nodes)
    logger.info(
        f"求解 Marchenko 方程: {x_grid.n} 个位置, L={system.grid.x_max}, "
        f"{system.grid.n} 个 Nyström 节点, 方式 {method}"
    )

    v = np.empty(x_grid.n, dtype=complex)
    residuals = np.empty(x_grid.n)
    pair_errors = np.empty(x_grid.n)
    for j, x in enumerate(x_grid.nodes):
        solution = system.solve(x, tolerance)
        g12 = solution.gamma_row.values[:, 0, 1]
        if method == "collocation":
            v[j] = -g12[0]
        else:
            v[j] = -(2.0 * g12[1] - g12[2])
        residuals[j] = solution.residual
        pair_errors[j] = solution.pair_error
        if pair_errors[j] > pair_tolerance:
            raise InconsistencyError(
                f"x={x:.4f} 处共轭对恒等式失败: |Γ₁₂ − conj Γ₂₁| = {pair_errors[j]:.3e}"
            )
        logger.debug(f"x={x:.4f}: v={v[j]:.6e}, 残差 {solution.residual:.2e}")

    truncation = kern.tail_mass(system.grid.x_max)
    logger.info(f"Marchenko 完成: 最大残差 {np.max(residuals):.2e}, 截断估计 {truncation:.2e}")
    return VExtraction(
        v=SampledFunction(x_grid, v),
        residuals=residuals,
        pair_errors=pair_errors,
        truncation_estimate=truncation,
    )
