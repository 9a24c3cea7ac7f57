"""
稠密线性方程组求解
LU 分解（部分主元），支撑 Marchenko 方程的 Nyström 离散
"""

from dataclasses import dataclass

import numpy as np
from scipy.linalg import lu_factor, lu_solve

from ..errors import DomainError, SingularMatrixError
from ..utils.logger import get_logger

logger = get_logger("numerics")


@dataclass(frozen=True)
class DenseSolution:
    """稠密求解结果"""
    x: np.ndarray
    residual: float   # ‖Ax − b‖ / ‖b‖（b = 0 时为 ‖Ax − b‖）
    min_pivot: float


class DenseFactorization:
    """
    方阵的 LU 分解，可对多个右端重复求解

    conj(A) 的分解即 A 分解的逐元素共轭（主元顺序不变），
    solve(..., conjugate=True) 据此求解 conj(A)·x = b
    """

    def __init__(self, A: np.ndarray, pivot_threshold: float = 1e-13):
        """
        Args:
            A: 方阵（复数或实数）
            pivot_threshold: 主元相对 max|A| 的下限，低于此值视为数值奇异

        Raises:
            DomainError: 不是方阵
            SingularMatrixError: 主元过小
        """
        A = np.asarray(A)
        if A.ndim != 2 or A.shape[0] != A.shape[1]:
            raise DomainError(f"系数矩阵必须是方阵: shape={A.shape}")
        scale = float(np.max(np.abs(A))) if A.size else 0.0
        if scale == 0.0:
            raise SingularMatrixError("系数矩阵为零矩阵", pivot=0.0)

        self.matrix = A
        self.lu, self.piv = lu_factor(A, check_finite=True)
        self.min_pivot = float(np.min(np.abs(np.diag(self.lu))))
        if self.min_pivot < pivot_threshold * scale:
            raise SingularMatrixError(
                f"系数矩阵数值奇异: 最小主元 {self.min_pivot:.3e}（相对阈值 {pivot_threshold:.1e}）",
                pivot=self.min_pivot
            )

    def solve(self, b: np.ndarray, tol: float = 1e-10, conjugate: bool = False) -> DenseSolution:
        """
        求解 Ax = b（conjugate 时求解 conj(A)·x = b）

        Args:
            b: 右端向量，或每列一个右端的矩阵
            tol: 相对残差的期望上限，超过时记录警告
            conjugate: 是否对共轭矩阵求解

        Returns:
            DenseSolution
        """
        b = np.asarray(b)
        if b.shape[0] != self.matrix.shape[0]:
            raise DomainError(f"右端维数 {b.shape[0]} 与矩阵阶数 {self.matrix.shape[0]} 不匹配")

        if conjugate:
            x = lu_solve((np.conj(self.lu), self.piv), b)
            A = np.conj(self.matrix)
        else:
            x = lu_solve((self.lu, self.piv), b)
            A = self.matrix

        b_norm = float(np.linalg.norm(b))
        residual = float(np.linalg.norm(A @ x - b))
        if b_norm > 0:
            residual /= b_norm
        if residual > tol:
            logger.warning(f"稠密求解相对残差 {residual:.3e} 超过 {tol:.1e}")
        return DenseSolution(x=x, residual=residual, min_pivot=self.min_pivot)


def solve_dense(
    A: np.ndarray,
    b: np.ndarray,
    tol: float = 1e-10,
    pivot_threshold: float = 1e-13
) -> DenseSolution:
    """
    求解 Ax = b

    Args:
        A: 方阵（复数或实数）
        b: 右端向量，或每列一个右端的矩阵
        tol: 相对残差的期望上限，超过时记录警告
        pivot_threshold: 主元相对 max|A| 的下限，低于此值视为数值奇异

    Returns:
        DenseSolution

    Raises:
        DomainError: 维数不匹配
        SingularMatrixError: 主元过小
    """
    return DenseFactorization(A, pivot_threshold).solve(b, tol)
