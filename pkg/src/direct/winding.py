"""
绕数模块
相邻节点的相位增量取 arg(S_{j+1}/S_j)，累加后除以 2π
"""

import math
from dataclasses import dataclass

import numpy as np

from .scattering import ScatteringSamples
from ..errors import UnderResolvedError
from ..utils.logger import get_logger

logger = get_logger("direct")


@dataclass(frozen=True)
class WindingNumber:
    """绕数及诊断量"""
    winding: int
    raw: float          # 未取整的 (总相位变化)/2π
    limit_gap: float    # |S(K) − S(−K)|
    max_step: float     # 最大相邻相位增量
    limit_gap_tol: float = 0.1

    @property
    def limits_equal(self) -> bool:
        return self.limit_gap <= self.limit_gap_tol

    def __int__(self) -> int:
        return self.winding


def winding_number(
    S: ScatteringSamples,
    max_step: float = math.pi / 2,
    limit_gap_tol: float = 0.1
) -> WindingNumber:
    """
    单位模函数的绕数

    Args:
        S: 散射函数采样（屏蔽节点被跳过）
        max_step: 相邻相位增量上限
        limit_gap_tol: 两端极限差的警告阈值

    Returns:
        WindingNumber

    Raises:
        UnderResolvedError: 相邻相位增量 ≥ max_step
    """
    values = S.values[S.finite]
    if values.size < 2:
        raise UnderResolvedError("有效节点不足，无法计算绕数")
    if np.any(values == 0):
        raise UnderResolvedError("S 在某节点为零，相位无定义")

    steps = np.angle(values[1:] / values[:-1])
    largest = float(np.max(np.abs(steps)))
    if largest >= max_step:
        j = int(np.argmax(np.abs(steps)))
        raise UnderResolvedError(
            f"k 网格无法分辨相位: 第 {j} 个节点处相位增量 {largest:.3f} ≥ {max_step:.3f}"
        )

    raw = float(np.sum(steps) / (2.0 * math.pi))
    gap = float(abs(values[-1] - values[0]))
    if gap > limit_gap_tol:
        logger.warning(f"S 在 ±K 处的极限不相等: |S(K) − S(−K)| = {gap:.3e}")
    return WindingNumber(
        winding=int(round(raw)), raw=raw, limit_gap=gap, max_step=largest, limit_gap_tol=limit_gap_tol
    )
