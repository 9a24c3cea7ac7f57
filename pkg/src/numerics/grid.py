"""
网格与采样函数模块
半轴 ℝ₊ 截断为 [0, x_max]，在均匀网格上离散
"""

from dataclasses import dataclass
from typing import Callable, Union

import numpy as np

from ..errors import DomainError


@dataclass(frozen=True)
class UniformGrid:
    """均匀网格 x_j = j·h, j = 0..n−1, h = x_max/(n−1)"""
    x_max: float
    n: int

    def __post_init__(self):
        if self.n < 2:
            raise DomainError(f"网格节点数至少为 2: n={self.n}")
        if not (np.isfinite(self.x_max) and self.x_max > 0):
            raise DomainError(f"截断长度必须为正: x_max={self.x_max}")

    @property
    def h(self) -> float:
        """网格步长"""
        return self.x_max / (self.n - 1)

    @property
    def nodes(self) -> np.ndarray:
        """全部节点"""
        return np.linspace(0.0, self.x_max, self.n)

    def trapezoid_weights(self) -> np.ndarray:
        """复合梯形公式权重 (h/2, h, ..., h, h/2)"""
        w = np.full(self.n, self.h)
        w[0] = w[-1] = 0.5 * self.h
        return w

    def refine(self, factor: int) -> "UniformGrid":
        """每个网格区间等分为 factor 段"""
        if factor < 1:
            raise DomainError(f"加密倍数必须为正整数: {factor}")
        return UniformGrid(self.x_max, (self.n - 1) * factor + 1)

    def index_at_or_after(self, x: float) -> int:
        """不小于 x 的第一个节点下标"""
        j = int(np.ceil(x / self.h - 1e-9))
        return min(max(j, 0), self.n - 1)

    def same_as(self, other: "UniformGrid") -> bool:
        """两个网格是否一致"""
        return self.n == other.n and np.isclose(self.x_max, other.x_max, rtol=1e-12, atol=0.0)

    def require_same(self, other: "UniformGrid") -> None:
        """网格不一致时抛出 DomainError"""
        if not self.same_as(other):
            raise DomainError(
                f"网格不匹配: (x_max={self.x_max}, n={self.n}) vs (x_max={other.x_max}, n={other.n})"
            )


@dataclass(frozen=True)
class SampledFunction:
    """网格上的采样函数（实值或复值），每个节点一个值"""
    grid: UniformGrid
    values: np.ndarray

    def __post_init__(self):
        values = np.array(self.values)
        if values.dtype.kind not in "fc":
            values = values.astype(float)
        if values.shape[0] != self.grid.n:
            raise DomainError(f"采样点数 {values.shape[0]} 与网格节点数 {self.grid.n} 不一致")
        if not np.all(np.isfinite(values)):
            raise DomainError("采样函数含有非有限值")
        values.setflags(write=False)
        object.__setattr__(self, "values", values)

    @classmethod
    def from_function(cls, grid: UniformGrid, fn: Callable[[np.ndarray], np.ndarray]) -> "SampledFunction":
        """在网格节点上求值"""
        return cls(grid, np.asarray(fn(grid.nodes)))

    @classmethod
    def zeros(cls, grid: UniformGrid, dtype: Union[type, str] = float) -> "SampledFunction":
        """零函数"""
        return cls(grid, np.zeros(grid.n, dtype=dtype))

    @property
    def nodes(self) -> np.ndarray:
        return self.grid.nodes

    @property
    def is_complex(self) -> bool:
        return np.iscomplexobj(self.values)

    def with_values(self, values: np.ndarray) -> "SampledFunction":
        """同一网格上的新函数"""
        return SampledFunction(self.grid, values)

    def real(self) -> "SampledFunction":
        return self.with_values(np.real(self.values))

    def imag(self) -> "SampledFunction":
        return self.with_values(np.imag(self.values))

    def abs(self) -> "SampledFunction":
        return self.with_values(np.abs(self.values))

    def interpolate(self, x: np.ndarray) -> np.ndarray:
        """
        分段线性插值，区间外取零

        Args:
            x: 任意位置

        Returns:
            插值结果，dtype 与 values 一致
        """
        x = np.asarray(x, dtype=float)
        nodes = self.grid.nodes
        if self.is_complex:
            out = (np.interp(x, nodes, self.values.real, left=0.0, right=0.0)
                   + 1j * np.interp(x, nodes, self.values.imag, left=0.0, right=0.0))
        else:
            out = np.interp(x, nodes, self.values, left=0.0, right=0.0)
        return out

    def norm_l1(self) -> float:
        """L¹ 范数（梯形公式）"""
        return float(np.sum(self.grid.trapezoid_weights() * np.abs(self.values)))

    def norm_l2(self) -> float:
        """L² 范数（梯形公式）"""
        return float(np.sqrt(np.sum(self.grid.trapezoid_weights() * np.abs(self.values) ** 2)))
