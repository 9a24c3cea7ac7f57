"""
问题类型模块
三种等价形式：能量依赖薛定谔问题 (u, p, α)、非典范 Dirac 系统 P(x)、
典范 ZS-AKNS 问题 (v, β)
"""

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from ..numerics import SampledFunction, integrate
from ..errors import DomainError

# 变换链中使用的常数矩阵
U = np.array([[1j, -1j], [1.0, 1.0]], dtype=complex)
SIGMA1 = np.array([[0.0, 1.0], [1.0, 0.0]])
SIGMA2 = np.array([[0.0, 1.0], [-1.0, 0.0]])
SIGMA3 = np.array([[1.0, 0.0], [0.0, -1.0]])

# 尾部诊断：网格最后 10% 上的 ∫(|u|+|p|)
TAIL_START = 0.9


def reduce_mod_pi(value: float) -> float:
    """把实数约化到 [0, π) 内唯一的代表元"""
    r = float(np.mod(value, math.pi))
    if r >= math.pi or r < 0.0:
        r = 0.0
    return r


def mod_pi_distance(a: float, b: float) -> float:
    """两个角在模 π 意义下的距离"""
    d = reduce_mod_pi(a - b)
    return min(d, math.pi - d)


@dataclass(frozen=True)
class SchrodingerProblem:
    """
    能量依赖薛定谔问题 −y'' + qy + 2kpy = k²y，q = u' + u²

    Attributes:
        u: Riccati 表示（实值）
        p: 能量线性势（实值）
        alpha: 边界参数 α ∈ [0, π)
    """
    u: SampledFunction
    p: SampledFunction
    alpha: float

    def __post_init__(self):
        self.u.grid.require_same(self.p.grid)
        if self.u.is_complex or self.p.is_complex:
            raise DomainError("u 与 p 必须是实值函数")
        if not (0.0 <= self.alpha < math.pi):
            raise DomainError(f"边界参数 α 必须在 [0, π) 内: {self.alpha}")

    @property
    def grid(self):
        return self.u.grid

    @property
    def tail_mass(self) -> float:
        """网格最后 10% 上 |u| + |p| 的积分"""
        combined = self.u.with_values(np.abs(self.u.values) + np.abs(self.p.values))
        return float(integrate(combined, TAIL_START * self.grid.x_max, self.grid.x_max))


@dataclass(frozen=True)
class DiracSystem:
    """非典范 Dirac 系统 σ₂y' + P(x)y = ky，P = [[0, −u], [−u, 2p]]"""
    P: SampledFunction

    @classmethod
    def from_problem(cls, sp: SchrodingerProblem) -> "DiracSystem":
        u = sp.u.values
        p = sp.p.values
        P = np.zeros((sp.grid.n, 2, 2))
        P[:, 0, 1] = -u
        P[:, 1, 0] = -u
        P[:, 1, 1] = 2.0 * p
        return cls(SampledFunction(sp.grid, P))


@dataclass(frozen=True)
class ZsAknsProblem:
    """
    典范 ZS-AKNS 问题 w' + Vw = ikσ₃w，V = [[0, v], [v̄, 0]]，
    边界条件 e^{iβ}w₁(0) + e^{−iβ}w₂(0) = 0

    由薛定谔问题构造时同时记录 φ(x) = ∫ₓ^∞ p 与 p₀ = φ(0)
    """
    v: SampledFunction
    beta: float
    p0: float = 0.0
    phi: Optional[SampledFunction] = None

    def __post_init__(self):
        if not (0.0 <= self.beta < math.pi):
            raise DomainError(f"边界参数 β 必须在 [0, π) 内: {self.beta}")
        if self.phi is not None:
            self.phi.grid.require_same(self.v.grid)

    @property
    def grid(self):
        return self.v.grid
