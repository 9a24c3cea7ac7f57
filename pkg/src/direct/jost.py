"""
Jost 矩阵模块
去振荡变量 M(x,k) = e^{−ikxσ₃}Ψ(x,k) 满足
M′ = A(x)·M，A = −[[0, v·e^{−2ikx}], [v̄·e^{2ikx}, 0]]，M(x_max) = I，
用两点 Gauss 的四阶 Magnus 步自 x_max 向 0 反向积分，所有频率同步推进。
每步的 Ω 无迹，exp(Ω) 用 cosh/sinh 闭式计算，det M ≡ 1 只受舍入误差影响
"""

import math
from dataclasses import dataclass
from typing import Callable, Optional, Tuple

import numpy as np
from scipy.interpolate import CubicSpline

from ..numerics import SampledFunction, UniformGrid
from ..transform.problems import ZsAknsProblem
from ..errors import DomainError, IntegrationError
from ..utils.logger import get_logger

logger = get_logger("direct")

# 步长上限 0.2 / max(1, |k|)，分辨 e^{±2ikx} 因子
STEP_CAP = 0.2
# 细网格总步数上限
MAX_STEPS = 2_000_000
# 每隔多少步检查一次有限性
_FINITE_CHECK_EVERY = 256

# 两点 Gauss-Legendre 节点相对步中点的偏移（以步长计）
_GAUSS_OFFSET = math.sqrt(3.0) / 6.0
_COMMUTATOR_WEIGHT = math.sqrt(3.0) / 12.0


@dataclass(frozen=True)
class JostMatrix:
    """
    单个频率上的 Jost 矩阵 Ψ(0,k)

    Attributes:
        k: 频率
        psi0: 2×2 复矩阵
        profile: 可选，问题网格上的去振荡剖面 M(x,k)，形状 (n, 2, 2)
    """
    k: float
    psi0: np.ndarray
    profile: Optional[SampledFunction] = None

    @property
    def det(self) -> complex:
        return complex(determinants(self.psi0[None])[0])

    @property
    def symmetry_error(self) -> float:
        """第二列与 σ₁·conj(第一列) 的偏差"""
        return float(symmetry_errors(self.psi0[None])[0])


def determinants(psi0: np.ndarray) -> np.ndarray:
    """批量 2×2 行列式，psi0 形状 (m, 2, 2)"""
    return psi0[:, 0, 0] * psi0[:, 1, 1] - psi0[:, 0, 1] * psi0[:, 1, 0]


def symmetry_errors(psi0: np.ndarray) -> np.ndarray:
    """批量列对称偏差 max(|ψ₁₂ − conj ψ₂₁|, |ψ₂₂ − conj ψ₁₁|)"""
    return np.maximum(
        np.abs(psi0[:, 0, 1] - np.conj(psi0[:, 1, 0])),
        np.abs(psi0[:, 1, 1] - np.conj(psi0[:, 0, 0])),
    )


def potential_interpolant(v: SampledFunction) -> Callable[[np.ndarray], np.ndarray]:
    """
    v 的三次样条插值（实部、虚部分别插值），与四阶积分步匹配

    Args:
        v: 复势

    Returns:
        x ↦ v(x)
    """
    x = v.grid.nodes
    values = v.values.astype(complex)
    if v.grid.n < 4:
        return lambda t: (np.interp(t, x, values.real) + 1j * np.interp(t, x, values.imag))
    re = CubicSpline(x, values.real)
    im = CubicSpline(x, values.imag)
    return lambda t: re(t) + 1j * im(t)


def refinement_factor(grid: UniformGrid, k_abs_max: float) -> int:
    """使细网格步长不超过 0.2 / max(1, |k|) 的整数加密倍数"""
    cap = STEP_CAP / max(1.0, k_abs_max)
    return max(1, int(math.ceil(grid.h / cap - 1e-12)))


def _traceless_exp(d: np.ndarray, e: np.ndarray, f: np.ndarray) -> np.ndarray:
    """
    exp([[d, e], [f, −d]]) = cosh μ·I + (sinh μ / μ)·Ω，μ² = d² + e·f

    cosh μ 与 sinh μ / μ 都是 μ² 的偶函数，平方根分支不影响结果。
    """
    mu2 = d * d + e * f
    mu = np.sqrt(mu2)
    small = np.abs(mu) < 1e-4
    safe_mu = np.where(small, 1.0, mu)
    c = np.where(small, 1.0 + mu2 / 2.0 + mu2 * mu2 / 24.0, np.cosh(mu))
    s = np.where(small, 1.0 + mu2 / 6.0 + mu2 * mu2 / 120.0, np.sinh(mu) / safe_mu)

    out = np.empty(d.shape + (2, 2), dtype=complex)
    out[:, 0, 0] = c + s * d
    out[:, 0, 1] = s * e
    out[:, 1, 0] = s * f
    out[:, 1, 1] = c - s * d
    return out


def jost_matrices(
    zp: ZsAknsProblem,
    k_values: np.ndarray,
    keep_profile: bool = False,
    max_steps: int = MAX_STEPS
) -> Tuple[np.ndarray, Optional[np.ndarray]]:
    """
    批量计算 Ψ(0,k)

    步长由最大的 |k| 决定，所有频率共用同一步长序列。
    每步 M ← exp(Ω)·M，Ω = (δ/2)(A₁+A₂) + (√3/12)δ²[A₂, A₁]，δ = −h，
    A₁、A₂ 取在两个 Gauss 点上。

    Args:
        zp: ZS-AKNS 问题
        k_values: 实频率数组
        keep_profile: 是否保留问题网格节点上的 M(x,k)
        max_steps: 细网格总步数上限

    Returns:
        (psi0, profile)，psi0 形状 (m, 2, 2)；profile 形状 (n, m, 2, 2) 或 None

    Raises:
        IntegrationError: 步数溢出或出现非有限值
    """
    k = np.atleast_1d(np.asarray(k_values, dtype=float))
    if k.ndim != 1 or not np.all(np.isfinite(k)):
        raise DomainError("k 必须是有限实数的一维数组")

    grid = zp.grid
    k_abs_max = float(np.max(np.abs(k))) if k.size else 0.0
    factor = refinement_factor(grid, k_abs_max)
    n_steps = (grid.n - 1) * factor
    if n_steps > max_steps:
        raise IntegrationError(
            f"积分步数 {n_steps} 超过上限 {max_steps}（|k|max={k_abs_max}, x_max={grid.x_max}）"
        )

    fine = grid.refine(factor)
    h = fine.h
    xs = fine.nodes
    v_at = potential_interpolant(zp.v)
    # 第 j 步从 xs[j] 走到 xs[j−1]；near 靠近 xs[j]，far 靠近 xs[j−1]
    mids = xs[1:] - 0.5 * h
    x_near = mids + _GAUSS_OFFSET * h
    x_far = mids - _GAUSS_OFFSET * h
    v_near = v_at(x_near)
    v_far = v_at(x_far)

    logger.debug(f"Jost 积分: {k.size} 个频率, 加密倍数 {factor}, 步长 {h:.3e}")

    M = np.zeros((k.size, 2, 2), dtype=complex)
    M[:, 0, 0] = 1.0
    M[:, 1, 1] = 1.0

    profile = None
    if keep_profile:
        profile = np.empty((grid.n, k.size, 2, 2), dtype=complex)
        profile[-1] = M

    delta = -h
    for j in range(n_steps, 0, -1):
        # A(x) = [[0, −a], [−ā, 0]]，a = v·e^{−2ikx}
        a1 = v_near[j - 1] * np.exp(-2j * k * x_near[j - 1])
        a2 = v_far[j - 1] * np.exp(-2j * k * x_far[j - 1])
        b1 = np.conj(a1)
        b2 = np.conj(a2)

        # [A₂, A₁] = diag(c, −c)，c = a₂b₁ − a₁b₂
        d = _COMMUTATOR_WEIGHT * delta * delta * (a2 * b1 - a1 * b2)
        e = -0.5 * delta * (a1 + a2)
        f = -0.5 * delta * (b1 + b2)
        M = np.matmul(_traceless_exp(d, e, f), M)

        if j % _FINITE_CHECK_EVERY == 0 and not np.all(np.isfinite(M)):
            raise IntegrationError(f"Jost 积分在 x={xs[j - 1]:.4f} 处出现非有限值")
        if profile is not None and (j - 1) % factor == 0:
            profile[(j - 1) // factor] = M

    if not np.all(np.isfinite(M)):
        raise IntegrationError("Jost 积分结果含非有限值")
    return M, profile


def jost_matrix(zp: ZsAknsProblem, k: float, keep_profile: bool = False) -> JostMatrix:
    """
    单个频率的 Jost 矩阵

    Args:
        zp: ZS-AKNS 问题
        k: 实频率
        keep_profile: 是否保留 M(x,k) 剖面

    Returns:
        JostMatrix
    """
    psi0, profile = jost_matrices(zp, np.array([k], dtype=float), keep_profile=keep_profile)
    sampled = None
    if profile is not None:
        sampled = SampledFunction(zp.grid, profile[:, 0])
    return JostMatrix(k=float(k), psi0=psi0[0], profile=sampled)
