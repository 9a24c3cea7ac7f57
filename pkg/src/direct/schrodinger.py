"""
薛定谔层面的 Jost 量
Jost 解的第一列 y = U·e^{iφσ₃}·ψ₁，f = y₂，f^{[1]} = k·y₁；
Jost 函数 s(k) = sin α·f^{[1]}(0,k) + k·cos α·f(0,k)
"""

from dataclasses import dataclass
from typing import Tuple

import numpy as np

from .jost import jost_matrix
from ..numerics import SampledFunction
from ..transform.problems import SchrodingerProblem
from ..transform.chain import to_zsakns
from ..errors import DomainError


@dataclass(frozen=True)
class JostFunctionValue:
    """两条途径计算的 Jost 函数"""
    k: float
    schrodinger_route: complex
    dirac_route: complex

    @property
    def value(self) -> complex:
        return self.schrodinger_route

    @property
    def route_gap(self) -> float:
        return abs(self.schrodinger_route - self.dirac_route)

    @property
    def ratio(self) -> complex:
        """s(k) / conj(s(k))"""
        return self.schrodinger_route / np.conj(self.schrodinger_route)


def _require_nonzero(k: float) -> None:
    if k == 0 or not np.isfinite(k):
        raise DomainError(f"k 必须是非零有限实数: {k}")


def jost_values_at_zero(
    psi0: np.ndarray,
    k: np.ndarray,
    p0: float
) -> Tuple[np.ndarray, np.ndarray]:
    """
    由 Ψ(0,k) 批量得到 f(0,k) 与 f^{[1]}(0,k)

    Args:
        psi0: 形状 (m, 2, 2)
        k: 频率，形状 (m,)
        p0: φ(0)

    Returns:
        (f0, f0_quasi)，形状 (m,)
    """
    a = np.exp(1j * p0) * psi0[:, 0, 0]
    b = np.exp(-1j * p0) * psi0[:, 1, 0]
    return a + b, 1j * k * (a - b)


def jost_function_values(psi0: np.ndarray, k: np.ndarray, alpha: float, p0: float) -> np.ndarray:
    """批量 s(k) = sin α·f^{[1]}(0,k) + k·cos α·f(0,k)"""
    f0, f0_quasi = jost_values_at_zero(psi0, k, p0)
    return np.sin(alpha) * f0_quasi + k * np.cos(alpha) * f0


def schrodinger_jost(sp: SchrodingerProblem, k: float) -> Tuple[complex, complex]:
    """
    Jost 解在 x = 0 的值 f(0,k) 与拟导数 f^{[1]}(0,k)

    Args:
        sp: 薛定谔问题
        k: 非零实频率

    Returns:
        (f0, f0_quasi)

    Raises:
        DomainError: k = 0
    """
    _require_nonzero(k)
    zp = to_zsakns(sp)
    psi = jost_matrix(zp, k).psi0
    f0, f0_quasi = jost_values_at_zero(psi[None], np.array([k], dtype=float), zp.p0)
    return complex(f0[0]), complex(f0_quasi[0])


def schrodinger_profile(sp: SchrodingerProblem, k: float) -> Tuple[SampledFunction, SampledFunction]:
    """
    整个网格上的 Jost 解 f(x,k) 与 f^{[1]}(x,k)

    Args:
        sp: 薛定谔问题
        k: 非零实频率

    Returns:
        (f, f_quasi)
    """
    _require_nonzero(k)
    zp = to_zsakns(sp)
    m = jost_matrix(zp, k, keep_profile=True).profile.values
    x = sp.grid.nodes
    z1 = np.exp(1j * (zp.phi.values + k * x)) * m[:, 0, 0]
    z2 = np.exp(-1j * (zp.phi.values + k * x)) * m[:, 1, 0]
    f = sp.u.with_values(z1 + z2)
    f_quasi = sp.u.with_values(1j * k * (z1 - z2))
    return f, f_quasi


def jost_function(sp: SchrodingerProblem, k: float) -> JostFunctionValue:
    """
    Jost 函数 s(k)，同时给出 Dirac 途径的值用于交叉校验

    Dirac 途径：k·(e^{i(α+p₀)}ψ₁₁ + e^{−i(α+p₀)}ψ₂₁)，ψ = Ψ(0,k)

    Args:
        sp: 薛定谔问题
        k: 非零实频率

    Returns:
        JostFunctionValue
    """
    _require_nonzero(k)
    zp = to_zsakns(sp)
    psi = jost_matrix(zp, k).psi0
    schrodinger = jost_function_values(psi[None], np.array([k], dtype=float), sp.alpha, zp.p0)[0]

    theta = sp.alpha + zp.p0
    dirac = k * (np.exp(1j * theta) * psi[0, 0] + np.exp(-1j * theta) * psi[1, 0])
    return JostFunctionValue(k=float(k), schrodinger_route=complex(schrodinger), dirac_route=complex(dirac))
