"""
Fourier 积分模块
在对称 k 网格上用梯形公式计算 (1/π)·∫ g(k)·e^{−2ikζ} dk
"""

from dataclasses import dataclass
from typing import Union

import numpy as np
from scipy.integrate import trapezoid

from ..errors import DomainError

# 分块计算，避免一次性生成 n_ζ × n_k 的大矩阵
_BLOCK = 256


@dataclass(frozen=True)
class FourierIntegral:
    """Fourier 积分结果与截断误差估计"""
    values: np.ndarray
    truncation_bound: np.ndarray


def _check_symmetric(k: np.ndarray) -> None:
    if k.ndim != 1 or k.size < 2:
        raise DomainError("k 网格必须是至少含两个节点的一维数组")
    if np.any(np.diff(k) <= 0):
        raise DomainError("k 网格必须严格递增")
    if not np.allclose(k, -k[::-1], rtol=0.0, atol=1e-9 * max(1.0, float(np.max(np.abs(k))))):
        raise DomainError("k 网格必须关于 0 对称")


def fourier_integral(
    k: np.ndarray,
    g: np.ndarray,
    zeta: Union[float, np.ndarray]
) -> FourierIntegral:
    """
    计算 (1/π)·∫_{−K}^{K} g(k)·e^{−2ikζ} dk

    截断误差估计按 g ~ c/k 尾部的分部积分给出：
    (2/π)·(|g(−K)| + |g(K)|)·min(K, 1/(2|ζ|))

    Args:
        k: 对称、严格递增的 k 节点
        g: 节点上的函数值（NaN 节点按零处理）
        zeta: 标量或一维数组

    Returns:
        FourierIntegral，values 与 zeta 同形
    """
    k = np.asarray(k, dtype=float)
    _check_symmetric(k)
    g = np.asarray(g, dtype=complex)
    if g.shape != k.shape:
        raise DomainError(f"g 的长度 {g.shape} 与 k 网格 {k.shape} 不一致")

    scalar = np.ndim(zeta) == 0
    zeta_arr = np.atleast_1d(np.asarray(zeta, dtype=float))

    g_clean = np.where(np.isfinite(g), g, 0.0)
    values = np.empty(zeta_arr.shape, dtype=complex)
    for start in range(0, zeta_arr.size, _BLOCK):
        block = zeta_arr[start:start + _BLOCK]
        integrand = np.exp(-2j * np.outer(block, k)) * g_clean
        values[start:start + _BLOCK] = trapezoid(integrand, x=k, axis=1) / np.pi

    k_max = float(k[-1])
    edge = abs(g[0]) + abs(g[-1]) if np.isfinite(g[0]) and np.isfinite(g[-1]) else np.inf
    with np.errstate(divide="ignore"):
        reach = np.minimum(k_max, 1.0 / (2.0 * np.abs(zeta_arr)))
    bound = (2.0 / np.pi) * edge * reach

    if scalar:
        return FourierIntegral(values=values[0], truncation_bound=bound[0])
    return FourierIntegral(values=values, truncation_bound=bound)
