"""
表示数据模块
S(k) = e^{2iγ} + ∫ F(ζ)·e^{2ikζ} dζ：由 S 提取 γ 与 F，或由 (γ, F) 合成 S
"""

from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np

from ..direct.scattering import ScatteringSamples
from ..numerics import SampledFunction, UniformGrid, fourier_integral
from ..transform.problems import reduce_mod_pi
from ..errors import DomainError, TailNotSettledError
from ..utils.logger import get_logger

logger = get_logger("scatdata")

BAND_FRACTION = 0.1
SPREAD_TOL = 0.2


@dataclass(frozen=True)
class GammaEstimate:
    """γ 及外带收敛诊断"""
    gamma: float
    band_mean: complex
    spread: float


@dataclass(frozen=True)
class FExtraction:
    """
    F 的提取结果

    Attributes:
        F: ζ ∈ [0, ζ_max] 上的 F（主结果）
        negative: ζ = −ζ_j（j ≥ 1）处的值，顺序与 F 的节点一致
        negative_mass: ζ < 0 一侧的 L² 质量（诊断）
        truncation_bound: ζ ≥ 0 一侧截断误差估计的最大值
        tail_coefficients: 渐近尾项模型的系数 (a₁, a₂)，未做尾项修正时为 (0, 0)
    """
    F: SampledFunction
    negative: np.ndarray
    negative_mass: float
    truncation_bound: float
    tail_coefficients: Tuple[complex, complex]

    @property
    def grid(self) -> UniformGrid:
        return self.F.grid


def outer_band(k: np.ndarray, band_fraction: float = BAND_FRACTION) -> np.ndarray:
    """两端各取 band_fraction 比例节点的布尔掩码"""
    count = max(1, int(round(band_fraction * k.size / 2.0)))
    mask = np.zeros(k.size, dtype=bool)
    mask[:count] = True
    mask[-count:] = True
    return mask


def extract_gamma(
    S: ScatteringSamples,
    band_fraction: float = BAND_FRACTION,
    spread_tol: float = SPREAD_TOL
) -> GammaEstimate:
    """
    γ = ½·arg(外带上 S 的均值)，约化到 [0, π)

    Args:
        S: 散射函数采样
        band_fraction: 外带比例（两端合计）
        spread_tol: 外带散布上限

    Returns:
        GammaEstimate

    Raises:
        TailNotSettledError: 外带散布超过 spread_tol
    """
    band = outer_band(S.k_grid, band_fraction) & S.finite
    if not np.any(band):
        raise TailNotSettledError("外带上没有有效节点")
    values = S.values[band]
    mean = complex(np.mean(values))
    spread = float(np.max(np.abs(values - mean)))
    if spread > spread_tol:
        raise TailNotSettledError(
            f"S 在外带上尚未收敛: 散布 {spread:.3e} > {spread_tol}（k_max={S.k_grid[-1]:.3f} 可能过小）"
        )
    gamma = reduce_mod_pi(0.5 * float(np.angle(mean)))
    logger.debug(f"γ={gamma:.8f}, 外带散布 {spread:.3e}")
    return GammaEstimate(gamma=gamma, band_mean=mean, spread=spread)


def _tail_model(k: np.ndarray) -> np.ndarray:
    """尾项模型的两列：−1/(1+2ik) 与 2/(1+4k²)"""
    return np.stack([-1.0 / (1.0 + 2j * k), 2.0 / (1.0 + 4.0 * k ** 2)], axis=1)


def _tail_model_transform(zeta: np.ndarray, coefficients: Tuple[complex, complex]) -> np.ndarray:
    """尾项模型在 ζ 上的精确 F：a₁·(−e^{ζ})·[ζ<0] + a₂·e^{−|ζ|}"""
    a1, a2 = coefficients
    left = np.where(zeta < 0, -np.exp(np.minimum(zeta, 0.0)), 0.0)
    return a1 * left + a2 * np.exp(-np.abs(zeta))


def fit_tail(
    k: np.ndarray,
    g: np.ndarray,
    band_fraction: float = BAND_FRACTION
) -> Tuple[complex, complex]:
    """
    在外带上对 g = S − e^{2iγ} 做两项尾项模型的复最小二乘拟合

    Returns:
        (a₁, a₂)
    """
    band = outer_band(k, band_fraction) & np.isfinite(g)
    if np.count_nonzero(band) < 2:
        return 0j, 0j
    design = _tail_model(k[band])
    coefficients, *_ = np.linalg.lstsq(design, g[band], rcond=None)
    return complex(coefficients[0]), complex(coefficients[1])


def extract_F(
    S: ScatteringSamples,
    gamma: float,
    zeta_max: float,
    n_zeta: int,
    tail_correction: bool = True,
    band_fraction: float = BAND_FRACTION
) -> FExtraction:
    """
    F(ζ) = (1/π)·∫_{−K}^{K} (S(k) − e^{2iγ})·e^{−2ikζ} dk，ζ ∈ [−ζ_max, ζ_max]

    尾项修正开启时先减去拟合的渐近尾项，再加回其精确变换，
    以消除 F 在 ζ = 0 处跳跃引起的 Gibbs 振荡。

    Args:
        S: 散射函数采样
        gamma: γ
        zeta_max: ζ 窗口半宽
        n_zeta: 每侧节点数（含 0）
        tail_correction: 是否做尾项修正
        band_fraction: 拟合尾项使用的外带比例

    Returns:
        FExtraction
    """
    grid = UniformGrid(zeta_max, n_zeta)
    k = S.k_grid
    g = S.values - np.exp(2j * gamma)

    coefficients = (0j, 0j)
    if tail_correction:
        coefficients = fit_tail(k, g, band_fraction)
        g = g - _tail_model(k) @ np.array(coefficients)

    zeta_pos = grid.nodes
    zeta_neg = -zeta_pos[1:]
    positive = fourier_integral(k, g, zeta_pos)
    negative = fourier_integral(k, g, zeta_neg)
    values_pos = positive.values + _tail_model_transform(zeta_pos, coefficients)
    values_neg = negative.values + _tail_model_transform(zeta_neg, coefficients)

    # 负半轴 L² 质量；F 在 ζ = 0 处有跳跃，不计入端点
    negative_mass = float(np.sqrt(np.sum(grid.trapezoid_weights()[1:] * np.abs(values_neg) ** 2)))

    F = SampledFunction(grid, values_pos)
    logger.info(
        f"提取 F: ζ_max={zeta_max}, 每侧 {n_zeta} 个节点, ‖F‖₂={F.norm_l2():.4e}, "
        f"负半轴质量 {negative_mass:.4e}"
    )
    return FExtraction(
        F=F,
        negative=values_neg,
        negative_mass=negative_mass,
        truncation_bound=float(np.max(positive.truncation_bound)),
        tail_coefficients=coefficients,
    )


def synthesize_S(
    gamma: float,
    F: SampledFunction,
    k_grid: np.ndarray,
    F_negative: Optional[SampledFunction] = None
) -> ScatteringSamples:
    """
    由 (γ, F) 正向求积合成 S(k) = e^{2iγ} + ∫ F(ζ)·e^{2ikζ} dζ

    Args:
        gamma: γ
        F: ζ ≥ 0 上的 F
        k_grid: 对称 k 网格
        F_negative: 可选，F(−ζ) 在同一网格上的采样

    Returns:
        ScatteringSamples（一般不是严格单位模的）
    """
    k = np.asarray(k_grid, dtype=float)
    zeta = F.grid.nodes
    weights = F.grid.trapezoid_weights()
    values = np.full(k.shape, np.exp(2j * gamma))
    values = values + np.exp(2j * np.outer(k, zeta)) @ (weights * F.values)
    if F_negative is not None:
        F.grid.require_same(F_negative.grid)
        values = values + np.exp(-2j * np.outer(k, zeta)) @ (weights * F_negative.values)
    if not np.all(np.isfinite(values)):
        raise DomainError("合成的 S 含非有限值")
    return ScatteringSamples(k_grid=k, values=values)
