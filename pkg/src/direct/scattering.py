"""
散射函数模块
S(k) = −(e^{iβ}ψ₁₁ + e^{−iβ}ψ₂₁) / (e^{−iβ}·conj ψ₁₁ + e^{iβ}·conj ψ₂₁)，ψ = Ψ(0,k)
"""

from dataclasses import dataclass, field
from typing import Optional, Tuple

import numpy as np

from .jost import jost_matrices
from .schrodinger import jost_function_values
from ..transform.problems import ZsAknsProblem
from ..errors import DataFormatError, DomainError
from ..utils.logger import get_logger

logger = get_logger("direct")

# 分母模长低于此值的节点被屏蔽
DENOMINATOR_TOL = 1e-12


def symmetric_k_grid(k_max: float, n_k: int) -> np.ndarray:
    """
    对称 k 网格 ±(j+½)Δk，Δk = 2k_max/n_k，不含 0

    Args:
        k_max: 半宽
        n_k: 节点数（偶数）

    Returns:
        严格递增的 k 节点
    """
    if not k_max > 0:
        raise DomainError(f"k_max 必须为正: {k_max}")
    if n_k < 2 or n_k % 2:
        raise DomainError(f"n_k 必须为不小于 2 的偶数: {n_k}")
    dk = 2.0 * k_max / n_k
    half = (np.arange(n_k // 2) + 0.5) * dk
    return np.concatenate([-half[::-1], half])


def check_k_grid(k: np.ndarray, error=DomainError) -> None:
    """检查 k 网格：严格递增、关于 0 对称、不含 0"""
    if k.ndim != 1 or k.size < 2:
        raise error("k 网格至少需要两个节点")
    if not np.all(np.isfinite(k)):
        raise error("k 网格含非有限值")
    if np.any(np.diff(k) <= 0):
        raise error("k 网格必须严格递增")
    scale = float(np.max(np.abs(k)))
    if not np.allclose(k, -k[::-1], rtol=0.0, atol=1e-9 * scale):
        raise error("k 网格必须关于 0 对称")
    if np.any(k == 0):
        raise error("k 网格不能包含 0")


@dataclass(frozen=True)
class ScatteringSamples:
    """
    对称 k 网格上的散射函数采样

    由正问题计算时同时记录 β、分母模长与比值 s/conj(s)；
    外部读入的数据只有 k 与 S。被屏蔽的节点值为 NaN。
    """
    k_grid: np.ndarray
    values: np.ndarray
    beta_used: Optional[float] = None
    denominators: Optional[np.ndarray] = None
    ratio_s: Optional[np.ndarray] = None
    masked: Tuple[int, ...] = field(default_factory=tuple)

    def __post_init__(self):
        k = np.array(self.k_grid, dtype=float)
        values = np.array(self.values, dtype=complex)
        check_k_grid(k)
        if values.shape != k.shape:
            raise DomainError(f"S 的长度 {values.shape} 与 k 网格 {k.shape} 不一致")
        k.setflags(write=False)
        values.setflags(write=False)
        object.__setattr__(self, "k_grid", k)
        object.__setattr__(self, "values", values)

    @classmethod
    def from_arrays(cls, k: np.ndarray, re_s: np.ndarray, im_s: np.ndarray) -> "ScatteringSamples":
        """
        由外部数据构造（CSV 读入）

        Raises:
            DataFormatError: k 网格或数值不合法
        """
        k = np.asarray(k, dtype=float)
        values = np.asarray(re_s, dtype=float) + 1j * np.asarray(im_s, dtype=float)
        check_k_grid(k, error=DataFormatError)
        if values.shape != k.shape:
            raise DataFormatError("k 与 S 列长度不一致")
        if not np.all(np.isfinite(values)):
            raise DataFormatError("S 含非有限值")
        return cls(k_grid=k, values=values)

    @property
    def finite(self) -> np.ndarray:
        """未被屏蔽的节点"""
        return np.isfinite(self.values)

    @property
    def max_unimodularity_deviation(self) -> float:
        """max ||S| − 1|（忽略屏蔽节点）"""
        ok = self.finite
        if not np.any(ok):
            return float("inf")
        return float(np.max(np.abs(np.abs(self.values[ok]) - 1.0)))

    @property
    def ratio_gap(self) -> Optional[float]:
        """max |s/conj(s) + S|，s 为薛定谔途径的 Jost 函数；外部数据为 None"""
        if self.ratio_s is None:
            return None
        ok = self.finite & np.isfinite(self.ratio_s)
        if not np.any(ok):
            return None
        return float(np.max(np.abs(self.ratio_s[ok] + self.values[ok])))


def scattering_function(
    zp: ZsAknsProblem,
    k_grid: np.ndarray,
    denominator_tol: float = DENOMINATOR_TOL
) -> ScatteringSamples:
    """
    正问题：在 k 网格上计算散射函数

    Args:
        zp: ZS-AKNS 问题
        k_grid: 对称、不含 0 的 k 网格
        denominator_tol: 分母模长下限

    Returns:
        ScatteringSamples
    """
    k = np.asarray(k_grid, dtype=float)
    check_k_grid(k)
    logger.info(f"计算散射函数: {k.size} 个频率, k_max={k[-1]:.3f}, β={zp.beta:.6f}")

    psi0, _ = jost_matrices(zp, k)
    psi11 = psi0[:, 0, 0]
    psi21 = psi0[:, 1, 0]
    eb = np.exp(1j * zp.beta)

    numerator = eb * psi11 + np.conj(eb) * psi21
    denominator = np.conj(eb) * np.conj(psi11) + eb * np.conj(psi21)
    magnitude = np.abs(denominator)
    bad = magnitude < denominator_tol

    values = np.full(k.shape, np.nan + 0j)
    values[~bad] = -numerator[~bad] / denominator[~bad]
    masked = tuple(int(i) for i in np.flatnonzero(bad))
    if masked:
        logger.error(f"{len(masked)} 个节点分母过小被屏蔽，首个 k={k[masked[0]]:.4f}")

    # s/conj(s) 只作诊断，经 f(0,k)、f^{[1]}(0,k) 独立计算，应与 −S 一致
    s = jost_function_values(psi0, k, zp.beta - zp.p0, zp.p0)
    s_abs = np.abs(s)
    ratio = np.full(k.shape, np.nan + 0j)
    ok = s_abs >= denominator_tol * np.maximum(1.0, np.abs(k))
    ratio[ok] = s[ok] / np.conj(s[ok])

    samples = ScatteringSamples(
        k_grid=k,
        values=values,
        beta_used=zp.beta,
        denominators=magnitude,
        ratio_s=ratio,
        masked=masked,
    )
    gap = samples.ratio_gap
    if gap is not None:
        logger.debug(f"s/conj(s) 与 −S 的最大偏差 {gap:.3e}")
    return samples
