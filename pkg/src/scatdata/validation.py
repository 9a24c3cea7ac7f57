"""
类 𝒮 校验模块
判定条件：单位模、绕数为 0 且相位可分辨、外带已收敛；
两端极限差与 F 负半轴质量只报告不判定
"""

import math
from dataclasses import dataclass, asdict, field
from typing import Any, Dict, Optional, Tuple

import numpy as np

from .representation import FExtraction, GammaEstimate, extract_F, extract_gamma, outer_band
from ..config import Config, Tolerances, config as default_config
from ..direct.scattering import ScatteringSamples
from ..direct.winding import winding_number
from ..transform.problems import reduce_mod_pi
from ..errors import ClassSRejection, ScatteringError, TailNotSettledError, UnderResolvedError
from ..utils.logger import get_logger

logger = get_logger("scatdata")


@dataclass
class ClassSReport:
    """类 𝒮 校验报告"""
    n_nodes: int
    k_max: float
    max_unimodularity_deviation: float
    unimodular: bool
    winding: Optional[int] = None
    winding_raw: Optional[float] = None
    winding_resolved: bool = False
    winding_zero: bool = False
    limit_gap: Optional[float] = None
    limits_equal: Optional[bool] = None
    gamma: Optional[float] = None
    tail_spread: Optional[float] = None
    tails_settled: bool = False
    F_l1: Optional[float] = None
    F_l2: Optional[float] = None
    negative_mass: Optional[float] = None
    messages: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.unimodular and self.winding_resolved and self.winding_zero and self.tails_settled

    def failures(self) -> list:
        """未通过的判定条件"""
        failed = []
        if not self.unimodular:
            failed.append("unimodularity")
        if not self.winding_resolved:
            failed.append("winding_resolution")
        elif not self.winding_zero:
            failed.append("winding")
        if not self.tails_settled:
            failed.append("tails")
        return failed

    def to_dict(self) -> Dict[str, Any]:
        data = asdict(self)
        data["passed"] = self.passed
        data["failures"] = self.failures()
        # JSON 不接受 inf / nan
        for key, value in data.items():
            if isinstance(value, float) and not math.isfinite(value):
                data[key] = None
        return data


def validate_class_S(
    S: ScatteringSamples,
    tolerances: Optional[Tolerances] = None,
    zeta_max: Optional[float] = None,
    n_zeta: Optional[int] = None,
    band_fraction: float = 0.1,
    tail_correction: bool = True
) -> ClassSReport:
    """
    校验 S 是否属于类 𝒮，从不抛出异常

    Args:
        S: 散射函数采样
        tolerances: 容差，默认取全局配置
        zeta_max: F 窗口半宽，默认 2·x_max
        n_zeta: F 每侧节点数
        band_fraction: 外带比例
        tail_correction: F 提取时是否做尾项修正

    Returns:
        ClassSReport
    """
    report, _ = _validate(S, tolerances, zeta_max, n_zeta, band_fraction, tail_correction)
    return report


def _validate(
    S: ScatteringSamples,
    tolerances: Optional[Tolerances],
    zeta_max: Optional[float],
    n_zeta: Optional[int],
    band_fraction: float,
    tail_correction: bool
) -> Tuple[ClassSReport, Optional[FExtraction]]:
    """校验并返回顺带提取的 F"""
    tol = tolerances or default_config.tolerances
    zeta_max = zeta_max or 2.0 * default_config.grid.x_max
    n_zeta = n_zeta or default_config.spectral.n_zeta

    deviation = S.max_unimodularity_deviation
    report = ClassSReport(
        n_nodes=int(S.k_grid.size),
        k_max=float(S.k_grid[-1]),
        max_unimodularity_deviation=deviation,
        unimodular=bool(deviation <= tol.unimodularity),
    )
    if not report.unimodular:
        report.messages.append(f"max ||S|−1| = {deviation:.3e} 超过 {tol.unimodularity:.1e}")

    try:
        w = winding_number(S, max_step=tol.phase_step, limit_gap_tol=tol.limit_gap)
        report.winding = w.winding
        report.winding_raw = w.raw
        report.winding_resolved = True
        report.winding_zero = w.winding == 0
        report.limit_gap = w.limit_gap
        report.limits_equal = w.limits_equal
        if not report.winding_zero:
            report.messages.append(f"绕数 W = {w.winding}（原始值 {w.raw:.4f}）")
    except UnderResolvedError as e:
        report.messages.append(e.message)

    gamma_estimate: Optional[GammaEstimate] = None
    try:
        gamma_estimate = extract_gamma(S, band_fraction, tol.tail_spread)
        report.tails_settled = True
    except TailNotSettledError as e:
        report.messages.append(e.message)

    band = outer_band(S.k_grid, band_fraction) & S.finite
    if np.any(band):
        mean = np.mean(S.values[band])
        report.tail_spread = float(np.max(np.abs(S.values[band] - mean)))
        report.gamma = gamma_estimate.gamma if gamma_estimate else reduce_mod_pi(0.5 * float(np.angle(mean)))

    extraction: Optional[FExtraction] = None
    if report.gamma is not None:
        try:
            extraction = extract_F(
                S, report.gamma, zeta_max, n_zeta, tail_correction, band_fraction
            )
            report.F_l1 = extraction.F.norm_l1()
            report.F_l2 = extraction.F.norm_l2()
            report.negative_mass = extraction.negative_mass
        except ScatteringError as e:
            report.messages.append(f"F 提取失败: {e.message}")

    if report.passed:
        logger.info(f"类 𝒮 校验通过: γ={report.gamma:.6f}, ‖F‖₂={report.F_l2:.4e}")
    else:
        logger.warning(f"类 𝒮 校验未通过: {', '.join(report.failures())}")
    return report, extraction


@dataclass(frozen=True)
class ScatteringData:
    """散射数据：采样、γ、F 与校验报告"""
    samples: ScatteringSamples
    gamma: float
    F: FExtraction
    validation: ClassSReport

    @classmethod
    def from_samples(cls, S: ScatteringSamples, settings: Optional[Config] = None) -> "ScatteringData":
        """
        校验并提取表示数据

        Raises:
            ClassSRejection: 校验未通过，附带报告
        """
        settings = settings or default_config
        report, extraction = _validate(
            S,
            settings.tolerances,
            zeta_max=2.0 * settings.grid.x_max,
            n_zeta=settings.spectral.n_zeta,
            band_fraction=settings.inverse.band_fraction,
            tail_correction=settings.inverse.tail_correction,
        )
        if not report.passed or extraction is None:
            raise ClassSRejection(
                f"输入不属于类 𝒮: {', '.join(report.failures()) or 'F 提取失败'}", report
            )
        return cls(samples=S, gamma=report.gamma, F=extraction, validation=report)
