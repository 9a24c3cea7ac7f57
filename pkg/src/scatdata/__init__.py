# 散射数据模块：类 𝒮 校验，γ 与 F 的提取
from .representation import (
    GammaEstimate,
    FExtraction,
    extract_gamma,
    extract_F,
    fit_tail,
    outer_band,
    synthesize_S,
)
from .validation import ClassSReport, ScatteringData, validate_class_S

__all__ = [
    "GammaEstimate",
    "FExtraction",
    "extract_gamma",
    "extract_F",
    "fit_tail",
    "outer_band",
    "synthesize_S",
    "ClassSReport",
    "ScatteringData",
    "validate_class_S",
]
