# Marchenko 模块：核 Ω、Nyström 求解、v 的提取
from .solver import (
    MarchenkoKernel,
    MarchenkoSolution,
    NystromSystem,
    VExtraction,
    build_omega,
    solve_marchenko,
    extract_v,
)

__all__ = [
    "MarchenkoKernel",
    "MarchenkoSolution",
    "NystromSystem",
    "VExtraction",
    "build_omega",
    "solve_marchenko",
    "extract_v",
]
