# 正问题模块：Jost 矩阵、散射函数、绕数
from .jost import JostMatrix, jost_matrix, jost_matrices, potential_interpolant
from .scattering import ScatteringSamples, scattering_function, symmetric_k_grid, check_k_grid
from .schrodinger import JostFunctionValue, schrodinger_jost, schrodinger_profile, jost_function
from .winding import WindingNumber, winding_number

__all__ = [
    "JostMatrix",
    "jost_matrix",
    "jost_matrices",
    "potential_interpolant",
    "ScatteringSamples",
    "scattering_function",
    "symmetric_k_grid",
    "check_k_grid",
    "JostFunctionValue",
    "schrodinger_jost",
    "schrodinger_profile",
    "jost_function",
    "WindingNumber",
    "winding_number",
]
