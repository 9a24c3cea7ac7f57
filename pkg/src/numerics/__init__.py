# 数值基础模块：网格、求积、稠密求解、Fourier 积分
from .grid import UniformGrid, SampledFunction
from .quadrature import integrate, tail_integral, derivative, TailIntegral
from .linalg import solve_dense, DenseSolution, DenseFactorization
from .fourier import fourier_integral, FourierIntegral

__all__ = [
    "UniformGrid",
    "SampledFunction",
    "integrate",
    "tail_integral",
    "derivative",
    "TailIntegral",
    "solve_dense",
    "DenseSolution",
    "DenseFactorization",
    "fourier_integral",
    "FourierIntegral",
]
