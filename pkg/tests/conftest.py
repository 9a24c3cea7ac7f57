"""
测试公共夹具
测试统一使用缩小的网格，完整分辨率只在命令行上使用
"""

import math

import numpy as np
import pytest


def gaussian(x, amplitude, center, width):
    """a·exp(−(x−c)²/(2w²))"""
    return amplitude * np.exp(-0.5 * ((x - center) / width) ** 2)


@pytest.fixture
def small_settings():
    """往返测试用的缩小配置"""
    from src.config import Config

    return Config().updated({
        "grid": {"x_max": 8.0, "n_x": 1025},
        "spectral": {"k_max": 32.0, "n_k": 1024, "n_zeta": 1025},
        "inverse": {"n_recon": 257, "n_marchenko": 513},
    }).validate()


@pytest.fixture
def make_problem():
    """构造高斯 (u, p) 问题的工厂"""
    from src.numerics import UniformGrid, SampledFunction
    from src.transform import SchrodingerProblem

    def factory(alpha=0.0, x_max=8.0, n=1025, u_amp=0.3, p_amp=0.3, u_center=2.0, p_center=3.0, width=0.5):
        grid = UniformGrid(x_max, n)
        u = SampledFunction.from_function(grid, lambda x: gaussian(x, u_amp, u_center, width))
        p = SampledFunction.from_function(grid, lambda x: gaussian(x, p_amp, p_center, width))
        return SchrodingerProblem(u=u, p=p, alpha=alpha)

    return factory


@pytest.fixture
def zero_problem():
    """零势问题"""
    from src.numerics import UniformGrid, SampledFunction
    from src.transform import SchrodingerProblem

    def factory(alpha=0.3, x_max=4.0, n=129):
        grid = UniformGrid(x_max, n)
        return SchrodingerProblem(u=SampledFunction.zeros(grid), p=SampledFunction.zeros(grid), alpha=alpha)

    return factory


@pytest.fixture
def blaschke_samples():
    """S(k) = (1+2ik)/(1−2ik)，绕数为 1"""
    from src.direct import ScatteringSamples, symmetric_k_grid

    k = symmetric_k_grid(64.0, 4096)
    return ScatteringSamples(k_grid=k, values=(1 + 2j * k) / (1 - 2j * k))


HALF_PI = math.pi / 2
