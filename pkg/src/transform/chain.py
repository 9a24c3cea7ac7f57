"""
变换链模块
薛定谔问题 → Dirac 系统 → ZS-AKNS 问题：
y = U·e^{iφσ₃}·w，φ(x) = ∫ₓ^∞ p，v = (−u + ip)·e^{−2iφ}，β = (α + p₀) mod π
"""

import numpy as np

from .problems import SchrodingerProblem, ZsAknsProblem, reduce_mod_pi
from ..numerics import SampledFunction, derivative, tail_integral
from ..utils.logger import get_logger

logger = get_logger("transform")


def phi_from_p(p: SampledFunction, tolerance_ratio: float = 1e-8) -> SampledFunction:
    """
    相位 φ(x) = ∫ₓ^{x_max} p

    Args:
        p: 能量线性势
        tolerance_ratio: 尾部质量容差（相对 ‖p‖₁）

    Returns:
        φ 的采样函数，φ(x_max) = 0
    """
    return tail_integral(p, tolerance_ratio).function


def to_zsakns(sp: SchrodingerProblem, tolerance_ratio: float = 1e-8) -> ZsAknsProblem:
    """
    把能量依赖薛定谔问题变换为典范 ZS-AKNS 问题

    Args:
        sp: 薛定谔问题
        tolerance_ratio: 尾部质量容差

    Returns:
        ZsAknsProblem，附带 φ 与 p₀ = φ(0)
    """
    scale = sp.u.norm_l1() + sp.p.norm_l1()
    if sp.tail_mass > tolerance_ratio * scale:
        logger.warning(
            f"势在网格末端尚未衰减: 尾部质量 {sp.tail_mass:.3e}，x_max={sp.grid.x_max}"
        )

    phi = phi_from_p(sp.p, tolerance_ratio)
    p0 = float(phi.values[0])
    v = (-sp.u.values + 1j * sp.p.values) * np.exp(-2j * phi.values)
    beta = reduce_mod_pi(sp.alpha + p0)
    logger.debug(f"ZS-AKNS 变换完成: p₀={p0:.6f}, β={beta:.6f}")
    return ZsAknsProblem(v=sp.u.with_values(v), beta=beta, p0=p0, phi=phi)


def quasi_derivative(y: SampledFunction, u: SampledFunction) -> SampledFunction:
    """
    拟导数 y^{[1]} = y' − u·y

    Args:
        y: 采样函数
        u: Riccati 表示

    Returns:
        y^{[1]} 的采样函数
    """
    y.grid.require_same(u.grid)
    return y.with_values(derivative(y).values - u.values * y.values)


def chain_residual(sp: SchrodingerProblem, k: float) -> float:
    """
    Dirac 方程 σ₂y' + Py − ky 在内部节点上的最大残差

    y = (f^{[1]}/k, f) 取自 schrodinger_profile。去掉载波 e^{ikx} 后
    对 ỹ = e^{−ikx}y 做中心差分，y' = e^{ikx}(ikỹ + ỹ')，零势时残差为零。

    Args:
        sp: 薛定谔问题
        k: 非零谱参数

    Returns:
        最大残差（随网格加密按 O(h²) 下降）

    Raises:
        DomainError: k = 0
    """
    # 延迟导入，direct 依赖本包的问题类型
    from ..direct.schrodinger import schrodinger_profile

    f, f_quasi = schrodinger_profile(sp, k)
    carrier = np.exp(-1j * k * sp.grid.nodes)
    y = np.stack([carrier * f_quasi.values / k, carrier * f.values], axis=1)
    dy = derivative(sp.u.with_values(y)).values + 1j * k * y

    u = sp.u.values
    p = sp.p.values
    # σ₂ = [[0, 1], [−1, 0]]，P = [[0, −u], [−u, 2p]]
    r1 = dy[:, 1] - u * y[:, 1] - k * y[:, 0]
    r2 = -dy[:, 0] - u * y[:, 0] + 2.0 * p * y[:, 1] - k * y[:, 1]
    residual = np.maximum(np.abs(r1), np.abs(r2))[1:-1]
    return float(np.max(residual)) if residual.size else 0.0
