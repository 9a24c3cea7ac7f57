"""
反问题流水线
校验 → γ → β = (γ − π/2) mod π → F → Ω → v → φ → (u, p, α)

Marchenko 核由 −S 的表示构造：−S = e^{2iβ} + ∫(−F)·e^{2ikζ}，
由此 v = −Γ₁₂(x,0) 与正问题的约定一致
"""

import math
from dataclasses import dataclass
from typing import Any, Dict, Optional, Union

import numpy as np

from .contraction import PhaseSolution, solve_phase
from .potentials import recover_potentials
from ..config import Config, config as default_config
from ..direct.scattering import ScatteringSamples
from ..marchenko import VExtraction, build_omega, extract_v
from ..numerics import SampledFunction, UniformGrid
from ..scatdata import ClassSReport, ScatteringData
from ..transform.problems import SchrodingerProblem, mod_pi_distance, reduce_mod_pi
from ..errors import ClassSRejection, ScatteringError
from ..utils.logger import get_logger

logger = get_logger("phase")


@dataclass(frozen=True)
class ReconstructionDiagnostics:
    """反问题各阶段的诊断量"""
    gamma: float
    beta: float
    marchenko_residual_max: float
    marchenko_pair_error_max: float
    marchenko_truncation: float
    ode_residual_max: float
    F_truncation_bound: float
    F_negative_mass: float
    tail_coefficients: tuple
    validation: ClassSReport

    def to_dict(self) -> Dict[str, Any]:
        a1, a2 = self.tail_coefficients
        return {
            "gamma": self.gamma,
            "beta": self.beta,
            "marchenko_residual_max": self.marchenko_residual_max,
            "marchenko_pair_error_max": self.marchenko_pair_error_max,
            "marchenko_truncation": self.marchenko_truncation,
            "ode_residual_max": self.ode_residual_max,
            "F_truncation_bound": self.F_truncation_bound,
            "F_negative_mass": self.F_negative_mass,
            "tail_coefficients": [[a1.real, a1.imag], [a2.real, a2.imag]],
        }


@dataclass(frozen=True)
class ReconstructionResult:
    """反问题结果"""
    v: SampledFunction
    phase: PhaseSolution
    u: SampledFunction
    p: SampledFunction
    alpha: float
    diagnostics: ReconstructionDiagnostics

    @property
    def phi(self) -> SampledFunction:
        return self.phase.phi

    @property
    def p0_estimate(self) -> float:
        return float(self.phase.phi.values[0])

    def as_problem(self) -> SchrodingerProblem:
        return SchrodingerProblem(u=self.u, p=self.p, alpha=self.alpha)

    def metadata(self) -> Dict[str, Any]:
        """元数据 JSON 内容"""
        diagnostics = self.diagnostics.to_dict()
        return {
            "alpha": self.alpha,
            "beta": diagnostics.pop("beta"),
            "gamma": diagnostics.pop("gamma"),
            "p0_estimate": self.p0_estimate,
            "residuals": diagnostics,
            "iterations": self.phase.iterations,
            "x0": self.phase.x0,
            "contraction_ratios": list(self.phase.contraction_ratios),
            "validation_report": self.diagnostics.validation.to_dict(),
        }


class InverseScatterer:
    """
    反问题流水线，构造后不可变

    用法：
        scatterer = InverseScatterer(settings)
        result = scatterer.run(samples)
    """

    def __init__(self, settings: Optional[Config] = None):
        self._settings = (settings or default_config).validate()

    @property
    def settings(self) -> Config:
        return self._settings

    @property
    def reconstruction_grid(self) -> UniformGrid:
        return UniformGrid(self._settings.grid.x_max, self._settings.inverse.n_recon)

    def _stage(self, name: str, fn, *args, **kwargs):
        """执行一个阶段，异常补充阶段标签后继续抛出"""
        logger.info(f"阶段 {name} 开始")
        try:
            return fn(*args, **kwargs)
        except ScatteringError as e:
            raise e.with_stage(name)

    def run(self, S: Union[ScatteringSamples, ScatteringData]) -> ReconstructionResult:
        """
        执行完整的反问题

        Args:
            S: 散射函数采样或已校验的散射数据

        Returns:
            ReconstructionResult

        Raises:
            ClassSRejection: 输入不属于类 𝒮
            ScatteringError: 各阶段错误，带阶段标签
        """
        settings = self._settings
        tol = settings.tolerances
        inv = settings.inverse

        if isinstance(S, ScatteringData):
            data = S
            if not data.validation.passed:
                raise ClassSRejection("输入不属于类 𝒮", data.validation)
        else:
            data = self._stage("validate", ScatteringData.from_samples, S, settings)

        gamma = data.gamma
        beta = reduce_mod_pi(gamma - math.pi / 2)
        logger.info(f"γ={gamma:.8f}, β={beta:.8f}")

        kernel_F = data.F.F.with_values(-data.F.F.values)
        kern = build_omega(kernel_F)
        grid = self.reconstruction_grid
        extraction: VExtraction = self._stage(
            "marchenko",
            extract_v,
            kern,
            grid,
            length=inv.marchenko_length_factor * settings.grid.x_max,
            n_nodes=inv.n_marchenko,
            method=inv.v_extraction,
            tolerance=tol.marchenko_residual,
            pair_tolerance=tol.conjugate_pair,
        )

        phase: PhaseSolution = self._stage(
            "phase",
            solve_phase,
            extraction.v,
            inv.contraction_threshold,
            tol.fixed_point,
            tol.max_iterations,
        )
        recovered = self._stage(
            "recover", recover_potentials, extraction.v, phase.phi, beta, tol.algebraic
        )

        diagnostics = ReconstructionDiagnostics(
            gamma=gamma,
            beta=beta,
            marchenko_residual_max=extraction.max_residual,
            marchenko_pair_error_max=float(np.max(extraction.pair_errors)),
            marchenko_truncation=extraction.truncation_estimate,
            ode_residual_max=phase.ode_residual,
            F_truncation_bound=data.F.truncation_bound,
            F_negative_mass=data.F.negative_mass,
            tail_coefficients=data.F.tail_coefficients,
            validation=data.validation,
        )
        logger.info(f"反问题完成: α={recovered.alpha:.8f}, 迭代 {phase.iterations} 次")
        return ReconstructionResult(
            v=extraction.v,
            phase=phase,
            u=recovered.u,
            p=recovered.p,
            alpha=recovered.alpha,
            diagnostics=diagnostics,
        )


def inverse_scatter(
    S: Union[ScatteringSamples, ScatteringData],
    settings: Optional[Config] = None
) -> ReconstructionResult:
    """InverseScatterer(settings).run(S)"""
    return InverseScatterer(settings).run(S)


def _relative_l2(reference: np.ndarray, value: np.ndarray, weights: np.ndarray) -> float:
    diff = float(np.sqrt(np.sum(weights * np.abs(value - reference) ** 2)))
    norm = float(np.sqrt(np.sum(weights * np.abs(reference) ** 2)))
    return diff / norm if norm > 0 else diff


def reconstruction_errors(reference: SchrodingerProblem, result: ReconstructionResult) -> Dict[str, float]:
    """
    重构结果与原问题的误差：u、p 的相对 L² 误差（原问题插值到重构网格）与 |Δα| mod π

    原问题为零势时给出绝对 L² 误差
    """
    grid = result.u.grid
    weights = grid.trapezoid_weights()
    x = grid.nodes
    u_ref = np.interp(x, reference.grid.nodes, reference.u.values)
    p_ref = np.interp(x, reference.grid.nodes, reference.p.values)
    return {
        "u_relative_l2": _relative_l2(u_ref, result.u.values, weights),
        "p_relative_l2": _relative_l2(p_ref, result.p.values, weights),
        "alpha_error": mod_pi_distance(result.alpha, reference.alpha),
    }
