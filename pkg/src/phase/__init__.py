# 相位模块：压缩映射求 φ、势的恢复、反问题流水线
from .contraction import (
    PhaseTail,
    PhaseSolution,
    find_x0,
    fixed_point_phi,
    extend_phi,
    ode_residual,
    solve_phase,
)
from .potentials import RecoveredPotentials, recover_potentials
from .pipeline import (
    InverseScatterer,
    ReconstructionDiagnostics,
    ReconstructionResult,
    inverse_scatter,
    reconstruction_errors,
)

__all__ = [
    "PhaseTail",
    "PhaseSolution",
    "find_x0",
    "fixed_point_phi",
    "extend_phi",
    "ode_residual",
    "solve_phase",
    "RecoveredPotentials",
    "recover_potentials",
    "InverseScatterer",
    "ReconstructionDiagnostics",
    "ReconstructionResult",
    "inverse_scatter",
    "reconstruction_errors",
]
