# 变换链模块：薛定谔问题 ↔ Dirac 系统 ↔ ZS-AKNS 问题
from .problems import (
    SchrodingerProblem,
    DiracSystem,
    ZsAknsProblem,
    U,
    SIGMA1,
    SIGMA2,
    SIGMA3,
    reduce_mod_pi,
    mod_pi_distance,
)
from .chain import phi_from_p, to_zsakns, quasi_derivative, chain_residual
from .profiles import build_profile, grid_from_dict, problem_from_dict, problem_to_dict

__all__ = [
    "SchrodingerProblem",
    "DiracSystem",
    "ZsAknsProblem",
    "U",
    "SIGMA1",
    "SIGMA2",
    "SIGMA3",
    "reduce_mod_pi",
    "mod_pi_distance",
    "phi_from_p",
    "to_zsakns",
    "quasi_derivative",
    "chain_residual",
    "build_profile",
    "grid_from_dict",
    "problem_from_dict",
    "problem_to_dict",
]
