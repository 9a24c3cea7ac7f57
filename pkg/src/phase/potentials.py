"""
势的恢复
u = −(Re v)·cos 2φ + (Im v)·sin 2φ，p = (Re v)·sin 2φ + (Im v)·cos 2φ，
α = (β − φ(0)) mod π
"""

from dataclasses import dataclass

import numpy as np

from ..numerics import SampledFunction
from ..transform.problems import SchrodingerProblem, reduce_mod_pi
from ..errors import InconsistencyError


@dataclass(frozen=True)
class RecoveredPotentials:
    u: SampledFunction
    p: SampledFunction
    alpha: float

    def as_problem(self) -> SchrodingerProblem:
        return SchrodingerProblem(u=self.u, p=self.p, alpha=self.alpha)


def recover_potentials(
    v: SampledFunction,
    phi: SampledFunction,
    beta: float,
    tolerance: float = 1e-10
) -> RecoveredPotentials:
    """
    由 (v, φ, β) 恢复 (u, p, α)，并逐点复核 v = (−u + ip)·e^{−2iφ}

    Raises:
        DomainError: 网格不一致
        InconsistencyError: 复核失败
    """
    v.grid.require_same(phi.grid)
    values = v.values.astype(complex)
    c = np.cos(2.0 * phi.values)
    s = np.sin(2.0 * phi.values)
    u = -values.real * c + values.imag * s
    p = values.real * s + values.imag * c

    check = np.max(np.abs((-u + 1j * p) * np.exp(-2j * phi.values) - values))
    if check > tolerance:
        raise InconsistencyError(f"势的复核失败: max|(−u+ip)e^{{−2iφ}} − v| = {check:.3e}")

    alpha = reduce_mod_pi(beta - float(phi.values[0]))
    return RecoveredPotentials(u=v.with_values(u), p=v.with_values(p), alpha=alpha)
