from dataclasses import dataclass

import numpy as np

from ..errors import InvalidArgumentError


def check_dimensions(op, inst, u=None):
    if op.size != inst.size:
        raise InvalidArgumentError(
            f"operator has {op.size} rows but the instance has {inst.size} nodes"
        )
    if u is None:
        return None
    u = np.asarray(u, dtype=float)
    if u.shape != (inst.size,):
        raise InvalidArgumentError(f"expected {inst.size} nodal values, got shape {u.shape}")
    return u


def default_update_tol(inst):
    return 1e-10 * (1.0 + float(np.abs(inst.psi).max()))


def default_sweep_tol(inst):
    return 1e-13 * (1.0 + float(np.abs(inst.psi).max()))


def default_complementarity_tol(inst):
    return 1e-9 * (1.0 + float(np.abs(inst.f).max()))


def split_residuals(op, inst, u):
    """(L u - f, u - psi) at every interior node."""
    u = check_dimensions(op, inst, u)
    return op.apply(u) - inst.f, u - inst.psi


def evaluate_Gh(op, inst, u):
    pde, obstacle = split_residuals(op, inst, u)
    return np.minimum(pde, obstacle)


def contact_rule(op, inst, u):
    """Nodes where L u - f >= u - psi; ties go to the contact set."""
    pde, obstacle = split_residuals(op, inst, u)
    return np.flatnonzero(pde >= obstacle)


@dataclass
class ComplementarityReport:
    passed: bool
    max_residual: float
    worst_node: int
    min_obstacle_gap: float
    min_pde_gap: float
    tolerance: float

    def to_dict(self):
        return {
            "passed": self.passed,
            "max_residual": self.max_residual,
            "worst_node": self.worst_node,
            "min_obstacle_gap": self.min_obstacle_gap,
            "min_pde_gap": self.min_pde_gap,
            "tolerance": self.tolerance,
        }


def check_complementarity(op, inst, u, tol=None):
    if tol is None:
        tol = default_complementarity_tol(inst)
    pde, obstacle = split_residuals(op, inst, u)
    residual = np.abs(np.minimum(pde, obstacle))
    worst = int(np.argmax(residual))
    max_residual = float(residual[worst])
    min_obstacle = float(obstacle.min())
    min_pde = float(pde.min())
    passed = max_residual <= tol and min_obstacle >= -tol and min_pde >= -tol
    return ComplementarityReport(
        passed=bool(passed),
        max_residual=max_residual,
        worst_node=worst,
        min_obstacle_gap=min_obstacle,
        min_pde_gap=min_pde,
        tolerance=float(tol),
    )
