from dataclasses import dataclass, field

import numpy as np

from ..errors import InvalidArgumentError
from ..logging import get_live_logger
from .experiments import build_instance, solve_instance

EXACT_EXPERIMENTS = ("exp1", "linear")


def _positive_pairs(errors, hs):
    errors = np.asarray(errors, dtype=float)
    hs = np.asarray(hs, dtype=float)
    if errors.shape != hs.shape or errors.ndim != 1 or errors.size < 2:
        raise InvalidArgumentError("need at least two (error, h) pairs of equal length")
    if np.any(errors <= 0) or np.any(hs <= 0):
        raise InvalidArgumentError("errors and mesh sizes must be positive")
    return errors, hs


def estimate_rate(errors, hs):
    """Least-squares slope of log(error) against log(h)."""
    errors, hs = _positive_pairs(errors, hs)
    slope, _ = np.polyfit(np.log(hs), np.log(errors), 1)
    return float(slope)


def pairwise_rates(errors, hs):
    errors, hs = _positive_pairs(errors, hs)
    return (np.log(errors[:-1] / errors[1:]) / np.log(hs[:-1] / hs[1:])).tolist()


@dataclass
class ConvergenceRow:
    elements: int
    size: int
    h: float
    error: float
    iterations: int
    converged: bool

    def to_dict(self):
        return {
            "elements": self.elements,
            "size": self.size,
            "h": self.h,
            "error": self.error,
            "iterations": self.iterations,
            "converged": self.converged,
        }


@dataclass
class ConvergenceReport:
    spec: object
    rows: list = field(default_factory=list)
    rate: float = float("nan")
    pairwise: list = field(default_factory=list)

    @property
    def errors(self):
        return [row.error for row in self.rows]

    @property
    def hs(self):
        return [row.h for row in self.rows]

    @property
    def converged(self):
        return all(row.converged for row in self.rows)

    def to_dict(self):
        return {
            "spec": self.spec.to_dict(),
            "rows": [row.to_dict() for row in self.rows],
            "rate": self.rate,
            "pairwise_rates": self.pairwise,
            "converged": self.converged,
        }


def run_convergence(spec, observer=None):
    """Nodal max-error study against the exact solution, coarse to fine."""
    if spec.experiment not in EXACT_EXPERIMENTS:
        raise InvalidArgumentError(
            f"convergence studies need an exact solution; '{spec.experiment}' has none"
        )
    if len(spec.element_counts) < 2:
        raise InvalidArgumentError("convergence studies need at least two element counts")

    logger = get_live_logger()
    report = ConvergenceReport(spec=spec)
    for M in sorted(spec.element_counts):
        mesh = spec.build_mesh(M)
        inst, exact = build_instance(spec.experiment, mesh, spec.s)
        result = solve_instance(spec, mesh, inst, observer=observer)
        row = ConvergenceRow(
            elements=M,
            size=mesh.num_interior,
            h=mesh.grid_parameter,
            error=float(np.abs(result.u - exact).max()),
            iterations=result.iterations,
            converged=result.converged,
        )
        report.rows.append(row)
        logger.log_convergence_row(row.elements, row.size, row.h, row.error, row.iterations)

    report.rate = estimate_rate(report.errors, report.hs)
    report.pairwise = pairwise_rates(report.errors, report.hs)
    logger.log_rate(f"{spec.experiment} s={spec.s} {spec.mesh_family} fitted rate", report.rate)
    return report
