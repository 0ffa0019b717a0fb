import math
from dataclasses import dataclass, field

from ..errors import InvalidArgumentError
from ..logging import get_live_logger
from ..mesh import build_graded_mesh, graded_exponent
from .experiments import DOMAIN, experiment3_instance, solve_instance

# (target interior nodes, iterations) on graded meshes, experiment 3
REFERENCE_ITERATIONS = {
    0.3: [(126, 4), (254, 5), (510, 5), (1022, 6)],
    0.6: [(118, 5), (237, 6), (476, 7), (953, 8)],
    0.9: [(77, 6), (155, 7), (311, 9), (623, 11)],
}


def nearest_graded_elements(target_size):
    """Even element count whose interior node count M - 1 is closest to target_size."""
    if target_size < 3:
        raise InvalidArgumentError(f"target size must be >= 3, got {target_size}")
    return max(4, 2 * math.floor((target_size + 1) / 2 + 0.5))


@dataclass
class TableRow:
    s: float
    target: int
    elements: int
    size: int
    iterations: int
    reference: int
    converged: bool

    def to_dict(self):
        return {
            "s": self.s,
            "target": self.target,
            "elements": self.elements,
            "size": self.size,
            "iterations": self.iterations,
            "reference": self.reference,
            "converged": self.converged,
        }


@dataclass
class IterationTable:
    spec: object
    rows: list = field(default_factory=list)

    @property
    def converged(self):
        return all(row.converged for row in self.rows)

    def by_order(self):
        table = {}
        for row in self.rows:
            table.setdefault(row.s, []).append(row)
        return table

    def to_dict(self):
        return {
            "spec": self.spec.to_dict(),
            "rows": [row.to_dict() for row in self.rows],
            "converged": self.converged,
        }


def run_iteration_table(spec, orders=None, tiers=None):
    """Improved policy iteration counts for experiment 3 on graded meshes.

    Each order uses mu = (2 - s)/s; `tiers` selects reference columns.
    """
    if spec.experiment != "exp3":
        raise InvalidArgumentError(f"iteration tables use exp3, got '{spec.experiment}'")
    if spec.solver != "improved":
        raise InvalidArgumentError(f"iteration tables need the improved solver, got '{spec.solver}'")

    orders = sorted(REFERENCE_ITERATIONS) if orders is None else list(orders)
    logger = get_live_logger()
    table = IterationTable(spec=spec)

    for s in orders:
        if s not in REFERENCE_ITERATIONS:
            raise InvalidArgumentError(f"no reference row for s = {s}")
        reference = REFERENCE_ITERATIONS[s]
        columns = range(len(reference)) if tiers is None else tiers
        for tier in columns:
            target, expected = reference[tier]
            M = nearest_graded_elements(target)
            mesh = build_graded_mesh(DOMAIN[0], DOMAIN[1], M, graded_exponent(s))
            inst = experiment3_instance(mesh, s)
            result = solve_instance(spec, mesh, inst)
            row = TableRow(
                s=s,
                target=target,
                elements=M,
                size=mesh.num_interior,
                iterations=result.iterations,
                reference=expected,
                converged=result.converged,
            )
            table.rows.append(row)
            logger.log_table_row(s, target, row.size, row.iterations, expected)

    return table
