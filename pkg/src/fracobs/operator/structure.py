from dataclasses import dataclass

import numpy as np
from scipy.linalg import lu_factor, lu_solve

from ..errors import InvalidArgumentError


def _matrix_of(op):
    matrix = getattr(op, "matrix", op)
    matrix = np.asarray(matrix, dtype=float)
    if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1]:
        raise InvalidArgumentError("expected a square matrix")
    return matrix


@dataclass
class StructureReport:
    size: int
    max_offdiagonal: float
    min_diagonal: float
    min_dominance_gap: float
    tolerance: float
    passed: bool

    def to_dict(self):
        return {
            "size": self.size,
            "max_offdiagonal": self.max_offdiagonal,
            "min_diagonal": self.min_diagonal,
            "min_dominance_gap": self.min_dominance_gap,
            "tolerance": self.tolerance,
            "passed": self.passed,
        }


def verify_monotone_structure(op, tol=1e-10):
    """Check the strictly diagonally dominant M-matrix pattern.

    Off-diagonal entries may exceed zero by at most tol * max diagonal.
    """
    matrix = _matrix_of(op)
    diagonal = np.diag(matrix)
    off = matrix - np.diag(diagonal)
    n = matrix.shape[0]

    max_off = float(off.max()) if n > 1 else 0.0
    min_diag = float(diagonal.min())
    gap = diagonal - np.abs(off).sum(axis=1)
    min_gap = float(gap.min())
    scale = max(float(np.abs(diagonal).max()), 1.0) if n else 1.0

    passed = max_off <= tol * scale and min_diag > 0.0 and min_gap > 0.0
    return StructureReport(
        size=n,
        max_offdiagonal=max_off,
        min_diagonal=min_diag,
        min_dominance_gap=min_gap,
        tolerance=tol,
        passed=bool(passed),
    )


@dataclass
class BarrierReport:
    row_sums: np.ndarray
    scaled: np.ndarray
    min_scaled: float
    passed: bool

    def to_dict(self):
        return {
            "min_row_sum": float(self.row_sums.min()),
            "max_row_sum": float(self.row_sums.max()),
            "min_scaled": self.min_scaled,
            "passed": self.passed,
        }


def barrier_report(op):
    """Apply the operator to the discrete barrier b_h = 1 and rescale by delta^{2s}."""
    row_sums = op.row_sums
    scaled = row_sums * op.metrics.delta ** (2.0 * op.order.s)
    min_scaled = float(scaled.min())
    return BarrierReport(
        row_sums=row_sums,
        scaled=scaled,
        min_scaled=min_scaled,
        passed=bool(row_sums.min() > 0.0 and min_scaled > 0.0),
    )


@dataclass
class ComparisonTrial:
    subset_size: int
    structure_passed: bool
    min_solution: float
    passed: bool

    def to_dict(self):
        return {
            "subset_size": self.subset_size,
            "structure_passed": self.structure_passed,
            "min_solution": self.min_solution,
            "passed": self.passed,
        }


def check_enhanced_comparison(op, subset, rhs, tol=1e-10):
    """Principal submatrix L_11 on `subset` stays an M-matrix and L_11 z = r >= 0 gives z >= 0."""
    matrix = _matrix_of(op)
    subset = np.asarray(sorted(subset), dtype=int)
    rhs = np.asarray(rhs, dtype=float)
    if subset.size == 0:
        raise InvalidArgumentError("subset must be non-empty")
    if rhs.shape != subset.shape:
        raise InvalidArgumentError("right-hand side must match the subset size")
    if np.any(rhs < 0):
        raise InvalidArgumentError("right-hand side must be nonnegative")

    block = matrix[np.ix_(subset, subset)]
    structure = verify_monotone_structure(block, tol=tol)
    z = lu_solve(lu_factor(block), rhs)
    scale = max(float(np.abs(z).max()), 1.0)
    min_z = float(z.min())
    return ComparisonTrial(
        subset_size=int(subset.size),
        structure_passed=structure.passed,
        min_solution=min_z,
        passed=bool(structure.passed and min_z >= -tol * scale),
    )


def random_comparison_trials(op, trials, seed=0, tol=1e-10):
    rng = np.random.default_rng(seed)
    n = op.size
    results = []
    for _ in range(trials):
        mask = rng.random(n) < rng.uniform(0.2, 0.9)
        if not mask.any():
            mask[rng.integers(n)] = True
        subset = np.flatnonzero(mask)
        rhs = rng.random(subset.size)
        results.append(check_enhanced_comparison(op, subset, rhs, tol=tol))
    return results
