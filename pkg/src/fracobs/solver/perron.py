import numpy as np

from ..errors import InvalidArgumentError, InvalidInstanceError
from ..logging import get_live_logger
from .instance import IterationRecord, SolverResult
from .policy import notify_observer
from .residuals import check_dimensions, contact_rule, default_sweep_tol

MAX_DOUBLINGS = 60


def supersolution_level(op, inst):
    """Smallest E = max(|psi|_inf, 1) * 2^k with min(E L1 - f, E - psi) >= 0."""
    row_sums = op.row_sums
    E = max(float(np.abs(inst.psi).max()), 1.0)
    for _ in range(MAX_DOUBLINGS + 1):
        if np.all(E * row_sums - inst.f >= 0.0) and np.all(E >= inst.psi):
            return E
        E *= 2.0
    raise InvalidInstanceError(
        f"no constant supersolution found after {MAX_DOUBLINGS} doublings"
    )


def perron_solve(op, inst, tol=None, max_sweeps=200000, observer=None, record_iterates=False):
    """Monotone descent from the supersolution E * 1.

    Gauss-Seidel sweeps in ascending node order; node i moves to
    max(psi_i, (f_i - sum_{j != i} L_ij u_j) / L_ii), never upward.
    """
    check_dimensions(op, inst)
    if max_sweeps < 1:
        raise InvalidArgumentError(f"max_sweeps must be >= 1, got {max_sweeps}")
    tol = default_sweep_tol(inst) if tol is None else tol

    E = supersolution_level(op, inst)
    L = op.matrix
    columns = np.ascontiguousarray(L.T)
    diagonal = np.diag(L).copy()
    f, psi = inst.f, inst.psi
    N = inst.size

    u = np.full(N, E)
    trace = []
    converged = False

    for sweep in range(1, max_sweeps + 1):
        r = L @ u
        max_update = 0.0
        for i in range(N):
            target = max(psi[i], u[i] - (r[i] - f[i]) / diagonal[i])
            step = min(target, u[i]) - u[i]
            if step < 0.0:
                r += step * columns[i]
                u[i] += step
                max_update = max(max_update, -step)

        residual = float(np.abs(np.minimum(r - f, u - psi)).max())
        contact = np.flatnonzero(u == psi)
        record = IterationRecord(
            iteration=sweep,
            contact_size=int(contact.size),
            max_update=max_update,
            residual=residual,
            contact=contact if record_iterates else None,
            iterate=u.copy() if record_iterates else None,
        )
        trace.append(record)
        notify_observer(observer, record, "perron")

        if max_update <= tol:
            converged = True
            break

    result = SolverResult(
        solver="perron",
        u=u,
        contact=contact_rule(op, inst, u),
        operator=op,
        instance=inst,
        trace=trace,
        iterations=len(trace),
        converged=converged,
        supersolution_level=E,
    )
    get_live_logger().log_solver_end("perron", result.iterations, converged, result.final_residual)
    return result
