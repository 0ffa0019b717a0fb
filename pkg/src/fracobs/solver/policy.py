import numpy as np

from ..errors import InvalidArgumentError
from ..logging import get_live_logger
from ..mesh import node_metrics
from ..operator import assemble_operator, improved_scales
from .instance import IterationRecord, SolverResult
from .linear import solve_reduced_system
from .residuals import check_dimensions, contact_rule, default_update_tol, evaluate_Gh


def notify_observer(observer, record, solver):
    """Observer failures are logged and never interrupt the solve."""
    logger = get_live_logger()
    logger.log_iteration(solver, record.iteration, record.contact_size, record.max_update, record.residual)
    if observer is None:
        return
    try:
        observer(record)
    except Exception as exc:
        logger.warning(f"Iteration observer failed: {exc}", solver=solver, iteration=record.iteration)


def _check_max_iter(max_iter):
    if max_iter < 1:
        raise InvalidArgumentError(f"max_iter must be >= 1, got {max_iter}")


def _record(k, contact, update, residual, monotone=True, scales=None, u=None, keep=False):
    return IterationRecord(
        iteration=k,
        contact_size=int(contact.size),
        max_update=update,
        residual=residual,
        monotone=monotone,
        contact=contact.copy() if keep else None,
        scales=None if scales is None else np.array(scales),
        iterate=u.copy() if keep else None,
    )


def policy_iteration(op, inst, tol=None, max_iter=None, observer=None, record_iterates=False):
    """Howard's algorithm on min(L u - f, u - psi) = 0.

    Starts from u = psi with every node in contact. Each step picks the
    contact set by the rule L u - f >= u - psi and solves the reduced system;
    contact sets are nested and at most N of them are strictly smaller.
    """
    check_dimensions(op, inst)
    N = inst.size
    tol = default_update_tol(inst) if tol is None else tol
    max_iter = N + 1 if max_iter is None else max_iter
    _check_max_iter(max_iter)

    u = np.array(inst.psi, dtype=float)
    contact = np.arange(N)
    trace = []
    converged = False

    for k in range(1, max_iter + 1):
        new_contact = contact_rule(op, inst, u)
        u_new = solve_reduced_system(op, inst, new_contact)
        update = float(np.abs(u_new - u).max())
        unchanged = np.array_equal(new_contact, contact)
        u, contact = u_new, new_contact

        residual = float(np.abs(evaluate_Gh(op, inst, u)).max())
        record = _record(k, contact, update, residual, u=u, keep=record_iterates)
        trace.append(record)
        notify_observer(observer, record, "policy")

        if unchanged and update <= tol:
            converged = True
            break

    result = SolverResult(
        solver="policy",
        u=u,
        contact=contact,
        operator=op,
        instance=inst,
        trace=trace,
        iterations=len(trace),
        converged=converged,
    )
    get_live_logger().log_solver_end("policy", result.iterations, converged, result.final_residual)
    return result


def improved_policy_iteration(
    mesh,
    s,
    inst,
    alpha=0.5,
    theta=0.25,
    tol=None,
    max_iter=None,
    observer=None,
    record_iterates=False,
    threads=1,
):
    """Policy iteration with contact-adapted singular radii.

    Each step detects contact with the operator of the previous step (the
    typical-scale operator at the first step), shrinks H_i off the new
    contact set to theta * dist(x_i, contact) and reassembles. If a contact
    set comes back after a change, the operator is frozen and the remaining
    steps are plain policy iteration on it.
    """
    if not np.array_equal(mesh.nodes, inst.mesh.nodes):
        raise InvalidArgumentError("instance was sampled on a different mesh")
    if float(getattr(s, "s", s)) != inst.s:
        raise InvalidArgumentError(f"order s = {s} does not match the instance order {inst.s}")
    if not 0.0 < theta < 1.0:
        raise InvalidArgumentError(f"theta must lie in (0, 1), got {theta}")
    N = inst.size
    tol = default_update_tol(inst) if tol is None else tol
    max_iter = 5 * N if max_iter is None else max_iter
    _check_max_iter(max_iter)

    metrics0 = node_metrics(mesh, alpha=alpha)
    op0 = assemble_operator(mesh, s, metrics0, threads=threads)
    check_dimensions(op0, inst)

    logger = get_live_logger()
    u = np.array(inst.psi, dtype=float)
    contact = np.arange(N)
    op = op0
    seen = set()
    frozen = False
    trace = []
    converged = False

    for k in range(1, max_iter + 1):
        new_contact = contact_rule(op, inst, u)
        if not frozen and (k == 1 or not np.array_equal(new_contact, contact)):
            key = new_contact.tobytes()
            frozen = key in seen
            seen.add(key)
            if frozen:
                logger.warning("Contact sets cycle; freezing the operator", solver="improved", iteration=k)
        if not frozen and (k == 1 or not np.array_equal(new_contact, contact)):
            metrics = improved_scales(metrics0, new_contact, mesh, theta=theta)
            if np.array_equal(metrics.H, metrics0.H):
                op = op0
            else:
                op = assemble_operator(mesh, s, metrics, threads=threads)

        u_new = solve_reduced_system(op, inst, new_contact)
        step = u_new - u
        update = float(np.abs(step).max())
        monotone = bool(step.min() >= -tol)
        if not monotone:
            logger.warning(
                f"Iterate decreased by {-step.min():.3e}",
                solver="improved",
                iteration=k,
            )
        unchanged = np.array_equal(new_contact, contact)
        u, contact = u_new, new_contact

        residual = float(np.abs(evaluate_Gh(op, inst, u)).max())
        record = _record(
            k, contact, update, residual,
            monotone=monotone, scales=op.metrics.H, u=u, keep=record_iterates,
        )
        trace.append(record)
        notify_observer(observer, record, "improved")

        if unchanged and update <= tol:
            converged = True
            break

    result = SolverResult(
        solver="improved",
        u=u,
        contact=contact,
        operator=op,
        instance=inst,
        trace=trace,
        iterations=len(trace),
        converged=converged,
    )
    logger.log_solver_end("improved", result.iterations, converged, result.final_residual)
    return result
