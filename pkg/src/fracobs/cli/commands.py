import time
from pathlib import Path

import numpy as np

from ..errors import (
    ConfigError,
    InvalidArgumentError,
    InvalidInstanceError,
    NumericalFailureError,
)
from ..harness import (
    DOMAIN,
    ExperimentSpec,
    build_instance,
    compare_policy_variants,
    run_convergence,
    run_iteration_table,
    solve_instance,
)
from ..logging import EventLogger, EventType, LogLevel, get_live_logger
from ..mesh import build_mesh, graded_exponent, node_metrics
from ..operator import (
    assemble_operator,
    barrier_report,
    random_comparison_trials,
    verify_monotone_structure,
)
from ..solver import check_complementarity
from .writers import (
    read_nodal_values,
    write_convergence_csv,
    write_matrix_txt,
    write_report_json,
    write_solution_csv,
    write_table_csv,
    write_trace_csv,
)

EXIT_OK = 0
EXIT_INVALID = 2
EXIT_NOT_CONVERGED = 3
EXIT_VERIFY_FAILED = 4

FORWARDED_LEVELS = (LogLevel.ASSEMBLY, LogLevel.WARNING, LogLevel.ERROR)


class RunContext:
    def __init__(self, config, output_dir, events=None):
        self.config = config
        self.output_dir = Path(output_dir)
        self.events = events
        self.logger = get_live_logger()

    def path(self, name):
        return self.output_dir / name

    def event(self, event_type, data=None, solver=None, iteration=None):
        if self.events is not None:
            self.events.log(event_type, time.time(), data=data, solver=solver, iteration=iteration)

    def observer(self, solver):
        if self.events is None:
            return None

        def observe(record):
            self.events.log_iteration(time.time(), solver, record)

        return observe

    def on_log(self, level, message, solver, iteration, extra):
        if level == LogLevel.ASSEMBLY:
            self.events.log_assembly(time.time(), extra["N"], extra["s"], extra["ms"], extra["threads"])
        else:
            self.events.log(
                EventType[level.name], time.time(), data={"message": message}, solver=solver, iteration=iteration
            )

    def solver_end(self, result, **extra):
        if self.events is not None:
            self.events.log_solver_end(time.time(), result, **extra)

    def echo(self):
        return self.config.echo()


def _mesh_for(config, elements=None):
    mu = config.mu
    if config.mesh_family == "graded" and mu is None:
        mu = graded_exponent(config.s)
    return build_mesh(config.mesh_family, DOMAIN[0], DOMAIN[1], elements or config.elements, mu=mu)


def _spec_for(config, experiment=None, s=None, element_counts=None, mesh_family=None):
    return ExperimentSpec(
        experiment=experiment or config.experiment,
        s=s if s is not None else config.s,
        mesh_family=mesh_family or config.mesh_family,
        element_counts=tuple(element_counts or config.element_counts),
        mu=config.mu,
        solver=config.solver,
        alpha=config.alpha,
        theta=config.theta,
        tol=config.tol,
        max_iter=config.max_iter,
        threads=config.threads,
    )


def _instance_for(config, mesh):
    f_values = psi_values = None
    if config.experiment == "custom":
        values = {}
        for name in ("f_file", "psi_file"):
            try:
                values[name] = read_nodal_values(getattr(config, name))
            except ValueError as exc:
                raise ConfigError(name, f"cannot read nodal values: {exc}") from exc
        f_values, psi_values = values["f_file"], values["psi_file"]
    return build_instance(config.experiment, mesh, config.s, f_values, psi_values)


def _solve_payload(result, complementarity, exact=None):
    payload = {
        "result": result.to_dict(),
        "complementarity": complementarity.to_dict(),
        "mesh": result.instance.mesh.to_dict(),
        "contact": result.contact.tolist(),
    }
    if exact is not None:
        payload["max_error"] = float(np.abs(result.u - exact).max())
    return payload


def run_solve(ctx):
    config = ctx.config
    mesh = _mesh_for(config)
    inst, exact = _instance_for(config, mesh)
    spec = _spec_for(config, element_counts=(mesh.num_elements,))
    result = solve_instance(spec, mesh, inst, observer=ctx.observer(config.solver))
    complementarity = check_complementarity(result.operator, inst, result.u)
    ctx.solver_end(result, complementarity=complementarity.passed)
    if not complementarity.passed:
        ctx.logger.warning(
            f"Complementarity residual {complementarity.max_residual:.3e} at node "
            f"{complementarity.worst_node} exceeds {complementarity.tolerance:.3e}"
        )

    write_solution_csv(ctx.path("solution.csv"), result)
    write_trace_csv(ctx.path("trace.csv"), result)
    if config.dump_matrix:
        write_matrix_txt(ctx.path("matrix.txt"), result.operator.matrix)
    write_report_json(ctx.path("report.json"), ctx.echo(), _solve_payload(result, complementarity, exact))

    if result.converged and complementarity.passed:
        return EXIT_OK
    return EXIT_NOT_CONVERGED


def run_converge(ctx):
    config = ctx.config
    spec = _spec_for(config)
    report = run_convergence(spec, observer=ctx.observer(config.solver))
    for row in report.rows:
        ctx.event(EventType.STUDY_ROW, data=row.to_dict())

    write_convergence_csv(ctx.path("convergence.csv"), report)
    write_report_json(ctx.path("report.json"), ctx.echo(), report.to_dict())
    return EXIT_OK if report.converged else EXIT_NOT_CONVERGED


def run_table(ctx):
    config = ctx.config
    orders = None if config.s is None else [config.s]
    spec = _spec_for(
        config,
        experiment="exp3",
        s=config.s if config.s is not None else 0.6,
        mesh_family="graded",
        element_counts=(4,),
    )
    table = run_iteration_table(spec, orders=orders)
    for row in table.rows:
        ctx.event(EventType.STUDY_ROW, data=row.to_dict())

    write_table_csv(ctx.path("iterations.csv"), table)
    write_report_json(ctx.path("report.json"), ctx.echo(), table.to_dict())
    return EXIT_OK if table.converged else EXIT_NOT_CONVERGED


def run_verify(ctx):
    config = ctx.config
    mesh = _mesh_for(config)
    op = assemble_operator(mesh, config.s, node_metrics(mesh, alpha=config.alpha), threads=config.threads)

    structure = verify_monotone_structure(op)
    barrier = barrier_report(op)
    trials = random_comparison_trials(op, config.trials, seed=config.seed)
    trials_passed = all(t.passed for t in trials)

    ctx.logger.log_structure("M-matrix structure", structure.passed, structure.to_dict())
    ctx.logger.log_structure("discrete barrier", barrier.passed, {"min_scaled": barrier.min_scaled})
    ctx.logger.log_structure(f"comparison trials ({len(trials)})", trials_passed)

    passed = structure.passed and barrier.passed and trials_passed
    ctx.event(EventType.VERIFY, data={"passed": passed, "size": op.size})

    if config.dump_matrix:
        write_matrix_txt(ctx.path("matrix.txt"), op.matrix)
    write_report_json(
        ctx.path("report.json"),
        ctx.echo(),
        {
            "passed": passed,
            "mesh": mesh.to_dict(),
            "operator": op.to_dict(),
            "structure": structure.to_dict(),
            "barrier": barrier.to_dict(),
            "comparison_trials": [t.to_dict() for t in trials],
        },
    )
    return EXIT_OK if passed else EXIT_VERIFY_FAILED


def run_compare(ctx):
    config = ctx.config
    mesh = _mesh_for(config)
    inst, _ = _instance_for(config, mesh)
    comparison = compare_policy_variants(
        mesh, inst, alpha=config.alpha, theta=config.theta, tol=config.tol, threads=config.threads
    )

    write_solution_csv(ctx.path("solution_policy.csv"), comparison.standard)
    write_solution_csv(ctx.path("solution_improved.csv"), comparison.improved)
    write_trace_csv(ctx.path("trace_policy.csv"), comparison.standard)
    write_trace_csv(ctx.path("trace_improved.csv"), comparison.improved)
    write_report_json(ctx.path("report.json"), ctx.echo(), comparison.to_dict())

    if comparison.standard.converged and comparison.improved.converged:
        return EXIT_OK
    return EXIT_NOT_CONVERGED


COMMANDS = {
    "solve": run_solve,
    "converge": run_converge,
    "table": run_table,
    "verify": run_verify,
    "compare": run_compare,
}


def run(config):
    """Execute one configured command; returns the process exit code."""
    logger = get_live_logger()
    start = time.time()
    output_dir = Path(config.output_dir)
    events = ctx = None

    try:
        output_dir.mkdir(parents=True, exist_ok=True)
        if config.log_file:
            logger.attach_log_file(output_dir / config.log_file)
        logger.log_run_start(config.command, {"s": config.s, "output_dir": str(output_dir)})
        if config.event_log:
            events = EventLogger(output_dir / "events.jsonl")
        ctx = RunContext(config, output_dir, events)
        if events is not None:
            for level in FORWARDED_LEVELS:
                logger.add_callback(level, ctx.on_log)
        ctx.event(EventType.RUN_START, data=config.echo())
        code = COMMANDS[config.command](ctx)
    except ConfigError as exc:
        logger.error(f"Invalid configuration field '{exc.field}': {exc.message}")
        code = EXIT_INVALID
    except (InvalidArgumentError, InvalidInstanceError) as exc:
        logger.error(f"Invalid input: {exc}")
        code = EXIT_INVALID
    except NumericalFailureError as exc:
        logger.error(f"Numerical failure: {exc}")
        code = EXIT_NOT_CONVERGED
    except OSError as exc:
        logger.error(f"Cannot write output: {exc}")
        code = EXIT_INVALID

    if events is not None:
        for level in FORWARDED_LEVELS:
            logger.remove_callback(level, ctx.on_log)
        events.log(EventType.RUN_END, time.time(), data={"exit_code": code})
        events.close()
    logger.log_run_end(config.command, code, (time.time() - start) * 1000)
    logger.detach_log_file()
    return code
