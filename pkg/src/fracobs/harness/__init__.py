from .exact import getoor_solution, getoor_prefactor
from .experiments import (
    DOMAIN,
    ExperimentSpec,
    VariantComparison,
    build_instance,
    compare_policy_variants,
    exp1_forcing,
    exp1_obstacle,
    exp2_obstacle,
    exp3_obstacle,
    experiment1_instance,
    experiment2_instance,
    experiment3_instance,
    linear_instance,
    solve_instance,
)
from .convergence import (
    ConvergenceReport,
    ConvergenceRow,
    estimate_rate,
    pairwise_rates,
    run_convergence,
)
from .iteration_table import (
    REFERENCE_ITERATIONS,
    IterationTable,
    TableRow,
    nearest_graded_elements,
    run_iteration_table,
)

__all__ = [
    "getoor_solution",
    "getoor_prefactor",
    "DOMAIN",
    "ExperimentSpec",
    "VariantComparison",
    "build_instance",
    "compare_policy_variants",
    "exp1_forcing",
    "exp1_obstacle",
    "exp2_obstacle",
    "exp3_obstacle",
    "experiment1_instance",
    "experiment2_instance",
    "experiment3_instance",
    "linear_instance",
    "solve_instance",
    "ConvergenceReport",
    "ConvergenceRow",
    "estimate_rate",
    "pairwise_rates",
    "run_convergence",
    "REFERENCE_ITERATIONS",
    "IterationTable",
    "TableRow",
    "nearest_graded_elements",
    "run_iteration_table",
]
