from .errors import (
    FracObsError,
    InvalidArgumentError,
    InvalidInstanceError,
    NumericalFailureError,
    ConfigError,
)
from .mesh import Mesh, NodeMetrics, build_mesh, build_uniform_mesh, build_graded_mesh, node_metrics
from .kernel import FractionalOrder, normalization_constant, segment_kernel_moments, exterior_tail_weight
from .operator import DiscreteOperator, assemble_operator, interpolation_stencil, verify_monotone_structure
from .solver import (
    ObstacleInstance,
    SolverResult,
    check_complementarity,
    evaluate_Gh,
    improved_policy_iteration,
    perron_solve,
    policy_iteration,
    solve_reduced_system,
)
from .harness import ExperimentSpec, estimate_rate, getoor_solution, run_convergence, run_iteration_table
from .config import RunConfig, load_run_config

__version__ = "0.1.0"

__all__ = [
    "FracObsError",
    "InvalidArgumentError",
    "InvalidInstanceError",
    "NumericalFailureError",
    "ConfigError",
    "Mesh",
    "NodeMetrics",
    "build_mesh",
    "build_uniform_mesh",
    "build_graded_mesh",
    "node_metrics",
    "FractionalOrder",
    "normalization_constant",
    "segment_kernel_moments",
    "exterior_tail_weight",
    "DiscreteOperator",
    "assemble_operator",
    "interpolation_stencil",
    "verify_monotone_structure",
    "ObstacleInstance",
    "SolverResult",
    "check_complementarity",
    "evaluate_Gh",
    "improved_policy_iteration",
    "perron_solve",
    "policy_iteration",
    "solve_reduced_system",
    "ExperimentSpec",
    "estimate_rate",
    "getoor_solution",
    "run_convergence",
    "run_iteration_table",
    "RunConfig",
    "load_run_config",
]
