from .instance import ObstacleInstance, IterationRecord, SolverResult, as_contact_set
from .residuals import (
    ComplementarityReport,
    check_complementarity,
    check_dimensions,
    contact_rule,
    default_complementarity_tol,
    default_sweep_tol,
    default_update_tol,
    evaluate_Gh,
    split_residuals,
)
from .linear import solve_reduced_system
from .policy import policy_iteration, improved_policy_iteration
from .perron import perron_solve, supersolution_level

__all__ = [
    "ObstacleInstance",
    "IterationRecord",
    "SolverResult",
    "as_contact_set",
    "ComplementarityReport",
    "check_complementarity",
    "check_dimensions",
    "contact_rule",
    "default_complementarity_tol",
    "default_sweep_tol",
    "default_update_tol",
    "evaluate_Gh",
    "split_residuals",
    "solve_reduced_system",
    "policy_iteration",
    "improved_policy_iteration",
    "perron_solve",
    "supersolution_level",
]
