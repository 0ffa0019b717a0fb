from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from ..errors import InvalidArgumentError
from ..logging import get_live_logger
from ..mesh import build_mesh, graded_exponent, node_metrics
from ..operator import assemble_operator
from ..solver import ObstacleInstance, improved_policy_iteration, perron_solve, policy_iteration
from .exact import getoor_solution

DOMAIN = (-1.0, 1.0)

EXPERIMENTS = ("exp1", "exp2", "exp3", "linear", "custom")
SOLVERS = ("policy", "improved", "perron")
MESH_FAMILIES = ("uniform", "graded")


def _check_domain(mesh):
    if not mesh.contains_domain(*DOMAIN):
        raise InvalidArgumentError(
            f"experiments are posed on {DOMAIN}, mesh covers ({mesh.a}, {mesh.b})"
        )


def exp1_forcing(x):
    x = np.asarray(x, dtype=float)
    return 1.0 - 5.0 * np.maximum(0.5 - np.abs(x), 0.0)


def exp1_obstacle(x, s):
    x = np.asarray(x, dtype=float)
    return getoor_solution(x, s) - 0.5 * np.maximum(x * x - 0.25, 0.0)


def exp2_obstacle(x):
    return 1.0 - 4.0 * np.abs(np.asarray(x, dtype=float) - 0.25)


def exp3_obstacle(x):
    return 3.0 - 6.0 * np.abs(np.asarray(x, dtype=float) - 0.25)


def experiment1_instance(mesh, s):
    """Obstacle touching the Getoor solution on B_{1/2}(0); returns (instance, exact)."""
    _check_domain(mesh)
    x = mesh.interior_nodes
    inst = ObstacleInstance(
        order=s, mesh=mesh, f=exp1_forcing(x), psi=exp1_obstacle(x, s), label="exp1"
    )
    return inst, getoor_solution(x, s)


def experiment2_instance(mesh, s):
    _check_domain(mesh)
    x = mesh.interior_nodes
    return ObstacleInstance(order=s, mesh=mesh, f=np.zeros_like(x), psi=exp2_obstacle(x), label="exp2")


def experiment3_instance(mesh, s):
    _check_domain(mesh)
    x = mesh.interior_nodes
    return ObstacleInstance(order=s, mesh=mesh, f=np.ones_like(x), psi=exp3_obstacle(x), label="exp3")


def linear_instance(mesh, s):
    """Inactive obstacle psi = -10 with f = 1; the Getoor function is exact."""
    _check_domain(mesh)
    x = mesh.interior_nodes
    inst = ObstacleInstance(
        order=s, mesh=mesh, f=np.ones_like(x), psi=np.full_like(x, -10.0), label="linear"
    )
    return inst, getoor_solution(x, s)


def build_instance(experiment, mesh, s, f_values=None, psi_values=None):
    """(instance, exact samples or None) for an experiment id."""
    if experiment == "exp1":
        return experiment1_instance(mesh, s)
    if experiment == "linear":
        return linear_instance(mesh, s)
    if experiment == "exp2":
        return experiment2_instance(mesh, s), None
    if experiment == "exp3":
        return experiment3_instance(mesh, s), None
    if experiment == "custom":
        if f_values is None or psi_values is None:
            raise InvalidArgumentError("custom instances need nodal f and psi values")
        return ObstacleInstance(order=s, mesh=mesh, f=f_values, psi=psi_values, label="custom"), None
    raise InvalidArgumentError(f"unknown experiment '{experiment}'")


@dataclass
class ExperimentSpec:
    experiment: str
    s: float
    mesh_family: str = "uniform"
    element_counts: tuple = (32, 64, 128, 256)
    mu: Optional[float] = None
    solver: str = "improved"
    alpha: float = 0.5
    theta: float = 0.25
    tol: Optional[float] = None
    max_iter: Optional[int] = None
    threads: int = 1

    def __post_init__(self):
        if self.experiment not in EXPERIMENTS:
            raise InvalidArgumentError(f"unknown experiment '{self.experiment}'")
        if self.solver not in SOLVERS:
            raise InvalidArgumentError(f"unknown solver '{self.solver}'")
        if self.mesh_family not in MESH_FAMILIES:
            raise InvalidArgumentError(f"unknown mesh family '{self.mesh_family}'")
        if not 0.0 < self.s < 1.0:
            raise InvalidArgumentError(f"fractional order must lie in (0, 1), got {self.s}")
        self.element_counts = tuple(int(M) for M in self.element_counts)
        if not self.element_counts:
            raise InvalidArgumentError("element_counts must not be empty")
        for M in self.element_counts:
            if M < 4 or (self.mesh_family == "graded" and M % 2):
                raise InvalidArgumentError(
                    f"element count {M} must be >= 4 (and even for graded meshes)"
                )
        if self.mesh_family == "graded" and self.mu is None:
            self.mu = graded_exponent(self.s)

    def build_mesh(self, M):
        return build_mesh(self.mesh_family, DOMAIN[0], DOMAIN[1], M, mu=self.mu)

    def to_dict(self):
        return {
            "experiment": self.experiment,
            "s": self.s,
            "mesh_family": self.mesh_family,
            "element_counts": list(self.element_counts),
            "mu": self.mu,
            "solver": self.solver,
            "alpha": self.alpha,
            "theta": self.theta,
            "tol": self.tol,
            "max_iter": self.max_iter,
        }


def solve_instance(spec, mesh, inst, observer=None, record_iterates=False):
    """Dispatch to the configured solver; returns a SolverResult."""
    if spec.solver == "improved":
        return improved_policy_iteration(
            mesh,
            inst.s,
            inst,
            alpha=spec.alpha,
            theta=spec.theta,
            tol=spec.tol,
            max_iter=spec.max_iter,
            observer=observer,
            record_iterates=record_iterates,
            threads=spec.threads,
        )

    op = assemble_operator(mesh, inst.s, node_metrics(mesh, alpha=spec.alpha), threads=spec.threads)
    if spec.solver == "policy":
        return policy_iteration(
            op, inst, tol=spec.tol, max_iter=spec.max_iter,
            observer=observer, record_iterates=record_iterates,
        )
    return perron_solve(
        op, inst, tol=spec.tol, max_sweeps=spec.max_iter or 200000,
        observer=observer, record_iterates=record_iterates,
    )


@dataclass
class VariantComparison:
    standard: object
    improved: object
    max_difference: float
    contact_difference: list = field(default_factory=list)

    def to_dict(self):
        return {
            "standard": self.standard.to_dict(),
            "improved": self.improved.to_dict(),
            "max_difference": self.max_difference,
            "standard_contact_size": int(self.standard.contact.size),
            "improved_contact_size": int(self.improved.contact.size),
            "contact_difference": self.contact_difference,
        }


def compare_policy_variants(mesh, inst, alpha=0.5, theta=0.25, tol=None, threads=1):
    """Standard and improved policy iteration on the same data."""
    op = assemble_operator(mesh, inst.s, node_metrics(mesh, alpha=alpha), threads=threads)
    standard = policy_iteration(op, inst, tol=tol)
    improved = improved_policy_iteration(
        mesh, inst.s, inst, alpha=alpha, theta=theta, tol=tol, threads=threads
    )
    difference = float(np.abs(standard.u - improved.u).max())
    symmetric = np.setxor1d(standard.contact, improved.contact)
    get_live_logger().metric(
        f"Policy variants differ by {difference:.3e}",
        extra={
            "standard_contact": int(standard.contact.size),
            "improved_contact": int(improved.contact.size),
        },
    )
    return VariantComparison(
        standard=standard,
        improved=improved,
        max_difference=difference,
        contact_difference=symmetric.tolist(),
    )
