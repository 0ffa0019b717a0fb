from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from ..errors import InvalidArgumentError, NumericalFailureError
from ..kernel import FractionalOrder
from ..mesh import Mesh


def _frozen(values, name):
    arr = np.array(values, dtype=float)
    if arr.ndim != 1:
        raise InvalidArgumentError(f"{name} must be a one-dimensional array of nodal values")
    if not np.all(np.isfinite(arr)):
        raise NumericalFailureError(f"{name} contains non-finite values")
    arr.setflags(write=False)
    return arr


def as_contact_set(indices, size):
    """Sorted, duplicate-free interior index array."""
    contact = np.unique(np.asarray(indices, dtype=int).ravel())
    if contact.size and (contact[0] < 0 or contact[-1] >= size):
        raise InvalidArgumentError(f"contact indices must lie in 0..{size - 1}")
    return contact


@dataclass(frozen=True)
class ObstacleInstance:
    order: FractionalOrder
    mesh: Mesh
    f: np.ndarray
    psi: np.ndarray
    label: str = "custom"

    def __post_init__(self):
        object.__setattr__(self, "order", FractionalOrder.coerce(self.order))
        object.__setattr__(self, "f", _frozen(self.f, "f"))
        object.__setattr__(self, "psi", _frozen(self.psi, "psi"))
        N = self.mesh.num_interior
        if self.f.size != N or self.psi.size != N:
            raise InvalidArgumentError(
                f"f and psi need {N} interior values, got {self.f.size} and {self.psi.size}"
            )

    @classmethod
    def from_functions(cls, mesh, s, f, psi, label="custom"):
        """Collocate callables f(x), psi(x) at the interior nodes."""
        x = mesh.interior_nodes
        return cls(
            order=s,
            mesh=mesh,
            f=np.broadcast_to(np.asarray(f(x), dtype=float), x.shape),
            psi=np.broadcast_to(np.asarray(psi(x), dtype=float), x.shape),
            label=label,
        )

    @property
    def s(self):
        return self.order.s

    @property
    def size(self):
        return self.f.size

    @property
    def x(self):
        return self.mesh.interior_nodes

    def shifted(self, df=0.0, dpsi=0.0):
        return ObstacleInstance(
            order=self.order,
            mesh=self.mesh,
            f=self.f + df,
            psi=self.psi + dpsi,
            label=self.label,
        )

    def to_dict(self):
        return {
            "label": self.label,
            "order": self.order.to_dict(),
            "mesh": self.mesh.to_dict(),
            "f_max": float(np.abs(self.f).max()),
            "psi_max": float(np.abs(self.psi).max()),
        }


@dataclass
class IterationRecord:
    iteration: int
    contact_size: int
    max_update: float
    residual: float
    monotone: bool = True
    contact: Optional[np.ndarray] = None
    scales: Optional[np.ndarray] = None
    iterate: Optional[np.ndarray] = None

    def to_dict(self):
        data = {
            "iteration": self.iteration,
            "contact_size": self.contact_size,
            "max_update": self.max_update,
            "residual": self.residual,
            "monotone": self.monotone,
        }
        if self.scales is not None:
            data["scales"] = self.scales.tolist()
        return data


@dataclass
class SolverResult:
    solver: str
    u: np.ndarray
    contact: np.ndarray
    operator: object
    instance: ObstacleInstance
    trace: list = field(default_factory=list)
    iterations: int = 0
    converged: bool = False
    supersolution_level: Optional[float] = None

    @property
    def final_residual(self):
        return self.trace[-1].residual if self.trace else float("inf")

    def iterates(self):
        return [record.iterate for record in self.trace if record.iterate is not None]

    def contact_sets(self):
        return [record.contact for record in self.trace if record.contact is not None]

    def to_dict(self):
        data = {
            "solver": self.solver,
            "size": int(self.u.size),
            "iterations": self.iterations,
            "converged": self.converged,
            "contact_size": int(self.contact.size),
            "final_residual": self.final_residual,
        }
        if self.supersolution_level is not None:
            data["supersolution_level"] = self.supersolution_level
        return data
