from dataclasses import dataclass

import numpy as np

from ..errors import InvalidArgumentError


@dataclass(frozen=True)
class Mesh:
    a: float
    b: float
    nodes: np.ndarray
    family: str = "uniform"
    grading: float = 1.0

    def __post_init__(self):
        nodes = np.array(self.nodes, dtype=float)
        if nodes.ndim != 1 or nodes.size < 3:
            raise InvalidArgumentError("mesh needs at least one interior node")
        if nodes[0] != self.a or nodes[-1] != self.b:
            raise InvalidArgumentError("mesh nodes must start at a and end at b")
        if np.any(np.diff(nodes) <= 0):
            raise InvalidArgumentError("mesh nodes must be strictly increasing")
        nodes.setflags(write=False)
        object.__setattr__(self, "nodes", nodes)

    @property
    def num_elements(self):
        return self.nodes.size - 1

    @property
    def num_interior(self):
        return self.nodes.size - 2

    @property
    def interior_nodes(self):
        return self.nodes[1:-1]

    @property
    def element_lengths(self):
        return np.diff(self.nodes)

    @property
    def grid_parameter(self):
        return (self.b - self.a) / self.num_elements

    def contains_domain(self, a, b):
        return self.a == a and self.b == b

    def to_dict(self):
        return {
            "a": self.a,
            "b": self.b,
            "family": self.family,
            "grading": self.grading,
            "elements": self.num_elements,
            "interior_nodes": self.num_interior,
        }


def _check_interval(a, b):
    if not a < b:
        raise InvalidArgumentError(f"interval endpoints must satisfy a < b, got ({a}, {b})")


def graded_exponent(s):
    if not 0.0 < s < 1.0:
        raise InvalidArgumentError(f"fractional order must lie in (0, 1), got {s}")
    return (2.0 - s) / s


def build_uniform_mesh(a, b, M):
    _check_interval(a, b)
    if M < 2:
        raise InvalidArgumentError(f"uniform mesh needs M >= 2 elements, got {M}")
    nodes = a + np.arange(M + 1) * ((b - a) / M)
    nodes[-1] = b
    return Mesh(a=float(a), b=float(b), nodes=nodes, family="uniform", grading=1.0)


def build_graded_mesh(a, b, M, mu):
    """Mirrored power map: x_j = a + (b-a)/2 (2j/M)^mu on the left half.

    Elements touching either endpoint have length ((b-a)/2)(2/M)^mu and
    mu = 1 reproduces the uniform mesh.
    """
    _check_interval(a, b)
    if M < 4 or M % 2:
        raise InvalidArgumentError(f"graded mesh needs an even M >= 4, got {M}")
    if mu < 1.0:
        raise InvalidArgumentError(f"grading exponent must be >= 1, got {mu}")

    half = M // 2
    offsets = 0.5 * (b - a) * (2.0 * np.arange(half + 1) / M) ** mu
    left = a + offsets
    right = (b - offsets)[::-1]
    nodes = np.concatenate([left[:-1], [0.5 * (a + b)], right[1:]])
    nodes[0] = a
    nodes[-1] = b
    if np.any(np.diff(nodes) <= 0):
        raise InvalidArgumentError(
            f"grading mu = {mu} with M = {M} collapses boundary nodes in double precision"
        )
    return Mesh(a=float(a), b=float(b), nodes=nodes, family="graded", grading=float(mu))


def build_mesh(family, a, b, M, mu=None):
    if family == "uniform":
        return build_uniform_mesh(a, b, M)
    if family == "graded":
        return build_graded_mesh(a, b, M, 1.0 if mu is None else mu)
    raise InvalidArgumentError(f"unknown mesh family '{family}'")
