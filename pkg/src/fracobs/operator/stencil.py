from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class InterpolationStencil:
    point: float
    indices: tuple = ()
    weights: tuple = ()

    @property
    def is_empty(self):
        return not self.indices

    def as_dict(self):
        return dict(zip(self.indices, self.weights))

    def interior_items(self, num_elements):
        """(interior index, weight) pairs; boundary nodes carry the value 0."""
        return [(j - 1, w) for j, w in zip(self.indices, self.weights) if 0 < j < num_elements]

    def evaluate(self, nodal_values):
        return sum(w * nodal_values[j] for j, w in zip(self.indices, self.weights))


def interpolation_stencil(mesh, p):
    """Piecewise-linear evaluation weights at p, zero-extended outside [a, b]."""
    nodes = mesh.nodes
    if p < mesh.a or p > mesh.b:
        return InterpolationStencil(point=p)

    k = int(np.searchsorted(nodes, p, side="left"))
    if nodes[k] == p:
        return InterpolationStencil(point=p, indices=(k,), weights=(1.0,))

    left = k - 1
    t = (p - nodes[left]) / (nodes[k] - nodes[left])
    return InterpolationStencil(point=p, indices=(left, k), weights=(1.0 - t, t))
