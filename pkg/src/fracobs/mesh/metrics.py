from dataclasses import dataclass

import numpy as np

from ..errors import InvalidArgumentError


def _frozen(values):
    arr = np.array(values, dtype=float)
    arr.setflags(write=False)
    return arr


def typical_scale(h, delta, alpha):
    """H = min(h^alpha delta^(1-alpha), delta), clamped so [x-H, x+H] stays in the domain."""
    h = np.asarray(h, dtype=float)
    delta = np.asarray(delta, dtype=float)
    return np.minimum(h ** alpha * delta ** (1.0 - alpha), delta)


@dataclass(frozen=True)
class NodeMetrics:
    h: np.ndarray
    delta: np.ndarray
    alpha: float
    H: np.ndarray

    def __post_init__(self):
        for name in ("h", "delta", "H"):
            object.__setattr__(self, name, _frozen(getattr(self, name)))
        if not (self.h.shape == self.delta.shape == self.H.shape):
            raise InvalidArgumentError("node metric arrays must have equal length")
        if np.any(self.H <= 0) or np.any(self.H > self.delta):
            raise InvalidArgumentError("singular radii must satisfy 0 < H_i <= delta_i")

    @property
    def size(self):
        return self.H.size

    def with_scales(self, H):
        return NodeMetrics(h=self.h, delta=self.delta, alpha=self.alpha, H=H)

    def to_dict(self):
        return {
            "alpha": self.alpha,
            "h": self.h.tolist(),
            "delta": self.delta.tolist(),
            "H": self.H.tolist(),
        }


def node_metrics(mesh, alpha=0.5, scale_override=None):
    if not 0.0 < alpha <= 1.0:
        raise InvalidArgumentError(f"alpha must lie in (0, 1], got {alpha}")

    lengths = mesh.element_lengths
    h = np.maximum(lengths[:-1], lengths[1:])
    x = mesh.interior_nodes
    delta = np.minimum(x - mesh.a, mesh.b - x)
    H = typical_scale(h, delta, alpha)

    if scale_override is not None:
        override = np.asarray(scale_override, dtype=float)
        if override.shape != H.shape:
            raise InvalidArgumentError("scale override must give one radius per interior node")
        if np.any(override <= 0):
            raise InvalidArgumentError("scale override radii must be positive")
        H = np.minimum(override, H)

    return NodeMetrics(h=h, delta=delta, alpha=float(alpha), H=H)
