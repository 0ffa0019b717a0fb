from .mesh import Mesh, build_uniform_mesh, build_graded_mesh, build_mesh, graded_exponent
from .metrics import NodeMetrics, node_metrics, typical_scale

__all__ = [
    "Mesh",
    "build_uniform_mesh",
    "build_graded_mesh",
    "build_mesh",
    "graded_exponent",
    "NodeMetrics",
    "node_metrics",
    "typical_scale",
]
