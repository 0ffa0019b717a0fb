import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from ..errors import InvalidArgumentError
from ..kernel import FractionalOrder, KernelConstants, segment_kernel_moments, exterior_tail_weight
from ..logging import get_live_logger
from ..mesh import Mesh, NodeMetrics, node_metrics
from .stencil import interpolation_stencil


@dataclass(frozen=True)
class DiscreteOperator:
    matrix: np.ndarray
    metrics: NodeMetrics
    order: FractionalOrder
    mesh: Mesh
    constants: KernelConstants

    def __post_init__(self):
        self.matrix.setflags(write=False)

    @property
    def size(self):
        return self.matrix.shape[0]

    @property
    def diagonal(self):
        return np.diag(self.matrix)

    @property
    def row_sums(self):
        return self.matrix.sum(axis=1)

    def apply(self, u):
        return self.matrix @ np.asarray(u, dtype=float)

    def to_dict(self):
        return {
            "size": self.size,
            "order": self.order.to_dict(),
            "constants": self.constants.to_dict(),
            "mesh": self.mesh.to_dict(),
            "alpha": self.metrics.alpha,
        }


def _tail_segments(nodes, lower, upper):
    # [a, x-H] and [x+H, b], cut at every mesh node
    left = np.append(nodes[nodes < lower], lower)
    right = np.insert(nodes[nodes > upper], 0, upper)
    lo = np.concatenate([left[:-1], right[:-1]])
    hi = np.concatenate([left[1:], right[1:]])
    return lo, hi


def _assemble_row(mesh, row_index, H, s, constants):
    nodes = mesh.nodes
    M = mesh.num_elements
    N = M - 1
    x = nodes[row_index + 1]
    row = np.zeros(N)

    # singular part: scaled second difference on [x-H, x+H]
    weight = constants.kappa / H ** (2.0 * s)
    row[row_index] += 2.0 * weight
    for p in (x - H, x + H):
        for j, w in interpolation_stencil(mesh, p).interior_items(M):
            row[j] -= weight * w

    # tail part: exact hat-function moments on every split segment
    lo, hi = _tail_segments(nodes, x - H, x + H)
    if lo.size:
        m0, m1 = segment_kernel_moments(x, lo, hi, s)
        element = np.searchsorted(nodes, lo, side="right") - 1
        length = nodes[element + 1] - nodes[element]
        upper_hat = ((lo - nodes[element]) * m0 + m1) / length
        lower_hat = m0 - upper_hat

        row[row_index] += constants.C * m0.sum()
        lower_mask = element >= 1
        upper_mask = element + 1 <= N
        row -= constants.C * np.bincount(
            element[lower_mask] - 1, weights=lower_hat[lower_mask], minlength=N
        )
        row -= constants.C * np.bincount(
            element[upper_mask], weights=upper_hat[upper_mask], minlength=N
        )

    row[row_index] += constants.C * exterior_tail_weight(x, mesh.a, mesh.b, H, s)
    return row


def assemble_operator(mesh, s, metrics=None, threads=1):
    """Dense interior-node matrix of the discrete fractional Laplacian.

    Row i = singular part (scaled second difference with radius H_i) plus
    tail part over [a, b] minus (x_i - H_i, x_i + H_i) and the exterior of
    [a, b]; both parts carry the normalization constant.
    """
    order = FractionalOrder.coerce(s)
    if order.n != 1:
        raise InvalidArgumentError(f"only one-dimensional assembly is implemented, got n = {order.n}")
    if metrics is None:
        metrics = node_metrics(mesh)

    N = mesh.num_interior
    if metrics.size != N:
        raise InvalidArgumentError(
            f"metrics describe {metrics.size} nodes but the mesh has {N} interior nodes"
        )
    x = mesh.interior_nodes
    if not np.allclose(metrics.delta, np.minimum(x - mesh.a, mesh.b - x), rtol=1e-12, atol=0.0):
        raise InvalidArgumentError("metrics were computed for a different mesh")

    constants = KernelConstants.for_order(order)
    start = time.time()

    def build(i):
        return _assemble_row(mesh, i, metrics.H[i], order.s, constants)

    if threads and threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            rows = list(pool.map(build, range(N)))
    else:
        rows = [build(i) for i in range(N)]

    matrix = np.vstack(rows)
    duration_ms = (time.time() - start) * 1000
    get_live_logger().log_assembly(N, order.s, duration_ms, threads=threads or 1)

    return DiscreteOperator(
        matrix=matrix,
        metrics=metrics,
        order=order,
        mesh=mesh,
        constants=constants,
    )


def contact_distance(mesh, contact):
    """Distance from every interior node to the nearest contact node (inf if none)."""
    x = mesh.interior_nodes
    contact = np.asarray(sorted(contact), dtype=int)
    if contact.size == 0:
        return np.full(x.size, np.inf)
    if contact.min() < 0 or contact.max() >= x.size:
        raise InvalidArgumentError("contact indices must be interior indices 0..N-1")
    return np.abs(x[:, None] - x[contact][None, :]).min(axis=1)


def improved_scales(metrics, contact, mesh, theta=0.25):
    """Shrink H_i off the contact set to theta * dist(x_i, contact)."""
    if not 0.0 < theta < 1.0:
        raise InvalidArgumentError(f"theta must lie in (0, 1), got {theta}")
    contact = np.asarray(sorted(contact), dtype=int)
    if contact.size == 0:
        return metrics

    dist = contact_distance(mesh, contact)
    H = np.minimum(metrics.H, theta * dist)
    H[contact] = metrics.H[contact]
    return metrics.with_scales(np.minimum(H, metrics.delta))
