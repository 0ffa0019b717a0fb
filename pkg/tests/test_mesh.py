import numpy as np
import pytest

from fracobs.errors import InvalidArgumentError
from fracobs.mesh import (
    Mesh,
    build_graded_mesh,
    build_mesh,
    build_uniform_mesh,
    graded_exponent,
    node_metrics,
    typical_scale,
)


def test_uniform_mesh_nodes():
    assert np.allclose(build_uniform_mesh(-1, 1, 4).nodes, [-1, -0.5, 0, 0.5, 1])
    assert np.allclose(build_uniform_mesh(0, 1, 2).nodes, [0, 0.5, 1])


@pytest.mark.parametrize("a, b, M", [(-1, 1, 1), (1, -1, 4), (0, 0, 4)])
def test_uniform_mesh_rejects_bad_arguments(a, b, M):
    with pytest.raises(InvalidArgumentError):
        build_uniform_mesh(a, b, M)


def test_uniform_mesh_equal_elements():
    mesh = build_uniform_mesh(-1, 1, 10)
    assert np.allclose(mesh.element_lengths, 0.2)
    assert mesh.num_interior == 9
    assert mesh.grid_parameter == pytest.approx(0.2)


def test_graded_mesh_examples():
    assert np.allclose(build_graded_mesh(-1, 1, 4, 2).nodes, [-1, -0.75, 0, 0.75, 1])
    assert np.allclose(build_graded_mesh(-1, 1, 4, 1).nodes, [-1, -0.5, 0, 0.5, 1])
    mesh = build_graded_mesh(-1, 1, 8, 7.0 / 3.0)
    assert mesh.nodes[1] == pytest.approx(-1 + 0.25 ** (7.0 / 3.0), rel=1e-14)
    assert mesh.nodes[1] == pytest.approx(-0.96063, abs=1e-5)


@pytest.mark.parametrize("M, mu", [(3, 2.0), (2, 2.0), (8, 0.5)])
def test_graded_mesh_rejects_bad_arguments(M, mu):
    with pytest.raises(InvalidArgumentError):
        build_graded_mesh(-1, 1, M, mu)


@pytest.mark.parametrize("M", [4, 16, 64])
def test_graded_with_unit_exponent_is_uniform(M):
    assert np.allclose(build_graded_mesh(-1, 1, M, 1.0).nodes, build_uniform_mesh(-1, 1, M).nodes, atol=1e-15)


@pytest.mark.parametrize("M, mu", [(8, 2.0), (64, 7.0 / 3.0), (32, 3.0)])
def test_graded_mesh_boundary_elements_and_symmetry(M, mu):
    mesh = build_graded_mesh(-1, 1, M, mu)
    expected = (2.0 / M) ** mu
    lengths = mesh.element_lengths
    assert lengths[0] == pytest.approx(expected, rel=1e-10)
    assert lengths[-1] == pytest.approx(expected, rel=1e-10)
    assert np.allclose(mesh.nodes, -mesh.nodes[::-1], atol=1e-15)
    assert np.all(np.diff(mesh.nodes) > 0)
    assert mesh.nodes[M // 2] == 0.0


def test_build_mesh_dispatch():
    assert build_mesh("uniform", -1, 1, 8).family == "uniform"
    graded = build_mesh("graded", -1, 1, 8, mu=2.0)
    assert graded.family == "graded" and graded.grading == 2.0
    with pytest.raises(InvalidArgumentError):
        build_mesh("chebyshev", -1, 1, 8)


def test_mesh_validates_nodes():
    with pytest.raises(InvalidArgumentError):
        Mesh(a=0.0, b=1.0, nodes=np.array([0.0, 1.0]))
    with pytest.raises(InvalidArgumentError):
        Mesh(a=0.0, b=1.0, nodes=np.array([0.0, 0.6, 0.4, 1.0]))
    with pytest.raises(InvalidArgumentError):
        Mesh(a=0.0, b=1.0, nodes=np.array([0.1, 0.5, 1.0]))


def test_mesh_nodes_read_only():
    mesh = build_uniform_mesh(0, 1, 4)
    with pytest.raises(ValueError):
        mesh.nodes[1] = 0.3


def test_graded_exponent():
    assert graded_exponent(0.6) == pytest.approx(7.0 / 3.0)
    assert graded_exponent(0.5) == pytest.approx(3.0)
    with pytest.raises(InvalidArgumentError):
        graded_exponent(1.0)


def test_typical_scale_examples():
    assert typical_scale(0.01, 0.25, 0.5) == pytest.approx(0.05)
    assert typical_scale(0.4, 0.1, 0.5) == pytest.approx(0.1)


def test_node_metrics_uniform(uniform8):
    metrics = node_metrics(uniform8, alpha=0.5)
    x = uniform8.interior_nodes
    i = int(np.argmin(np.abs(x - 0.75)))
    assert metrics.h[i] == pytest.approx(0.25)
    assert metrics.delta[i] == pytest.approx(0.25)
    assert metrics.H[i] == pytest.approx(0.25)
    assert metrics.size == 7


@pytest.mark.parametrize("family", ["uniform", "graded"])
@pytest.mark.parametrize("alpha", [0.25, 0.5, 1.0])
def test_scales_stay_inside_domain(family, alpha):
    mesh = build_mesh(family, -1, 1, 64, mu=2.0)
    metrics = node_metrics(mesh, alpha=alpha)
    assert np.all(metrics.H > 0)
    assert np.all(metrics.H <= metrics.delta)


def test_node_metrics_override(uniform64):
    base = node_metrics(uniform64)
    metrics = node_metrics(uniform64, scale_override=np.full(63, 0.01))
    assert np.allclose(metrics.H, np.minimum(0.01, base.H))
    with pytest.raises(InvalidArgumentError):
        node_metrics(uniform64, scale_override=np.full(63, -1.0))
    with pytest.raises(InvalidArgumentError):
        node_metrics(uniform64, scale_override=np.ones(5))


@pytest.mark.parametrize("alpha", [0.0, 1.5])
def test_node_metrics_rejects_alpha(uniform8, alpha):
    with pytest.raises(InvalidArgumentError):
        node_metrics(uniform8, alpha=alpha)


def test_metrics_with_scales_validates(uniform8):
    metrics = node_metrics(uniform8)
    with pytest.raises(InvalidArgumentError):
        metrics.with_scales(metrics.delta * 2)
    shrunk = metrics.with_scales(metrics.H / 2)
    assert np.allclose(shrunk.H, metrics.H / 2)
    assert shrunk.alpha == metrics.alpha
