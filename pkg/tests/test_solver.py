import numpy as np
import pytest

from fracobs.errors import InvalidArgumentError, InvalidInstanceError, NumericalFailureError
from fracobs.harness import experiment2_instance, experiment3_instance
from fracobs.mesh import build_graded_mesh, build_uniform_mesh, graded_exponent, node_metrics
from fracobs.operator import assemble_operator
from fracobs.solver import (
    ObstacleInstance,
    as_contact_set,
    check_complementarity,
    contact_rule,
    default_update_tol,
    evaluate_Gh,
    improved_policy_iteration,
    perron_solve,
    policy_iteration,
    solve_reduced_system,
    split_residuals,
    supersolution_level,
)


class MatrixOperator:
    def __init__(self, matrix):
        self.matrix = np.asarray(matrix, dtype=float)

    @property
    def size(self):
        return self.matrix.shape[0]

    @property
    def row_sums(self):
        return self.matrix.sum(axis=1)

    def apply(self, u):
        return self.matrix @ np.asarray(u, dtype=float)


TRIDIAGONAL = MatrixOperator([[2.0, -1.0], [-1.0, 2.0]])


def small_instance(f, psi):
    return ObstacleInstance(order=0.5, mesh=build_uniform_mesh(-1, 1, 3), f=f, psi=psi)


@pytest.fixture
def exp2_case(uniform64):
    inst = experiment2_instance(uniform64, 0.6)
    return inst, assemble_operator(uniform64, 0.6)


def test_instance_validation(uniform8):
    with pytest.raises(InvalidArgumentError):
        ObstacleInstance(order=0.5, mesh=uniform8, f=np.zeros(6), psi=np.zeros(7))
    with pytest.raises(NumericalFailureError):
        ObstacleInstance(order=0.5, mesh=uniform8, f=np.full(7, np.nan), psi=np.zeros(7))
    with pytest.raises(InvalidArgumentError):
        ObstacleInstance(order=1.2, mesh=uniform8, f=np.zeros(7), psi=np.zeros(7))


def test_instance_from_functions_and_shift(uniform8):
    inst = ObstacleInstance.from_functions(uniform8, 0.4, lambda x: 1.0, lambda x: -x ** 2)
    assert np.allclose(inst.f, 1.0)
    assert np.allclose(inst.psi, -uniform8.interior_nodes ** 2)
    with pytest.raises(ValueError):
        inst.f[0] = 2.0
    moved = inst.shifted(df=0.5, dpsi=-1.0)
    assert np.allclose(moved.f, 1.5)
    assert np.allclose(moved.psi, inst.psi - 1.0)
    assert moved.s == 0.4


def test_as_contact_set():
    assert as_contact_set([3, 1, 3], 5).tolist() == [1, 3]
    assert as_contact_set([], 5).size == 0
    with pytest.raises(InvalidArgumentError):
        as_contact_set([5], 5)


def test_evaluate_Gh_examples():
    inst = small_instance([1.0, 1.0], [0.0, 0.0])
    assert np.allclose(evaluate_Gh(TRIDIAGONAL, inst, [1.0, 1.0]), [0.0, 0.0])
    pde, obstacle = split_residuals(TRIDIAGONAL, inst, [0.0, 0.0])
    assert np.allclose(pde, [-1.0, -1.0])
    assert np.allclose(obstacle, [0.0, 0.0])
    assert np.allclose(evaluate_Gh(TRIDIAGONAL, inst, [0.0, 0.0]), [-1.0, -1.0])
    assert contact_rule(TRIDIAGONAL, inst, [0.0, 0.0]).size == 0
    assert contact_rule(TRIDIAGONAL, inst, [1.0, 1.0]).size == 0
    assert contact_rule(TRIDIAGONAL, inst, [0.0, 3.0]).tolist() == [1]


def test_dimension_mismatch_is_rejected():
    inst = small_instance([1.0, 1.0], [0.0, 0.0])
    with pytest.raises(InvalidArgumentError):
        evaluate_Gh(TRIDIAGONAL, inst, [1.0, 1.0, 1.0])
    with pytest.raises(InvalidArgumentError):
        policy_iteration(MatrixOperator(np.eye(3)), inst)


def test_reduced_system_examples():
    inst = small_instance([1.0, 1.0], [0.5, 0.0])
    assert np.allclose(solve_reduced_system(TRIDIAGONAL, inst, [0]), [0.5, 0.75])
    assert np.allclose(solve_reduced_system(TRIDIAGONAL, inst, [0, 1]), [0.5, 0.0])
    assert np.allclose(solve_reduced_system(TRIDIAGONAL, inst, []), [1.0, 1.0])


def test_reduced_system_reports_singular_block():
    inst = small_instance([1.0, 1.0], [0.0, 0.0])
    with pytest.raises(NumericalFailureError):
        solve_reduced_system(MatrixOperator([[0.0, 0.0], [0.0, 1.0]]), inst, [])


def test_policy_with_inactive_obstacle_solves_linear_system(uniform64):
    x = uniform64.interior_nodes
    inst = ObstacleInstance(order=0.5, mesh=uniform64, f=np.ones_like(x), psi=np.full_like(x, -10.0))
    op = assemble_operator(uniform64, 0.5)
    result = policy_iteration(op, inst)
    assert result.converged
    assert result.contact.size == 0
    assert np.allclose(result.u, np.linalg.solve(op.matrix, inst.f), rtol=1e-10, atol=1e-12)


def test_policy_on_tent_obstacle(exp2_case, uniform64):
    inst, op = exp2_case
    result = policy_iteration(op, inst, record_iterates=True)
    assert result.converged
    peak = int(np.argmin(np.abs(uniform64.interior_nodes - 0.25)))
    assert peak in result.contact
    assert check_complementarity(op, inst, result.u).passed
    assert result.iterations <= inst.size + 1


def test_policy_iterates_increase_and_contact_sets_shrink(exp2_case):
    inst, op = exp2_case
    tol = default_update_tol(inst)
    result = policy_iteration(op, inst, record_iterates=True)
    iterates = result.iterates()
    contacts = result.contact_sets()
    assert len(iterates) == result.iterations
    for previous, current in zip(iterates, iterates[1:]):
        assert np.all(current >= previous - tol)
    for previous, current in zip(contacts, contacts[1:]):
        assert set(current.tolist()) <= set(previous.tolist())
    changes = sum(1 for a, b in zip(contacts, contacts[1:]) if not np.array_equal(a, b))
    assert changes <= inst.size


def test_policy_reports_non_convergence(exp2_case):
    inst, op = exp2_case
    result = policy_iteration(op, inst, max_iter=1)
    assert not result.converged
    assert result.iterations == 1
    with pytest.raises(InvalidArgumentError):
        policy_iteration(op, inst, max_iter=0)


def _tent_obstacle(rng, x):
    centers = rng.uniform(-0.8, 0.8, size=rng.integers(1, 4))
    heights = rng.uniform(-0.5, 1.5, size=centers.size)
    slopes = rng.uniform(1.0, 8.0, size=centers.size)
    return np.max(heights[:, None] - slopes[:, None] * np.abs(x[None, :] - centers[:, None]), axis=0)


def _random_instances(count, seed):
    rng = np.random.default_rng(seed)
    for _ in range(count):
        M = int(rng.choice([8, 16, 32, 64]))
        mesh = build_uniform_mesh(-1, 1, M) if rng.random() < 0.5 else build_graded_mesh(-1, 1, M, 1.5)
        s = float(rng.choice([0.3, 0.6, 0.9]))
        x = mesh.interior_nodes
        inst = ObstacleInstance(
            order=s, mesh=mesh, f=rng.uniform(-2.0, 2.0, size=x.size), psi=_tent_obstacle(rng, x), label="random"
        )
        yield inst, assemble_operator(mesh, s)


def _assert_solves(instances):
    for inst, op in instances:
        result = policy_iteration(op, inst, record_iterates=True)
        assert result.converged
        assert result.iterations <= inst.size + 1
        tol = default_update_tol(inst)
        iterates = result.iterates()
        for previous, current in zip(iterates, iterates[1:]):
            assert np.all(current >= previous - tol)
        contacts = result.contact_sets()
        for previous, current in zip(contacts, contacts[1:]):
            assert np.isin(current, previous).all()
        report = check_complementarity(op, inst, result.u)
        assert report.passed, report.to_dict()


def test_policy_solves_random_instances():
    _assert_solves(_random_instances(20, seed=7))


@pytest.mark.slow
def test_policy_solves_many_random_instances():
    _assert_solves(_random_instances(200, seed=2024))


def test_perron_with_inactive_obstacle_decays_to_zero():
    mesh = build_uniform_mesh(-1, 1, 16)
    x = mesh.interior_nodes
    inst = ObstacleInstance(order=0.5, mesh=mesh, f=np.zeros_like(x), psi=np.full_like(x, -10.0))
    op = assemble_operator(mesh, 0.5)
    assert supersolution_level(op, inst) == 10.0
    result = perron_solve(op, inst)
    assert result.converged
    assert result.supersolution_level == 10.0
    assert np.allclose(result.u, 0.0, atol=1e-9)
    assert result.contact.size == 0


def test_perron_agrees_with_policy():
    mesh = build_uniform_mesh(-1, 1, 32)
    inst = experiment2_instance(mesh, 0.6)
    op = assemble_operator(mesh, 0.6)
    perron = perron_solve(op, inst, record_iterates=True)
    policy = policy_iteration(op, inst)
    assert perron.converged
    assert np.allclose(perron.u, policy.u, atol=1e-9)

    iterates = perron.iterates()
    assert np.all(iterates[0] <= perron.supersolution_level)
    for previous, current in zip(iterates, iterates[1:]):
        assert np.all(current <= previous)
    assert np.all(perron.u >= inst.psi)


def test_perron_rejects_unbounded_forcing(uniform8):
    inst = ObstacleInstance(order=0.5, mesh=uniform8, f=np.full(7, 1e25), psi=np.zeros(7))
    op = assemble_operator(uniform8, 0.5)
    with pytest.raises(InvalidInstanceError):
        supersolution_level(op, inst)
    with pytest.raises(InvalidInstanceError):
        perron_solve(op, inst)


def test_perron_sweep_cap(exp2_case):
    inst, op = exp2_case
    result = perron_solve(op, inst, max_sweeps=2)
    assert not result.converged
    assert result.iterations == 2
    with pytest.raises(InvalidArgumentError):
        perron_solve(op, inst, max_sweeps=0)


def test_complementarity_check_detects_violations(exp2_case):
    inst, op = exp2_case
    below = check_complementarity(op, inst, inst.psi - 1.0)
    assert not below.passed
    assert below.min_obstacle_gap == pytest.approx(-1.0)

    solution = policy_iteration(op, inst).u
    assert check_complementarity(op, inst, solution).passed
    lifted = check_complementarity(op, inst, solution + 0.1)
    assert not lifted.passed
    assert lifted.max_residual > lifted.tolerance


@pytest.mark.parametrize("c", [0.1, 1.0])
def test_solution_is_monotone_in_data(exp2_case, c):
    inst, op = exp2_case
    base = policy_iteration(op, inst).u
    more_force = policy_iteration(op, inst.shifted(df=c)).u
    higher_obstacle = policy_iteration(op, inst.shifted(dpsi=c)).u
    assert np.all(more_force >= base - 1e-10)
    assert np.all(higher_obstacle >= base - 1e-10)


@pytest.mark.parametrize("s", [0.3, 0.6, 0.9])
def test_unforced_solution_is_bounded_by_obstacle(uniform64, s):
    inst = experiment2_instance(uniform64, s)
    u = policy_iteration(assemble_operator(uniform64, s), inst).u
    floor = np.maximum(inst.psi, 0.0)
    assert np.all(u >= floor - 1e-10)
    assert np.all(u <= floor.max() + 1e-10)


def test_improved_matches_policy_without_contact(uniform64):
    x = uniform64.interior_nodes
    inst = ObstacleInstance(order=0.4, mesh=uniform64, f=np.ones_like(x), psi=np.full_like(x, -10.0))
    improved = improved_policy_iteration(uniform64, 0.4, inst)
    policy = policy_iteration(assemble_operator(uniform64, 0.4), inst)
    assert improved.converged
    assert np.allclose(improved.u, policy.u, rtol=1e-12, atol=1e-14)


def test_improved_iteration_count_on_graded_mesh():
    mesh = build_graded_mesh(-1, 1, 128, graded_exponent(0.3))
    inst = experiment3_instance(mesh, 0.3)
    result = improved_policy_iteration(mesh, 0.3, inst)
    assert result.converged
    assert result.iterations <= 10
    report = check_complementarity(result.operator, inst, result.u)
    assert report.passed, report.to_dict()


@pytest.mark.parametrize("s, elements", [(0.6, 120), (0.9, 78)])
def test_improved_is_complementary_for_its_final_operator(s, elements):
    mesh = build_graded_mesh(-1, 1, elements, graded_exponent(s))
    inst = experiment3_instance(mesh, s)
    result = improved_policy_iteration(mesh, s, inst)
    assert result.converged
    assert result.iterations < 5 * inst.size
    report = check_complementarity(result.operator, inst, result.u)
    assert report.passed, report.to_dict()


def test_improved_freezes_the_operator_when_contact_sets_cycle(exp2_case, uniform64, live_logger, monkeypatch):
    from fracobs.solver import policy as policy_module

    inst, _ = exp2_case
    calls = []
    real_rule = policy_module.contact_rule

    def cycling_rule(op, inst, u):
        calls.append(real_rule(op, inst, u))
        if len(calls) == 2:
            return np.arange(inst.size)
        if len(calls) == 3:
            return calls[0]
        return calls[-1]

    monkeypatch.setattr(policy_module, "contact_rule", cycling_rule)
    before = live_logger.get_stats()["warnings"]
    result = improved_policy_iteration(uniform64, 0.6, inst)
    assert result.converged
    assert len(calls) > 3
    assert live_logger.get_stats()["warnings"] > before
    report = check_complementarity(result.operator, inst, result.u)
    assert report.passed, report.to_dict()


def test_improved_records_shrunk_scales(exp2_case, uniform64):
    inst, _ = exp2_case
    result = improved_policy_iteration(uniform64, 0.6, inst, record_iterates=True)
    base = node_metrics(uniform64).H
    assert result.converged
    assert all(record.scales is not None for record in result.trace)
    assert all(np.all(record.scales <= base) for record in result.trace)
    assert np.any(result.trace[-1].scales < base)
    assert np.array_equal(result.operator.metrics.H, result.trace[-1].scales)
    assert result.contact.size > 0


def test_improved_rejects_inconsistent_arguments(exp2_case, uniform64, uniform8):
    inst, _ = exp2_case
    with pytest.raises(InvalidArgumentError):
        improved_policy_iteration(uniform8, 0.6, inst)
    with pytest.raises(InvalidArgumentError):
        improved_policy_iteration(uniform64, 0.5, inst)
    with pytest.raises(InvalidArgumentError):
        improved_policy_iteration(uniform64, 0.6, inst, theta=1.0)


def test_observer_sees_every_iteration(exp2_case):
    inst, op = exp2_case
    seen = []
    result = policy_iteration(op, inst, observer=seen.append)
    assert [record.iteration for record in seen] == list(range(1, result.iterations + 1))


def test_observer_failures_do_not_stop_the_solve(exp2_case, live_logger):
    inst, op = exp2_case

    def broken(record):
        raise RuntimeError("observer down")

    before = live_logger.get_stats()["warnings"]
    result = policy_iteration(op, inst, observer=broken)
    assert result.converged
    assert live_logger.get_stats()["warnings"] - before >= result.iterations


def _assert_monotone_in_data(instances, seed):
    rng = np.random.default_rng(seed)
    trials = 0
    for inst, op in instances:
        c = float(rng.uniform(0.01, 1.0))
        base = policy_iteration(op, inst).u
        assert np.all(policy_iteration(op, inst.shifted(df=c)).u >= base - 1e-9)
        assert np.all(policy_iteration(op, inst.shifted(dpsi=c)).u >= base - 1e-9)
        trials += 1
    return trials


def test_random_solutions_are_monotone_in_data():
    assert _assert_monotone_in_data(_random_instances(10, seed=11), seed=12) == 10


@pytest.mark.slow
def test_many_random_solutions_are_monotone_in_data():
    assert _assert_monotone_in_data(_random_instances(100, seed=13), seed=14) == 100


@pytest.mark.slow
def test_perron_and_policy_agree_on_random_instances():
    for inst, op in _random_instances(20, seed=5):
        perron = perron_solve(op, inst)
        assert perron.converged
        assert np.allclose(perron.u, policy_iteration(op, inst).u, atol=1e-9)
