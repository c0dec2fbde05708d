"""三次正则化子问题测试。"""

from __future__ import annotations

import numpy as np
import pytest

from aurimyth.optimization_kit.domain.exceptions import (
    KrylovBudgetExceededError,
    NotPositiveSemidefiniteError,
)
from aurimyth.optimization_kit.domain.subproblem import (
    CubicModel,
    SubproblemSolverFactory,
    condition1_holds,
    model_gradient,
    model_value,
    rescale_to_stationarity,
    secular_function,
    solve_dense,
    solve_gradient_descent,
    solve_lanczos,
    stationarity_holds,
    stationarity_residual,
)


def _model(g, H, sigma, f0=0.0) -> CubicModel:
    return CubicModel(f0=f0, g=np.asarray(g, dtype=float), H=np.asarray(H, dtype=float), sigma=sigma)


class TestModel:
    """模型值与梯度。"""

    def test_zero_step_returns_f0(self, factory):
        model = factory.cubic_model(d=4, f0=3.25)
        assert model_value(model, np.zeros(4)) == 3.25
        np.testing.assert_array_equal(model_gradient(model, np.zeros(4)), model.g)

    def test_hand_evaluation(self):
        model = _model([1.0, 0.0], np.eye(2), sigma=3.0)
        assert model_value(model, [1.0, 0.0]) == pytest.approx(2.5)

    def test_pure_cubic_gradient(self):
        model = _model([0.0, 0.0], np.zeros((2, 2)), sigma=2.0)
        np.testing.assert_allclose(model_gradient(model, [1.0, 0.0]), [2.0, 0.0])

    def test_gradient_matches_value_differences(self, factory, rng):
        model = factory.cubic_model(d=5, sigma=1.5)
        s = rng.standard_normal(5)
        step = 1e-6
        numeric = np.array(
            [(model_value(model, s + step * e) - model_value(model, s - step * e)) / (2 * step) for e in np.eye(5)]
        )
        analytic = model_gradient(model, s)
        assert np.linalg.norm(analytic - numeric) <= 1e-6 * max(1.0, np.linalg.norm(analytic))

    def test_non_positive_sigma_rejected(self):
        with pytest.raises(ValueError, match="σ"):
            _model([1.0], [[1.0]], sigma=0.0)


class TestCondition1:
    def test_exact_minimizer_satisfies(self, factory):
        model = factory.cubic_model(d=6, sigma=1.0)
        s = solve_dense(model).s
        assert condition1_holds(model, s, 0.5)

    def test_zero_step_fails_for_nonzero_gradient(self):
        model = _model([1.0, 0.0], np.eye(2), sigma=1.0)
        assert not condition1_holds(model, np.zeros(2), 0.5)

    def test_large_perturbation_breaks_condition(self, factory, rng):
        model = factory.cubic_model(d=6, sigma=1.0)
        s = solve_dense(model).s
        direction = rng.standard_normal(6)
        direction /= np.linalg.norm(direction)
        assert not condition1_holds(model, s + 10.0 * direction, 0.5)


class TestDense:
    """特征分解求解器。"""

    def test_pure_cubic_step(self):
        solution = solve_dense(_model([2.0, 0.0], np.zeros((2, 2)), sigma=2.0))
        np.testing.assert_allclose(solution.s, [-1.0, 0.0], atol=1e-8)

    def test_zero_gradient(self):
        solution = solve_dense(_model([0.0, 0.0], np.eye(2), sigma=1.0))
        np.testing.assert_array_equal(solution.s, [0.0, 0.0])
        assert solution.step_norm == 0.0

    @pytest.mark.parametrize("sigma", [0.1, 1.0, 10.0])
    def test_global_optimality_against_perturbations(self, factory, rng, sigma):
        model = factory.cubic_model(d=8, sigma=sigma, rank=5)
        solution = solve_dense(model)
        best = solution.model_value
        for _ in range(300):
            perturbed = solution.s + rng.standard_normal(8) * rng.uniform(0.01, 2.0)
            assert best <= model_value(model, perturbed) + 1e-9
        direction = -model.g / np.linalg.norm(model.g)
        for t in np.linspace(0.0, 5.0, 200):
            assert best <= model_value(model, t * direction) + 1e-9

    def test_stationarity_at_return(self, factory):
        model = factory.cubic_model(d=7, sigma=0.5)
        solution = solve_dense(model)
        assert solution.model_grad_norm <= 1e-8 * (1.0 + np.linalg.norm(model.g))
        assert solution.satisfied_stationarity
        assert solution.model_value <= model.f0 + 1e-10

    def test_indefinite_hessian_rejected(self):
        with pytest.raises(NotPositiveSemidefiniteError):
            solve_dense(_model([1.0, 1.0], np.diag([1.0, -1.0]), sigma=1.0))


class TestLanczos:
    """Lanczos 求解器。"""

    def test_scaled_identity_is_one_dimensional(self):
        g = np.array([1.0, -2.0, 0.5])
        solution = solve_lanczos(3.0 * np.eye(3), g, sigma=1.0, kappa_theta=0.5)
        assert solution.krylov_dim == 1
        cosine = -(solution.s @ g) / (np.linalg.norm(solution.s) * np.linalg.norm(g))
        assert cosine == pytest.approx(1.0)

    def test_agrees_with_dense(self, factory):
        for trial in range(200):
            d = 1 + trial % 10
            sigma = (0.1, 1.0, 10.0)[trial % 3]
            rank = d if trial % 4 else max(1, d // 2)
            model = factory.cubic_model(d=d, sigma=sigma, rank=rank)
            dense = solve_dense(model)
            lanczos = solve_lanczos(model.H, model.g, sigma, kappa_theta=1e-6)
            assert abs(lanczos.model_value - dense.model_value) <= 1e-8 * (1.0 + abs(dense.model_value)), trial
            assert abs(lanczos.stationarity_residual) <= 1e-8, trial
            assert lanczos.satisfied_condition1, trial

    def test_every_return_satisfies_condition1_and_stationarity(self, factory):
        for _ in range(20):
            model = factory.cubic_model(d=10, sigma=1.0, f0=1.0)
            solution = solve_lanczos(model.H, model.g, model.sigma, kappa_theta=0.5, f0=model.f0)
            assert solution.satisfied_condition1
            assert abs(solution.stationarity_residual) <= 1e-8 * (1.0 + abs(model.f0) + abs(solution.s @ model.g))
            assert solution.model_value <= model.f0 + 1e-10

    def test_accepts_callable_operator(self, factory):
        model = factory.cubic_model(d=6, sigma=2.0)
        H = model.H
        solution = solve_lanczos(lambda v: H @ v, model.g, model.sigma, kappa_theta=0.5)
        assert condition1_holds(model, solution.s, 0.5)

    def test_dimension_budget_exhausted(self):
        H = np.diag([1.0, 10.0, 100.0, 1000.0])
        g = np.ones(4)
        with pytest.raises(KrylovBudgetExceededError) as excinfo:
            solve_lanczos(H, g, sigma=1.0, kappa_theta=1e-12, max_dim=1)
        assert excinfo.value.best_step.shape == (4,)

    def test_zero_gradient(self):
        solution = solve_lanczos(np.eye(2), np.zeros(2), sigma=1.0, kappa_theta=0.5)
        np.testing.assert_array_equal(solution.s, np.zeros(2))


class TestOtherSolvers:
    def test_gradient_descent_reaches_condition1(self, factory):
        model = factory.cubic_model(d=5, sigma=1.0)
        solution = solve_gradient_descent(model, kappa_theta=0.5)
        assert solution.satisfied_condition1
        assert solution.model_value <= model.f0

    def test_rescale_restores_stationarity(self, factory, rng):
        model = factory.cubic_model(d=5, sigma=1.0)
        s = rescale_to_stationarity(model, -0.01 * model.g)
        assert stationarity_holds(model, s)
        assert abs(stationarity_residual(model, s)) < 1e-8

    def test_secular_function_is_decreasing(self, factory):
        model = factory.cubic_model(d=6, sigma=1.0)
        eigenvalues, Q = np.linalg.eigh(model.H)
        c = Q.T @ model.g
        values = [secular_function(eigenvalues, c, model.sigma, t) for t in np.linspace(1e-3, 5.0, 100)]
        assert all(b < a for a, b in zip(values, values[1:], strict=False))

    def test_factory_registry(self):
        assert set(SubproblemSolverFactory.get_registered()) >= {"lanczos", "dense", "gradient_descent"}
        solver = SubproblemSolverFactory.create("dense", tol=1e-12)
        assert solver.name == "dense"
        with pytest.raises(ValueError, match="未注册"):
            SubproblemSolverFactory.create("newton")
