"""有限差分 Hessian 测试。"""

from __future__ import annotations

import numpy as np
import pytest

from aurimyth.optimization_kit.domain.exceptions import ShrinkBudgetExceededError
from aurimyth.optimization_kit.domain.hessian import FDHessianConfig, fd_hessian, search_step_pair
from aurimyth.optimization_kit.domain.objectives import CountingOracle
from aurimyth.optimization_kit.domain.subproblem import SubproblemSolverFactory


def test_hand_computed_cubic():
    # f = x³/6, f' = x²/2
    H = fd_hessian(lambda x: 0.5 * x**2, np.array([0.0]), h=0.3, kappa_c=1.0)
    np.testing.assert_allclose(H, [[0.45]])


def test_quadratic_differences_exact_up_to_shift(factory, rng):
    oracle, _ = factory.quadratic(d=8, condition_number=20.0)
    x = rng.standard_normal(8)
    h, kappa_c = 1e-3, 2.0
    H = fd_hessian(oracle.gradient, x, h, kappa_c)
    exact = oracle.hessian(x)
    np.testing.assert_allclose(H, exact + kappa_c * h * np.eye(8), atol=1e-8)
    assert np.linalg.norm(H - exact, 2) == pytest.approx(kappa_c * h, rel=1e-4)


def test_exactly_d_plus_one_gradients(factory):
    counting = CountingOracle(factory.logistic(n=30, d=5))
    fd_hessian(counting.fd_gradient, np.zeros(5), 1e-2, 1.0)
    assert counting.snapshot().fd_gradients == 6
    assert counting.snapshot().gradients == 0


def test_parallel_assembly_matches_sequential(factory, rng):
    oracle = factory.logistic(n=30, d=7)
    x = rng.standard_normal(7)
    sequential = fd_hessian(oracle.gradient, x, 1e-4, 1.0, max_workers=1)
    parallel = fd_hessian(oracle.gradient, x, 1e-4, 1.0, max_workers=4)
    np.testing.assert_array_equal(sequential, parallel)


def test_error_shrinks_with_h_on_logistic(factory, rng):
    oracle = factory.logistic(n=40, d=5)
    x = rng.standard_normal(5)
    exact = oracle.hessian(x)
    errors = [np.linalg.norm(fd_hessian(oracle.gradient, x, h, 1.0) - exact, 2) for h in (1e-2, 1e-3, 1e-4)]
    assert errors[0] > errors[1] > errors[2]
    slope = np.polyfit(np.log([1e-2, 1e-3, 1e-4]), np.log(errors), 1)[0]
    assert slope == pytest.approx(1.0, abs=0.2)


def test_shift_keeps_convex_hessian_psd(factory, rng):
    oracle = factory.logistic(n=40, d=5)
    for _ in range(10):
        H = fd_hessian(oracle.gradient, rng.standard_normal(5), 1e-3, 1.0)
        assert np.linalg.eigvalsh(H)[0] >= -1e-10


class TestStepPairSearch:
    """差分步长与试探步的耦合搜索。"""

    def _search(self, oracle, cfg, h_start, sigma=1.0):
        x = np.full(oracle.dimension, 2.0)
        f, g = oracle.value_and_gradient(x)
        subsolver = SubproblemSolverFactory.create("lanczos")
        return search_step_pair(oracle.gradient, x, f, g, sigma, cfg, 0.5, h_start, subsolver)

    def test_no_shrink_when_coupled(self, factory):
        oracle, _ = factory.quadratic(d=6, condition_number=10.0)
        pair = self._search(oracle, FDHessianConfig(), h_start=1e-8)
        assert pair.shrink_count == 0
        assert pair.builds == 1
        assert pair.h == 1e-8

    def test_shrinks_until_coupled(self, factory):
        oracle, _ = factory.quadratic(d=6, condition_number=10.0)
        cfg = FDHessianConfig(kappa_hs=1e-3, gamma4=0.5)
        pair = self._search(oracle, cfg, h_start=1.0)
        assert pair.shrink_count > 0
        assert pair.h == pytest.approx(0.5**pair.shrink_count)
        assert pair.h <= cfg.kappa_hs * np.linalg.norm(pair.s)
        assert pair.h / cfg.gamma4 > cfg.kappa_hs * np.linalg.norm(pair.s) * 0.5

    def test_shrink_budget(self, factory):
        oracle, _ = factory.quadratic(d=4, condition_number=10.0)
        cfg = FDHessianConfig(kappa_hs=1e-12, max_shrinks=3)
        with pytest.raises(ShrinkBudgetExceededError):
            self._search(oracle, cfg, h_start=1.0)

    def test_config_validation(self):
        with pytest.raises(ValueError, match="gamma4"):
            FDHessianConfig(gamma4=1.5)
        with pytest.raises(ValueError, match="h_init"):
            FDHessianConfig(h_init=2.0)
