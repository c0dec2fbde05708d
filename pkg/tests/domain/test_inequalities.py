"""随机化不等式性质测试：正则化下界与估计序列的一致凸性。"""

from __future__ import annotations

import numpy as np
import pytest

from aurimyth.optimization_kit.domain.estimate import (
    add_linear,
    eval_estimate,
    init_estimate,
    minimize_estimate,
)

TRIALS = 1000
SLACK = 1e-12


def _random_vector(rng: np.random.Generator, d: int) -> np.ndarray:
    return rng.standard_normal(d) * 10.0 ** rng.uniform(-3, 3)


def test_cubic_regularized_linear_lower_bound():
    rng = np.random.default_rng(11)
    for _ in range(TRIALS):
        d = int(rng.integers(1, 8))
        g = _random_vector(rng, d)
        s = _random_vector(rng, d)
        sigma = 10.0 ** rng.uniform(-4, 4)
        lhs = float(s @ g) + sigma / 3.0 * np.linalg.norm(s) ** 3
        rhs = -2.0 / (3.0 * np.sqrt(sigma)) * np.linalg.norm(g) ** 1.5
        assert lhs >= rhs - SLACK * max(1.0, abs(rhs))


def test_quadratic_regularized_linear_lower_bound():
    rng = np.random.default_rng(12)
    for _ in range(TRIALS):
        d = int(rng.integers(1, 8))
        g = _random_vector(rng, d)
        s = _random_vector(rng, d)
        sigma = 10.0 ** rng.uniform(-4, 4)
        lhs = float(s @ g) + sigma / 2.0 * float(s @ s)
        rhs = -float(g @ g) / (2.0 * sigma)
        assert lhs >= rhs - SLACK * max(1.0, abs(rhs))


def _random_estimate(rng: np.random.Generator, degree: str, d: int):
    state = init_estimate(degree, rng.standard_normal(d), float(rng.standard_normal()), 10.0 ** rng.uniform(-2, 2))
    for _ in range(int(rng.integers(0, 5))):
        state = add_linear(
            state,
            float(rng.uniform(0.1, 5.0)),
            rng.standard_normal(d),
            float(rng.standard_normal()),
            rng.standard_normal(d),
        )
    return state


@pytest.mark.parametrize(
    ("degree", "power", "factor"),
    [("cubic", 3, 1.0 / 12.0), ("quadratic", 2, 1.0 / 8.0)],
)
def test_estimate_gap_above_minimizer(degree, power, factor):
    rng = np.random.default_rng(13 if degree == "cubic" else 14)
    for _ in range(TRIALS):
        d = int(rng.integers(1, 6))
        state = _random_estimate(rng, degree, d)
        z_min, psi_min = minimize_estimate(state)
        z = z_min + rng.standard_normal(d) * 10.0 ** rng.uniform(-2, 1)
        gap = eval_estimate(state, z) - psi_min
        bound = factor * state.varsigma * np.linalg.norm(z - z_min) ** power
        scale = max(1.0, abs(psi_min), abs(eval_estimate(state, z)))
        assert gap >= bound - SLACK * scale
