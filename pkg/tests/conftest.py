"""全局测试夹具。"""

from __future__ import annotations

import os

import numpy as np
import pytest

from aurimyth.optimization_kit.application.config import SolverSettings
from aurimyth.optimization_kit.testing import ProblemFactory


@pytest.fixture
def factory() -> ProblemFactory:
    return ProblemFactory(seed=20240607)


@pytest.fixture
def settings(monkeypatch: pytest.MonkeyPatch) -> SolverSettings:
    """不受外部 SOLVER_* 环境变量影响的默认配置。"""
    for key in list(os.environ):
        if key.startswith(("SOLVER_", "BENCH_")):
            monkeypatch.delenv(key, raising=False)
    return SolverSettings()


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(7)


def central_gradient(fn, x: np.ndarray, step: float = 1e-5) -> np.ndarray:
    """中心差分梯度。"""
    grad = np.zeros_like(x)
    for j in range(x.shape[0]):
        e = np.zeros_like(x)
        e[j] = step
        grad[j] = (fn(x + e) - fn(x - e)) / (2.0 * step)
    return grad
