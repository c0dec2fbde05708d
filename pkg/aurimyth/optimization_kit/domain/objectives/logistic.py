"""正则化逻辑回归目标函数。

f(x) = (1/n) Σ ln(1 + exp(-b_i a_iᵀx)) + (λ/2)‖x‖²

远离最优点初始化时 |a_iᵀx| 可达数千，损失按
ln(1+e^t) = max(t, 0) + ln(1 + e^{-|t|}) 计算，避免溢出。
函数值、梯度和 Hessian 共享同一次 margin 计算。
"""

from __future__ import annotations

from collections.abc import Callable

import numpy as np
from scipy.special import expit

from aurimyth.optimization_kit.domain.models import Dataset

from .base import Capability, Evaluation, Matrix, ObjectiveOracle, Vector

DEFAULT_LAMBDA = 1e-5


def softplus(t: Vector) -> Vector:
    """数值稳定的 ln(1 + e^t)。"""
    return np.maximum(t, 0.0) + np.log1p(np.exp(-np.abs(t)))


class LogisticOracle(ObjectiveOracle):
    """正则化逻辑回归。

    Attributes:
        dataset: 样本与 ±1 标签
        lam: L2 正则化系数 λ
    """

    def __init__(self, dataset: Dataset, lam: float = DEFAULT_LAMBDA) -> None:
        if lam < 0:
            raise ValueError(f"正则化系数必须非负: {lam}")
        super().__init__(dataset.d, frozenset(Capability))
        self.dataset = dataset
        self.lam = float(lam)
        self._A = dataset.samples
        self._b = dataset.labels
        self._n = dataset.n

    def _margins(self, x: Vector) -> Vector:
        return self._b * (self._A @ x)

    def _value_from_margins(self, x: Vector, margins: Vector) -> float:
        return float(np.mean(softplus(-margins)) + 0.5 * self.lam * (x @ x))

    def _gradient_from_margins(self, x: Vector, margins: Vector) -> Vector:
        # d/dt ln(1+e^{-t}) = -σ(-t)
        weights = self._b * expit(-margins)
        return -(self._A.T @ weights) / self._n + self.lam * x

    def _curvature(self, margins: Vector) -> Vector:
        return expit(margins) * expit(-margins)

    def _hessian_from_margins(self, margins: Vector) -> Matrix:
        w = self._curvature(margins)
        H = (self._A.T * w) @ self._A / self._n
        H[np.diag_indices_from(H)] += self.lam
        return H

    def _value(self, x: Vector) -> float:
        return self._value_from_margins(x, self._margins(x))

    def _gradient(self, x: Vector) -> Vector:
        return self._gradient_from_margins(x, self._margins(x))

    def _hessian(self, x: Vector) -> Matrix:
        return self._hessian_from_margins(self._margins(x))

    def _hvp_operator(self, x: Vector) -> Callable[[Vector], Vector]:
        w = self._curvature(self._margins(x))
        return lambda v: self._A.T @ (w * (self._A @ v)) / self._n + self.lam * v

    def _hvp(self, x: Vector, v: Vector) -> Vector:
        return self._hvp_operator(x)(v)

    def _evaluate(self, x: Vector, order: int) -> Evaluation:
        margins = self._margins(x)
        f = self._value_from_margins(x, margins)
        g = self._gradient_from_margins(x, margins) if order >= 1 else None
        H = self._hessian_from_margins(margins) if order >= 2 else None
        return Evaluation(f, g, H)

    def __repr__(self) -> str:
        return f"LogisticOracle(dataset={self.dataset.name!r}, n={self._n}, d={self.dimension}, lam={self.lam})"


def make_logistic(dataset: Dataset, lam: float = DEFAULT_LAMBDA) -> LogisticOracle:
    """构造正则化逻辑回归目标函数（默认 λ = 1e-5）。"""
    return LogisticOracle(dataset, lam)


__all__ = [
    "DEFAULT_LAMBDA",
    "LogisticOracle",
    "make_logistic",
    "softplus",
]
