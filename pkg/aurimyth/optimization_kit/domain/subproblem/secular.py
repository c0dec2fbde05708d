"""谱分解下的三次模型长期方程。

在 H = QΛQᵀ、c = Qᵀg 的坐标下，驻点满足 s(θ) = −(Λ + σθI)⁻¹c 且 θ = ‖s(θ)‖。
φ(θ) = ‖(Λ + σθI)⁻¹c‖ − θ 在 θ > 0 上严格递减（Λ ⪰ 0, c ≠ 0），
根落在 [0, √(‖c‖/σ)] 内：根处 σθ² ≤ ‖(Λ + σθI)s‖ = ‖c‖。

用牛顿法在二分区间内保护迭代。
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from numpy.typing import NDArray

from aurimyth.optimization_kit.domain.exceptions import SecularEquationError

MAX_SECULAR_ITERATIONS = 200


@dataclass(frozen=True, slots=True)
class SecularRoot:
    """长期方程的根。

    Attributes:
        theta: ‖s‖ 的值
        coefficients: 谱坐标下的步长 −c/(λ + σθ)
        residual: φ(θ)
        iterations: 迭代次数
    """

    theta: float
    coefficients: NDArray[np.float64]
    residual: float
    iterations: int


def secular_function(eigenvalues: NDArray, coefficients: NDArray, sigma: float, theta: float) -> float:
    """φ(θ) = ‖c/(λ + σθ)‖ − θ。"""
    lam = np.maximum(eigenvalues, 0.0)
    return float(np.linalg.norm(coefficients / (lam + sigma * theta)) - theta)


def solve_secular(
    eigenvalues: NDArray,
    coefficients: NDArray,
    sigma: float,
    tol: float = 1e-10,
    max_iterations: int = MAX_SECULAR_ITERATIONS,
) -> SecularRoot:
    """求解 φ(θ) = 0。

    终止条件：|φ| ≤ tol 且对应模型梯度残差 σ|φ|‖s‖ ≤ tol(1 + ‖c‖)，
    或二分区间缩到机器精度。

    Args:
        eigenvalues: H 的特征值（微小负值按 0 处理）
        coefficients: c = Qᵀg
        sigma: σ > 0
        tol: 容差
        max_iterations: 最大迭代次数

    Raises:
        SecularEquationError: 超过最大迭代次数
    """
    lam = np.maximum(np.asarray(eigenvalues, dtype=np.float64), 0.0)
    c = np.asarray(coefficients, dtype=np.float64)
    c_norm = float(np.linalg.norm(c))
    if c_norm == 0.0:
        return SecularRoot(0.0, np.zeros_like(c), 0.0, 0)

    lo, hi = 0.0, float(np.sqrt(c_norm / sigma))
    theta = hi
    eps = np.finfo(np.float64).eps
    for iteration in range(1, max_iterations + 1):
        denom = lam + sigma * theta
        w = c / denom
        norm_w = float(np.linalg.norm(w))
        phi = norm_w - theta
        if phi > 0:
            lo = theta
        else:
            hi = theta

        if abs(phi) <= tol and sigma * abs(phi) * norm_w <= tol * (1.0 + c_norm):
            return SecularRoot(theta, -w, phi, iteration)
        if hi - lo <= 4.0 * eps * hi:
            return SecularRoot(theta, -w, phi, iteration)

        derivative = -sigma * float(np.sum(w**2 / denom)) / norm_w - 1.0
        candidate = theta - phi / derivative
        theta = candidate if lo < candidate < hi else 0.5 * (lo + hi)

    raise SecularEquationError(
        f"长期方程在 {max_iterations} 次迭代内未收敛（容差 {tol:.1e} 可能过严）",
        metadata={"sigma": sigma, "theta": theta, "bracket": (lo, hi)},
    )


__all__ = [
    "MAX_SECULAR_ITERATIONS",
    "SecularRoot",
    "secular_function",
    "solve_secular",
]
