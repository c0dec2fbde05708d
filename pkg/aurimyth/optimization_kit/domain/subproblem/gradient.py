"""梯度下降子问题求解器（可选）。

从 Cauchy 点（沿 −g 的一维三次模型极小点）出发，对 m(s) 做
Armijo 回溯梯度下降，直到满足 Condition 1。
"""

from __future__ import annotations

import numpy as np

from aurimyth.optimization_kit.domain.exceptions import SubproblemIterationError
from aurimyth.optimization_kit.domain.objectives import Vector

from .model import (
    CubicModel,
    SubproblemSolution,
    build_solution,
    condition1_rhs,
    model_gradient,
    model_value,
    zero_step_solution,
)


def cauchy_point(model: CubicModel) -> Vector:
    """沿 −g 方向的一维极小点。"""
    g_norm = float(np.linalg.norm(model.g))
    direction = -model.g / g_norm
    curvature = max(float(direction @ model.hessian_times(direction)), 0.0)
    # m'(t) = −‖g‖ + tκ + σt² = 0
    t = 2.0 * g_norm / (curvature + np.sqrt(curvature**2 + 4.0 * model.sigma * g_norm))
    return t * direction


def solve_gradient_descent(
    model: CubicModel,
    kappa_theta: float,
    max_iterations: int = 20000,
    warm_start: Vector | None = None,
) -> SubproblemSolution:
    """梯度下降求解三次模型直到满足 Condition 1。

    Args:
        model: 三次模型
        kappa_theta: κθ
        max_iterations: 最大迭代次数
        warm_start: 热启动点（模型值更低时替代 Cauchy 点）

    Raises:
        SubproblemIterationError: 达到最大迭代次数
    """
    if not np.any(model.g):
        return zero_step_solution(model)

    s = cauchy_point(model)
    value = model_value(model, s)
    if warm_start is not None:
        warm_value = model_value(model, warm_start)
        if warm_value < value:
            s, value = np.asarray(warm_start, dtype=np.float64), warm_value

    step = None
    for iteration in range(1, max_iterations + 1):
        grad = model_gradient(model, s)
        grad_sq = float(grad @ grad)
        if np.sqrt(grad_sq) <= condition1_rhs(model, s, kappa_theta):
            return build_solution(model, s, kappa_theta, iterations=iteration)
        if step is None:
            curvature = float(grad @ model.hessian_times(grad)) / grad_sq
            step = 1.0 / (max(curvature, 0.0) + 2.0 * model.sigma * np.linalg.norm(s) + 1e-12)

        while True:
            candidate = s - step * grad
            candidate_value = model_value(model, candidate)
            if candidate_value <= value - 0.5 * step * grad_sq or step < 1e-300:
                break
            step *= 0.5
        s, value = candidate, candidate_value
        step *= 2.0

    raise SubproblemIterationError(
        f"梯度下降子问题求解在 {max_iterations} 次迭代内未满足 Condition 1",
        metadata={"max_iterations": max_iterations, "step_norm": float(np.linalg.norm(s))},
    )


__all__ = [
    "cauchy_point",
    "solve_gradient_descent",
]
