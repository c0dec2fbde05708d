"""Lanczos 子问题求解器。

在 Krylov 子空间 span{g, Hg, H²g, ...} 上逐维扩展正交基 Q_k，
T_k = Q_kᵀ H Q_k 为三对角矩阵。每一维求解约化问题

    min_u ‖g‖e₁ᵀu + ½uᵀT_k u + (σ/3)‖u‖³

（三对角特征分解 + 长期方程），s = Q_k u 满足全空间的 Condition 1 即返回。
Krylov 子空间内的精确极小点对任意 k 都满足驻点恒等式。
"""

from __future__ import annotations

from collections.abc import Callable

import numpy as np
from scipy import linalg
from scipy.sparse.linalg import LinearOperator

from aurimyth.optimization_kit.common.logging import logger
from aurimyth.optimization_kit.domain.exceptions import KrylovBudgetExceededError
from aurimyth.optimization_kit.domain.objectives import Matrix, Vector

from .model import CubicModel, SubproblemSolution, build_solution, zero_step_solution
from .secular import solve_secular

BREAKDOWN_TOLERANCE = 1e-12

HessianOperator = Matrix | LinearOperator | Callable[[Vector], Vector]


def _as_operator(hvp: HessianOperator, dimension: int) -> Matrix | LinearOperator:
    if isinstance(hvp, np.ndarray | LinearOperator):
        return hvp
    return LinearOperator((dimension, dimension), matvec=lambda v: hvp(np.ravel(v)), dtype=np.float64)


def _reduced_step(alphas: list[float], betas: list[float], g_norm: float, sigma: float, tol: float) -> Vector:
    """在 Krylov 坐标下求约化三次模型的极小点 u。"""
    eigenvalues, V = linalg.eigh_tridiagonal(np.asarray(alphas), np.asarray(betas))
    root = solve_secular(eigenvalues, g_norm * V[0, :], sigma, tol)
    return V @ root.coefficients


def solve_lanczos(
    hvp: HessianOperator,
    g: Vector,
    sigma: float,
    kappa_theta: float,
    max_dim: int | None = None,
    f0: float = 0.0,
    tol: float = 1e-10,
) -> SubproblemSolution:
    """Lanczos 过程近似求解三次正则化子问题。

    Args:
        hvp: Hessian（矩阵、LinearOperator 或 v ↦ Hv 的函数），必须对称半正定
        g: 梯度，调用方保证非零（为零时直接返回 s = 0）
        sigma: σ > 0
        kappa_theta: Condition 1 的 κθ
        max_dim: Krylov 子空间维度上限，默认 d
        f0: 模型常数项 f(x)
        tol: 约化问题长期方程容差

    Returns:
        SubproblemSolution: 满足 Condition 1 的试探步

    Raises:
        KrylovBudgetExceededError: max_dim < d 时维度用尽仍不满足 Condition 1
    """
    g = np.asarray(g, dtype=np.float64)
    d = g.shape[0]
    model = CubicModel(f0=f0, g=g, H=_as_operator(hvp, d), sigma=sigma)
    g_norm = float(np.linalg.norm(g))
    if g_norm == 0.0:
        return zero_step_solution(model)

    k_max = d if max_dim is None else max(1, min(int(max_dim), d))
    basis = np.zeros((d, k_max))
    basis[:, 0] = g / g_norm
    alphas: list[float] = []
    betas: list[float] = []
    solution: SubproblemSolution | None = None

    for k in range(1, k_max + 1):
        q = basis[:, k - 1]
        w = model.hessian_times(q)
        alpha = float(q @ w)
        alphas.append(alpha)
        # 完全重正交化（两遍）
        Qk = basis[:, :k]
        w = w - Qk @ (Qk.T @ w)
        w = w - Qk @ (Qk.T @ w)

        u = _reduced_step(alphas, betas, g_norm, sigma, tol)
        s = Qk @ u
        solution = build_solution(model, s, kappa_theta, krylov_dim=k, iterations=k)
        if solution.satisfied_condition1:
            return solution

        beta = float(np.linalg.norm(w))
        if beta < BREAKDOWN_TOLERANCE * max(1.0, abs(alpha)):
            # 不变子空间：约化解即全空间解
            logger.debug(f"Lanczos 在第 {k} 维出现 breakdown，停止扩展子空间")
            return solution
        if k < k_max:
            betas.append(beta)
            basis[:, k] = w / beta

    if k_max == d:
        return solution

    raise KrylovBudgetExceededError(
        f"Krylov 维度上限 {k_max} 用尽仍未满足 Condition 1（κθ 可能相对算子精度过小）",
        best_step=solution.s,
        metadata={
            "max_dim": k_max,
            "model_grad_norm": solution.model_grad_norm,
            "step_norm": solution.step_norm,
        },
    )


__all__ = [
    "BREAKDOWN_TOLERANCE",
    "HessianOperator",
    "solve_lanczos",
]
