"""稠密子问题求解（暴力对照解）。

对 H 做完整特征分解后求长期方程，得到三次模型的全局极小点。
仅适用于显式矩阵；作为 Lanczos 求解器的等价性对照。
"""

from __future__ import annotations

import numpy as np
from scipy import linalg

from aurimyth.optimization_kit.domain.exceptions import (
    NonSymmetricHessianError,
    NotPositiveSemidefiniteError,
    SubproblemError,
)

from .model import CubicModel, SubproblemSolution, build_solution, zero_step_solution
from .secular import solve_secular

SYMMETRY_TOLERANCE = 1e-12
PSD_TOLERANCE = 1e-8


def solve_dense(
    model: CubicModel,
    tol: float = 1e-10,
    kappa_theta: float = 0.5,
) -> SubproblemSolution:
    """用特征分解求三次模型的全局极小点。

    Args:
        model: 三次模型（H 为显式矩阵；线性算子会先物化）
        tol: 长期方程容差
        kappa_theta: 仅用于填写 satisfied_condition1

    Returns:
        SubproblemSolution

    Raises:
        NonSymmetricHessianError: H 不对称
        NotPositiveSemidefiniteError: H 有明显负特征值
        SubproblemError: 特征分解失败
        SecularEquationError: 长期方程不收敛
    """
    if not np.any(model.g):
        return zero_step_solution(model)

    H = model.dense_hessian()
    scale = 1.0 + float(np.max(np.abs(H)))
    if np.max(np.abs(H - H.T)) > SYMMETRY_TOLERANCE * scale:
        raise NonSymmetricHessianError("子问题 Hessian 不对称，无法特征分解")
    try:
        eigenvalues, Q = linalg.eigh(H)
    except linalg.LinAlgError as e:
        raise SubproblemError("Hessian 特征分解失败", cause=e) from e
    if eigenvalues[0] < -PSD_TOLERANCE * scale:
        raise NotPositiveSemidefiniteError(
            f"子问题 Hessian 非半正定: 最小特征值 {eigenvalues[0]:.3e}",
            metadata={"lambda_min": float(eigenvalues[0])},
        )

    root = solve_secular(eigenvalues, Q.T @ model.g, model.sigma, tol)
    s = Q @ root.coefficients
    return build_solution(model, s, kappa_theta, krylov_dim=0, iterations=root.iterations)


__all__ = [
    "solve_dense",
]
