"""三次正则化模型。

m(x, s, σ) = f(x) + sᵀ∇f(x) + ½ sᵀHs + (σ/3)‖s‖³
∇m(s)      = g + Hs + σ‖s‖s

近似解的终止条件（Condition 1）：
‖∇m(s)‖ ≤ κθ · min(1, ‖s‖) · min(‖s‖, ‖g‖)

Krylov 驻点恒等式：sᵀg + sᵀHs + σ‖s‖³ = 0
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from numpy.typing import ArrayLike
from scipy.sparse.linalg import LinearOperator

from aurimyth.optimization_kit.domain.exceptions import DimensionMismatchError
from aurimyth.optimization_kit.domain.objectives import Matrix, Vector

STATIONARITY_TOLERANCE = 1e-8


@dataclass(frozen=True, eq=False)
class CubicModel:
    """x_i 处的三次正则化模型。

    Attributes:
        f0: f(x_i)
        g: ∇f(x_i)
        H: 精确或近似 Hessian（矩阵或线性算子）
        sigma: 正则化参数 σ_i > 0
    """

    f0: float
    g: Vector
    H: Matrix | LinearOperator
    sigma: float

    def __post_init__(self) -> None:
        g = np.asarray(self.g, dtype=np.float64)
        object.__setattr__(self, "g", g)
        if self.H.shape != (g.shape[0], g.shape[0]):
            raise DimensionMismatchError(expected=g.shape[0], actual=self.H.shape, what="H")
        if not self.sigma > 0:
            raise ValueError(f"σ 必须为正: {self.sigma}")

    @property
    def dimension(self) -> int:
        return int(self.g.shape[0])

    @property
    def is_explicit(self) -> bool:
        """H 是否为显式矩阵。"""
        return isinstance(self.H, np.ndarray)

    def hessian_times(self, v: Vector) -> Vector:
        """计算 H·v。"""
        if self.is_explicit:
            return self.H @ v
        return np.ravel(self.H.matvec(v))

    def dense_hessian(self) -> Matrix:
        """返回显式 Hessian（线性算子时按列物化）。"""
        if self.is_explicit:
            return self.H
        return np.asarray(self.H.matmat(np.eye(self.dimension)), dtype=np.float64)

    def _check(self, s: ArrayLike) -> Vector:
        s = np.asarray(s, dtype=np.float64)
        if s.shape != self.g.shape:
            raise DimensionMismatchError(expected=self.dimension, actual=s.shape, what="s")
        return s


@dataclass(frozen=True, eq=False)
class SubproblemSolution:
    """子问题近似解。

    Attributes:
        s: 试探步
        model_value: m(x, s, σ)
        model_grad_norm: ‖∇m(x, s, σ)‖
        krylov_dim: 使用的 Krylov 子空间维度（非 Krylov 方法为 0）
        satisfied_condition1: 是否满足 Condition 1
        satisfied_stationarity: 是否满足驻点恒等式
        stationarity_residual: sᵀg + sᵀHs + σ‖s‖³
        iterations: 内部迭代次数
    """

    s: Vector
    model_value: float
    model_grad_norm: float
    krylov_dim: int
    satisfied_condition1: bool
    satisfied_stationarity: bool
    stationarity_residual: float = 0.0
    iterations: int = 0

    @property
    def step_norm(self) -> float:
        return float(np.linalg.norm(self.s))


def model_value(model: CubicModel, s: ArrayLike, Hs: Vector | None = None) -> float:
    """计算 m(x, s, σ)。"""
    s = model._check(s)
    if Hs is None:
        Hs = model.hessian_times(s)
    norm_s = np.linalg.norm(s)
    return float(model.f0 + s @ model.g + 0.5 * (s @ Hs) + model.sigma / 3.0 * norm_s**3)


def model_gradient(model: CubicModel, s: ArrayLike, Hs: Vector | None = None) -> Vector:
    """计算 ∇m(s) = g + Hs + σ‖s‖s。"""
    s = model._check(s)
    if Hs is None:
        Hs = model.hessian_times(s)
    return model.g + Hs + model.sigma * np.linalg.norm(s) * s


def condition1_rhs(model: CubicModel, s: Vector, kappa_theta: float) -> float:
    """Condition 1 的右端项 κθ·min(1,‖s‖)·min(‖s‖,‖g‖)。"""
    norm_s = float(np.linalg.norm(s))
    return kappa_theta * min(1.0, norm_s) * min(norm_s, float(np.linalg.norm(model.g)))


def condition1_holds(
    model: CubicModel,
    s: ArrayLike,
    kappa_theta: float,
    grad: Vector | None = None,
) -> bool:
    """判断 s 是否满足 Condition 1。

    Args:
        model: 三次模型
        s: 试探步
        kappa_theta: κθ ∈ (0, 1)
        grad: 已算好的 ∇m(s)（可选，避免重复的 Hessian 乘法）
    """
    s = model._check(s)
    if grad is None:
        grad = model_gradient(model, s)
    return bool(np.linalg.norm(grad) <= condition1_rhs(model, s, kappa_theta))


def stationarity_residual(model: CubicModel, s: ArrayLike, Hs: Vector | None = None) -> float:
    """计算 sᵀg + sᵀHs + σ‖s‖³。"""
    s = model._check(s)
    if Hs is None:
        Hs = model.hessian_times(s)
    return float(s @ model.g + s @ Hs + model.sigma * np.linalg.norm(s) ** 3)


def stationarity_holds(
    model: CubicModel,
    s: Vector,
    Hs: Vector | None = None,
    tol: float = STATIONARITY_TOLERANCE,
) -> bool:
    """驻点恒等式是否在相对容差内成立。"""
    if Hs is None:
        Hs = model.hessian_times(s)
    scale = 1.0 + abs(s @ model.g) + abs(s @ Hs) + model.sigma * np.linalg.norm(s) ** 3
    return abs(stationarity_residual(model, s, Hs)) <= tol * scale


def build_solution(
    model: CubicModel,
    s: Vector,
    kappa_theta: float,
    krylov_dim: int = 0,
    iterations: int = 0,
    Hs: Vector | None = None,
) -> SubproblemSolution:
    """对试探步做一次完整评估，组装 SubproblemSolution。"""
    if Hs is None:
        Hs = model.hessian_times(s)
    grad = model_gradient(model, s, Hs)
    return SubproblemSolution(
        s=s,
        model_value=model_value(model, s, Hs),
        model_grad_norm=float(np.linalg.norm(grad)),
        krylov_dim=krylov_dim,
        satisfied_condition1=condition1_holds(model, s, kappa_theta, grad),
        satisfied_stationarity=stationarity_holds(model, s, Hs),
        stationarity_residual=stationarity_residual(model, s, Hs),
        iterations=iterations,
    )


def rescale_to_stationarity(model: CubicModel, s: Vector) -> Vector:
    """沿 s 方向做一维精确极小化，使驻点恒等式成立。

    α 为 σ‖s‖³α² + (sᵀHs)α + sᵀg = 0 的正根；sᵀg ≥ 0 时原样返回。
    """
    Hs = model.hessian_times(s)
    a = model.sigma * float(np.linalg.norm(s)) ** 3
    b = float(s @ Hs)
    c = float(s @ model.g)
    if a == 0.0 or c >= 0.0:
        return s
    alpha = 2.0 * -c / (b + np.sqrt(b * b - 4.0 * a * c))
    return alpha * s


def zero_step_solution(model: CubicModel) -> SubproblemSolution:
    """g = 0 时的平凡解 s = 0。"""
    s = np.zeros(model.dimension)
    return SubproblemSolution(
        s=s,
        model_value=float(model.f0),
        model_grad_norm=0.0,
        krylov_dim=0,
        satisfied_condition1=True,
        satisfied_stationarity=True,
    )


__all__ = [
    "STATIONARITY_TOLERANCE",
    "CubicModel",
    "SubproblemSolution",
    "build_solution",
    "condition1_holds",
    "condition1_rhs",
    "model_gradient",
    "model_value",
    "rescale_to_stationarity",
    "stationarity_holds",
    "stationarity_residual",
    "zero_step_solution",
]
