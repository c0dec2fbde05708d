"""估计序列 ψ_l(z)。

ψ_l(z) = a + bᵀz + R(‖z − x̄₁‖)，其中
- 三次：R(r) = (ς/6)r³，配合精确/近似 Hessian 的三次正则化方法
- 二次：R(r) = (ς/4)r²，配合自适应梯度方法

仿射部分以 (a, b) 累加存储；ς 的增量更新直接替换权重。
所有操作返回新状态，不修改输入。
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from enum import Enum

import numpy as np
from numpy.typing import ArrayLike

from aurimyth.optimization_kit.domain.exceptions import (
    DimensionMismatchError,
    VarsigmaDecreaseError,
)
from aurimyth.optimization_kit.domain.objectives import Vector


class RegularizerDegree(str, Enum):
    """正则项次数。"""

    CUBIC = "cubic"
    QUADRATIC = "quadratic"


@dataclass(frozen=True, eq=False)
class EstimateState:
    """估计序列状态。

    Attributes:
        degree: 正则项次数（构造后不变）
        anchor: 锚点 x̄₁
        a: 仿射常数项
        b: 仿射梯度 ∇ℓ_l
        varsigma: 正则权重 ς_l
        l: 成功次数
        weight_sum: 累计权重，等于 l(l+1)(l+2)/6（三次）或 l(l+1)/2（二次）
    """

    degree: RegularizerDegree
    anchor: Vector
    a: float
    b: Vector
    varsigma: float
    l: int = 1
    weight_sum: float = 1.0

    @property
    def dimension(self) -> int:
        return int(self.anchor.shape[0])


def linear_weight(degree: RegularizerDegree, l: int) -> float:
    """第 l 次成功时线性项的权重：l(l+1)/2（三次）或 l（二次）。"""
    if degree is RegularizerDegree.CUBIC:
        return l * (l + 1) / 2.0
    return float(l)


def target_weight(degree: RegularizerDegree, l: int) -> float:
    """ς 提升循环中 f(x̄_l) 的权重：l(l+1)(l+2)/6（三次）或 l(l+1)/2（二次）。"""
    if degree is RegularizerDegree.CUBIC:
        return l * (l + 1) * (l + 2) / 6.0
    return l * (l + 1) / 2.0


def mixing_weight(degree: RegularizerDegree, l: int) -> float:
    """y_l = (1 − τ)x̄_l + τz_l 中 z_l 的系数 τ。"""
    if degree is RegularizerDegree.CUBIC:
        return 3.0 / (l + 3.0)
    return 2.0 / (l + 2.0)


def regularizer(degree: RegularizerDegree, varsigma: float, r: float) -> float:
    if degree is RegularizerDegree.CUBIC:
        return varsigma / 6.0 * r**3
    return varsigma / 4.0 * r**2


def init_estimate(
    degree: RegularizerDegree | str,
    anchor: ArrayLike,
    f_anchor: float,
    varsigma1: float,
) -> EstimateState:
    """构造 ψ₁(z) = f(x̄₁) + R(‖z − x̄₁‖)。"""
    if not varsigma1 > 0:
        raise ValueError(f"ς₁ 必须为正: {varsigma1}")
    anchor = np.array(anchor, dtype=np.float64)
    return EstimateState(
        degree=RegularizerDegree(degree),
        anchor=anchor,
        a=float(f_anchor),
        b=np.zeros_like(anchor),
        varsigma=float(varsigma1),
    )


def add_linear(
    state: EstimateState,
    weight: float,
    point: ArrayLike,
    f_point: float,
    grad_point: ArrayLike,
) -> EstimateState:
    """累加 weight·(f(p) + (z − p)ᵀ∇f(p))，成功次数 l 加一。

    Raises:
        DimensionMismatchError: point 或 grad_point 维度不符
    """
    if not weight > 0:
        raise ValueError(f"线性项权重必须为正: {weight}")
    point = np.asarray(point, dtype=np.float64)
    grad_point = np.asarray(grad_point, dtype=np.float64)
    for name, v in (("point", point), ("grad_point", grad_point)):
        if v.shape != state.anchor.shape:
            raise DimensionMismatchError(expected=state.dimension, actual=v.shape, what=name)
    return replace(
        state,
        a=state.a + weight * (float(f_point) - float(point @ grad_point)),
        b=state.b + weight * grad_point,
        l=state.l + 1,
        weight_sum=state.weight_sum + weight,
    )


def raise_varsigma(state: EstimateState, new_varsigma: float) -> EstimateState:
    """把正则权重替换为 new_varsigma（不得减小）。

    Raises:
        VarsigmaDecreaseError: new_varsigma < 当前 ς
    """
    if new_varsigma < state.varsigma:
        raise VarsigmaDecreaseError(
            f"ς 不允许减小: {state.varsigma} -> {new_varsigma}",
            metadata={"current": state.varsigma, "requested": new_varsigma},
        )
    return replace(state, varsigma=float(new_varsigma))


def eval_estimate(state: EstimateState, z: ArrayLike) -> float:
    """计算 ψ_l(z)。"""
    z = np.asarray(z, dtype=np.float64)
    if z.shape != state.anchor.shape:
        raise DimensionMismatchError(expected=state.dimension, actual=z.shape, what="z")
    r = float(np.linalg.norm(z - state.anchor))
    return state.a + float(state.b @ z) + regularizer(state.degree, state.varsigma, r)


def minimize_estimate(state: EstimateState) -> tuple[Vector, float]:
    """ψ_l 的闭式极小点与极小值。

    三次：z = x̄₁ − √(2‖b‖/ς)·b/‖b‖（b = 0 时为 x̄₁）
    二次：z = x̄₁ − (2/ς)·b
    """
    if state.degree is RegularizerDegree.CUBIC:
        b_norm = float(np.linalg.norm(state.b))
        if b_norm == 0.0:
            z = state.anchor.copy()
        else:
            z = state.anchor - np.sqrt(2.0 * b_norm / state.varsigma) * (state.b / b_norm)
    else:
        z = state.anchor - (2.0 / state.varsigma) * state.b
    return z, eval_estimate(state, z)


def estimate_gradient(state: EstimateState, z: ArrayLike) -> Vector:
    """∇ψ_l(z)。"""
    delta = np.asarray(z, dtype=np.float64) - state.anchor
    if state.degree is RegularizerDegree.CUBIC:
        return state.b + 0.5 * state.varsigma * float(np.linalg.norm(delta)) * delta
    return state.b + 0.5 * state.varsigma * delta


__all__ = [
    "EstimateState",
    "RegularizerDegree",
    "add_linear",
    "estimate_gradient",
    "eval_estimate",
    "init_estimate",
    "linear_weight",
    "minimize_estimate",
    "mixing_weight",
    "raise_varsigma",
    "regularizer",
    "target_weight",
]
