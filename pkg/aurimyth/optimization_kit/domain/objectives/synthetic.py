"""带已知常数的合成凸目标函数。

用于性质测试和收敛界校验：每个实例附带 TestFunctionMeta，
给出梯度 Lipschitz 常数 L_g、Hessian Lipschitz 常数 L_h、
强凸参数 μ 以及（已知时）最优值与最优点。
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Any

import numpy as np
from numpy.typing import ArrayLike
from scipy import linalg
from scipy.special import logsumexp, softmax

from aurimyth.optimization_kit.domain.exceptions import (
    DimensionMismatchError,
    NotPositiveSemidefiniteError,
)

from .base import Capability, Matrix, ObjectiveOracle, Vector


class SyntheticKind(str, Enum):
    """合成目标函数类型。"""

    QUADRATIC = "quadratic"
    LOG_SUM_EXP = "log_sum_exp"
    SEPARABLE_CONVEX_QUARTIC = "separable_convex_quartic"


@dataclass(frozen=True)
class TestFunctionMeta:
    """合成目标函数的已知常数。

    Attributes:
        known_Lg: 梯度 Lipschitz 常数
        known_Lh: Hessian Lipschitz 常数（四次函数为给定盒子上的值）
        known_mu: 强凸参数
        known_fstar: 最优值（未知时为 None）
        known_xstar: 最优点（未知时为 None）
        level_set_radius: 水平集半径 D（已知时）
    """

    __test__ = False

    known_Lg: float
    known_Lh: float
    known_mu: float
    known_fstar: float | None = None
    known_xstar: Vector | None = None
    level_set_radius: float | None = None

    def __post_init__(self) -> None:
        if min(self.known_Lg, self.known_Lh, self.known_mu) < 0:
            raise ValueError("已知常数必须非负")
        if self.known_mu > self.known_Lg * (1 + 1e-12):
            raise ValueError(f"强凸参数 μ={self.known_mu} 不能大于 L_g={self.known_Lg}")

    def to_dict(self) -> dict[str, Any]:
        return {
            "known_Lg": self.known_Lg,
            "known_Lh": self.known_Lh,
            "known_mu": self.known_mu,
            "known_fstar": self.known_fstar,
            "known_xstar": None if self.known_xstar is None else self.known_xstar.tolist(),
            "level_set_radius": self.level_set_radius,
        }


_ALL = frozenset(Capability)


class QuadraticOracle(ObjectiveOracle):
    """f(x) = ½xᵀAx − bᵀx。"""

    def __init__(self, A: ArrayLike, b: ArrayLike | None = None) -> None:
        A = np.array(A, dtype=np.float64)
        if A.ndim != 2 or A.shape[0] != A.shape[1]:
            raise DimensionMismatchError(expected=A.shape[0], actual=A.shape, what="A")
        d = A.shape[0]
        b = np.zeros(d) if b is None else np.array(b, dtype=np.float64)
        if b.shape != (d,):
            raise DimensionMismatchError(expected=d, actual=b.shape, what="b")
        super().__init__(d, _ALL)
        A.setflags(write=False)
        b.setflags(write=False)
        self.A = A
        self.b = b

    def _value(self, x: Vector) -> float:
        return float(0.5 * x @ (self.A @ x) - self.b @ x)

    def _gradient(self, x: Vector) -> Vector:
        return self.A @ x - self.b

    def _hessian(self, x: Vector) -> Matrix:
        return self.A.copy()

    def _hvp(self, x: Vector, v: Vector) -> Vector:
        return self.A @ v


class LogSumExpOracle(ObjectiveOracle):
    """f(x) = log Σ_i exp(c_iᵀx + e_i) + (μ/2)‖x‖²。"""

    def __init__(self, C: ArrayLike, offsets: ArrayLike | None = None, mu: float = 0.0) -> None:
        C = np.array(C, dtype=np.float64)
        if C.ndim != 2:
            raise DimensionMismatchError(expected=2, actual=C.shape, what="C")
        offsets = np.zeros(C.shape[0]) if offsets is None else np.array(offsets, dtype=np.float64)
        if offsets.shape != (C.shape[0],):
            raise DimensionMismatchError(expected=C.shape[0], actual=offsets.shape, what="offsets")
        super().__init__(C.shape[1], _ALL)
        self.C = C
        self.offsets = offsets
        self.mu = float(mu)

    def _weights(self, x: Vector) -> Vector:
        return softmax(self.C @ x + self.offsets)

    def _value(self, x: Vector) -> float:
        return float(logsumexp(self.C @ x + self.offsets) + 0.5 * self.mu * (x @ x))

    def _gradient(self, x: Vector) -> Vector:
        return self.C.T @ self._weights(x) + self.mu * x

    def _hessian(self, x: Vector) -> Matrix:
        p = self._weights(x)
        Cp = self.C.T @ p
        H = (self.C.T * p) @ self.C - np.outer(Cp, Cp)
        H[np.diag_indices_from(H)] += self.mu
        return H

    def _hvp(self, x: Vector, v: Vector) -> Vector:
        p = self._weights(x)
        u = self.C @ v
        return self.C.T @ (p * (u - p @ u)) + self.mu * v


class SeparableQuarticOracle(ObjectiveOracle):
    """f(x) = Σ (x_i − c_i)⁴ / 12。"""

    def __init__(self, center: ArrayLike) -> None:
        center = np.array(center, dtype=np.float64)
        super().__init__(center.shape[0], _ALL)
        self.center = center

    def _value(self, x: Vector) -> float:
        return float(np.sum((x - self.center) ** 4) / 12.0)

    def _gradient(self, x: Vector) -> Vector:
        return (x - self.center) ** 3 / 3.0

    def _hessian(self, x: Vector) -> Matrix:
        return np.diag((x - self.center) ** 2)

    def _hvp(self, x: Vector, v: Vector) -> Vector:
        return (x - self.center) ** 2 * v


def _quadratic(params: dict[str, Any]) -> tuple[ObjectiveOracle, TestFunctionMeta]:
    A = np.asarray(params["A"], dtype=np.float64)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise DimensionMismatchError(expected=A.shape[0], actual=A.shape, what="A")
    scale = 1.0 + np.max(np.abs(A))
    if np.max(np.abs(A - A.T)) > 1e-12 * scale:
        raise NotPositiveSemidefiniteError("二次型矩阵 A 不对称")
    eigenvalues = linalg.eigvalsh(A)
    if eigenvalues[0] < -1e-12 * scale:
        raise NotPositiveSemidefiniteError(
            f"二次型矩阵 A 非半正定: 最小特征值 {eigenvalues[0]:.3e}",
            metadata={"lambda_min": float(eigenvalues[0])},
        )
    oracle = QuadraticOracle(A, params.get("b"))
    mu = max(float(eigenvalues[0]), 0.0)
    xstar = fstar = None
    if mu > 0:
        xstar = linalg.solve(oracle.A, oracle.b, assume_a="pos")
        fstar = -0.5 * float(oracle.b @ xstar)
    elif not np.any(oracle.b):
        xstar = np.zeros(oracle.dimension)
        fstar = 0.0
    meta = TestFunctionMeta(
        known_Lg=max(float(eigenvalues[-1]), 0.0),
        known_Lh=0.0,
        known_mu=mu,
        known_fstar=fstar,
        known_xstar=xstar,
    )
    return oracle, meta


def _log_sum_exp(params: dict[str, Any]) -> tuple[ObjectiveOracle, TestFunctionMeta]:
    oracle = LogSumExpOracle(params["C"], params.get("offsets"), params.get("mu", 0.0))
    # ∇²f 是 softmax 分布下 Cx 的协方差，D³f 是三阶中心矩
    norm_c = float(linalg.norm(oracle.C, 2))
    meta = TestFunctionMeta(
        known_Lg=norm_c**2 + oracle.mu,
        known_Lh=2.0 * norm_c**3,
        known_mu=oracle.mu,
    )
    return oracle, meta


def _separable_quartic(params: dict[str, Any]) -> tuple[ObjectiveOracle, TestFunctionMeta]:
    if "center" in params:
        center = np.asarray(params["center"], dtype=np.float64)
    else:
        center = np.zeros(int(params["dimension"]))
    radius = float(params.get("radius", 1.0))
    oracle = SeparableQuarticOracle(center)
    # 盒子 ‖x − c‖∞ ≤ R 上: f'' = (x−c)² ≤ R², |f'''| = 2|x−c| ≤ 2R
    meta = TestFunctionMeta(
        known_Lg=radius**2,
        known_Lh=2.0 * radius,
        known_mu=0.0,
        known_fstar=0.0,
        known_xstar=center.copy(),
        level_set_radius=radius * np.sqrt(center.shape[0]),
    )
    return oracle, meta


_BUILDERS = {
    SyntheticKind.QUADRATIC: _quadratic,
    SyntheticKind.LOG_SUM_EXP: _log_sum_exp,
    SyntheticKind.SEPARABLE_CONVEX_QUARTIC: _separable_quartic,
}


def make_synthetic(kind: SyntheticKind | str, **params: Any) -> tuple[ObjectiveOracle, TestFunctionMeta]:
    """构造合成目标函数及其已知常数。

    Args:
        kind: quadratic（参数 A, b）、log_sum_exp（参数 C, offsets, mu）
            或 separable_convex_quartic（参数 center 或 dimension，radius）
        **params: 各类型的参数

    Returns:
        (oracle, meta)

    Raises:
        NotPositiveSemidefiniteError: 二次型矩阵不对称或非半正定

    使用示例:
        oracle, meta = make_synthetic("quadratic", A=np.diag([1.0, 10.0]), b=[1.0, 10.0])
        assert np.allclose(meta.known_xstar, [1.0, 1.0])
    """
    return _BUILDERS[SyntheticKind(kind)](params)


def make_conditioned_quadratic(
    dimension: int,
    condition_number: float,
    seed: int = 0,
    mu: float = 1.0,
) -> tuple[ObjectiveOracle, TestFunctionMeta]:
    """构造给定条件数的随机强凸二次函数。

    特征值在 [μ, μ·κ] 上按对数均匀分布，特征向量取随机正交矩阵。
    """
    rng = np.random.default_rng(seed)
    Q, _ = linalg.qr(rng.standard_normal((dimension, dimension)))
    eigenvalues = mu * np.geomspace(1.0, condition_number, dimension)
    A = (Q * eigenvalues) @ Q.T
    A = 0.5 * (A + A.T)
    b = rng.standard_normal(dimension)
    return make_synthetic(SyntheticKind.QUADRATIC, A=A, b=b)


__all__ = [
    "LogSumExpOracle",
    "QuadraticOracle",
    "SeparableQuarticOracle",
    "SyntheticKind",
    "TestFunctionMeta",
    "make_conditioned_quadratic",
    "make_synthetic",
]
