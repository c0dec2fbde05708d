"""目标函数抽象。

ObjectiveOracle 统一封装 f、∇f、∇²f 以及 Hessian-向量积的求值，
负责维度检查、能力检查和非有限值检查；具体目标函数只需实现
_value/_gradient（以及可选的 _hessian/_hvp）。

CountingOracle 为单次求解包装计数器，原始目标函数本身保持不可变，
可被多个求解线程并发只读使用。
"""

from __future__ import annotations

from abc import ABC, abstractmethod
from collections.abc import Callable
from dataclasses import asdict, dataclass
from enum import Enum
import threading
from typing import NamedTuple

import numpy as np
from numpy.typing import ArrayLike, NDArray
from scipy.sparse.linalg import LinearOperator

from aurimyth.optimization_kit.domain.exceptions import (
    CapabilityNotSupportedError,
    DimensionMismatchError,
    NonFiniteValueError,
)

Vector = NDArray[np.float64]
Matrix = NDArray[np.float64]


class Capability(str, Enum):
    """目标函数支持的求值能力。"""

    VALUE = "value"
    GRADIENT = "gradient"
    HESSIAN = "hessian"
    HESSIAN_VECTOR_PRODUCT = "hessian_vector_product"


_ORDER_CAPABILITY = {
    0: Capability.VALUE,
    1: Capability.GRADIENT,
    2: Capability.HESSIAN,
}


class Evaluation(NamedTuple):
    """一次求值的结果。"""

    f: float
    g: Vector | None = None
    H: Matrix | None = None


class ObjectiveOracle(ABC):
    """目标函数抽象基类。

    子类实现带下划线的原始求值方法；公开方法负责输入校验和输出校验。

    Attributes:
        dimension: 变量维度 d
        capabilities: 支持的求值能力集合
    """

    def __init__(self, dimension: int, capabilities: frozenset[Capability]) -> None:
        if dimension <= 0:
            raise DimensionMismatchError(expected=1, actual=dimension, what="dimension")
        self._dimension = int(dimension)
        self._capabilities = frozenset(capabilities)

    @property
    def dimension(self) -> int:
        return self._dimension

    @property
    def capabilities(self) -> frozenset[Capability]:
        return self._capabilities

    def supports(self, capability: Capability) -> bool:
        """是否支持某项求值能力。"""
        return capability in self._capabilities

    def supports_order(self, order: int) -> bool:
        """是否支持 order 阶求值。"""
        return all(self.supports(_ORDER_CAPABILITY[k]) for k in range(order + 1))

    # ------------------------------------------------------------------
    # 子类实现
    # ------------------------------------------------------------------

    @abstractmethod
    def _value(self, x: Vector) -> float: ...

    @abstractmethod
    def _gradient(self, x: Vector) -> Vector: ...

    def _hessian(self, x: Vector) -> Matrix:
        raise CapabilityNotSupportedError(f"{type(self).__name__} 不支持 Hessian 求值")

    def _hvp(self, x: Vector, v: Vector) -> Vector:
        return self._hessian(x) @ v

    def _hvp_operator(self, x: Vector) -> Callable[[Vector], Vector]:
        """固定 x 后的 v ↦ ∇²f(x)v；子类可在此预计算与 v 无关的量。"""
        return lambda v: self._hvp(x, v)

    def _evaluate(self, x: Vector, order: int) -> Evaluation:
        f = self._value(x)
        g = self._gradient(x) if order >= 1 else None
        H = self._hessian(x) if order >= 2 else None
        return Evaluation(f, g, H)

    # ------------------------------------------------------------------
    # 校验
    # ------------------------------------------------------------------

    def _check_point(self, x: ArrayLike, what: str = "x") -> Vector:
        arr = np.asarray(x, dtype=np.float64)
        if arr.shape != (self._dimension,):
            raise DimensionMismatchError(expected=self._dimension, actual=arr.shape, what=what)
        return arr

    def _require(self, capability: Capability) -> None:
        if capability not in self._capabilities:
            raise CapabilityNotSupportedError(
                f"{type(self).__name__} 不支持 {capability.value} 求值",
                metadata={"capabilities": sorted(c.value for c in self._capabilities)},
            )

    @staticmethod
    def _check_finite(value: float | NDArray, what: str) -> None:
        if not np.all(np.isfinite(value)):
            raise NonFiniteValueError(f"{what} 出现非有限值（目标函数可能溢出）")

    # ------------------------------------------------------------------
    # 公开接口
    # ------------------------------------------------------------------

    def value(self, x: ArrayLike) -> float:
        """计算 f(x)。"""
        self._require(Capability.VALUE)
        f = float(self._value(self._check_point(x)))
        self._check_finite(f, "f(x)")
        return f

    def gradient(self, x: ArrayLike) -> Vector:
        """计算 ∇f(x)。"""
        self._require(Capability.GRADIENT)
        g = np.asarray(self._gradient(self._check_point(x)), dtype=np.float64)
        self._check_finite(g, "∇f(x)")
        return g

    def value_and_gradient(self, x: ArrayLike) -> tuple[float, Vector]:
        """同时计算 f(x) 与 ∇f(x)。"""
        evaluation = self.evaluate(x, order=1)
        return evaluation.f, evaluation.g

    def hessian(self, x: ArrayLike) -> Matrix:
        """计算 ∇²f(x)（输出对称化）。"""
        self._require(Capability.HESSIAN)
        H = np.asarray(self._hessian(self._check_point(x)), dtype=np.float64)
        self._check_finite(H, "∇²f(x)")
        return 0.5 * (H + H.T)

    def hvp(self, x: ArrayLike, v: ArrayLike) -> Vector:
        """计算 Hessian-向量积 ∇²f(x)·v。"""
        if not (self.supports(Capability.HESSIAN_VECTOR_PRODUCT) or self.supports(Capability.HESSIAN)):
            self._require(Capability.HESSIAN_VECTOR_PRODUCT)
        hv = np.asarray(
            self._hvp(self._check_point(x), self._check_point(v, what="v")), dtype=np.float64
        )
        self._check_finite(hv, "∇²f(x)v")
        return hv

    def hessian_operator(self, x: ArrayLike) -> LinearOperator:
        """返回 x 处 Hessian 的线性算子形式（供 Lanczos 使用）。

        与 v 无关的量在构造时计算一次，每次 matvec 只做乘法。
        """
        if not (self.supports(Capability.HESSIAN_VECTOR_PRODUCT) or self.supports(Capability.HESSIAN)):
            self._require(Capability.HESSIAN_VECTOR_PRODUCT)
        product = self._hvp_operator(self._check_point(x))

        def matvec(v: ArrayLike) -> Vector:
            hv = np.asarray(product(self._check_point(np.ravel(v), what="v")), dtype=np.float64)
            self._check_finite(hv, "∇²f(x)v")
            return hv

        d = self._dimension
        return LinearOperator((d, d), matvec=matvec, dtype=np.float64)

    def evaluate(self, x: ArrayLike, order: int = 0) -> Evaluation:
        """按阶数求值。

        Args:
            x: 求值点，长度必须等于 dimension
            order: 0 仅函数值；1 加梯度；2 再加 Hessian

        Returns:
            Evaluation: (f, g, H)

        Raises:
            DimensionMismatchError: x 的维度不正确
            CapabilityNotSupportedError: 请求阶数超出能力
            NonFiniteValueError: 结果出现 NaN/Inf
        """
        if order not in _ORDER_CAPABILITY:
            raise CapabilityNotSupportedError(f"不支持的求值阶数: {order}")
        for k in range(order + 1):
            self._require(_ORDER_CAPABILITY[k])
        evaluation = self._evaluate(self._check_point(x), order)
        f = float(evaluation.f)
        self._check_finite(f, "f(x)")
        g = H = None
        if order >= 1:
            g = np.asarray(evaluation.g, dtype=np.float64)
            self._check_finite(g, "∇f(x)")
        if order >= 2:
            H = np.asarray(evaluation.H, dtype=np.float64)
            self._check_finite(H, "∇²f(x)")
            H = 0.5 * (H + H.T)
        return Evaluation(f, g, H)


def evaluate(oracle: ObjectiveOracle, x: ArrayLike, order: int = 0) -> Evaluation:
    """统一求值入口，等价于 oracle.evaluate(x, order)。"""
    return oracle.evaluate(x, order)


@dataclass(slots=True)
class OracleCallCounts:
    """目标函数调用计数。"""

    values: int = 0
    gradients: int = 0
    hvps: int = 0
    fd_gradients: int = 0
    hessians: int = 0

    def copy(self) -> OracleCallCounts:
        return OracleCallCounts(**asdict(self))

    def to_dict(self) -> dict[str, int]:
        return asdict(self)


class CountingOracle(ObjectiveOracle):
    """带调用计数的目标函数包装器。

    每次求解独占一个 CountingOracle；被包装的目标函数保持共享。
    有限差分构造 Hessian 时通过 fd_gradient() 求梯度，单独计数。
    """

    def __init__(self, inner: ObjectiveOracle) -> None:
        if isinstance(inner, CountingOracle):
            inner = inner.inner
        super().__init__(inner.dimension, inner.capabilities)
        self.inner = inner
        self.counts = OracleCallCounts()
        self._lock = threading.Lock()

    def _bump(self, name: str, amount: int = 1) -> None:
        with self._lock:
            setattr(self.counts, name, getattr(self.counts, name) + amount)

    def snapshot(self) -> OracleCallCounts:
        """返回当前计数的副本。"""
        with self._lock:
            return self.counts.copy()

    def _value(self, x: Vector) -> float:
        self._bump("values")
        return self.inner._value(x)

    def _gradient(self, x: Vector) -> Vector:
        self._bump("gradients")
        return self.inner._gradient(x)

    def _hessian(self, x: Vector) -> Matrix:
        self._bump("hessians")
        return self.inner._hessian(x)

    def _hvp(self, x: Vector, v: Vector) -> Vector:
        self._bump("hvps")
        return self.inner._hvp(x, v)

    def _hvp_operator(self, x: Vector) -> Callable[[Vector], Vector]:
        product = self.inner._hvp_operator(x)

        def counted(v: Vector) -> Vector:
            self._bump("hvps")
            return product(v)

        return counted

    def _evaluate(self, x: Vector, order: int) -> Evaluation:
        self._bump("values")
        if order >= 1:
            self._bump("gradients")
        if order >= 2:
            self._bump("hessians")
        return self.inner._evaluate(x, order)

    def fd_gradient(self, x: ArrayLike) -> Vector:
        """供有限差分使用的梯度求值（计入 fd_gradients）。"""
        self._require(Capability.GRADIENT)
        point = self._check_point(x)
        self._bump("fd_gradients")
        g = np.asarray(self.inner._gradient(point), dtype=np.float64)
        self._check_finite(g, "∇f(x)")
        return g


class RestrictedOracle(ObjectiveOracle):
    """只暴露部分能力的目标函数视图（如仅一阶信息）。"""

    def __init__(self, inner: ObjectiveOracle, capabilities: frozenset[Capability]) -> None:
        super().__init__(inner.dimension, inner.capabilities & frozenset(capabilities))
        self.inner = inner

    def _value(self, x: Vector) -> float:
        return self.inner._value(x)

    def _gradient(self, x: Vector) -> Vector:
        return self.inner._gradient(x)

    def _evaluate(self, x: Vector, order: int) -> Evaluation:
        # evaluate() 已按能力拦截 order = 2
        return self.inner._evaluate(x, order)


def gradient_only(oracle: ObjectiveOracle) -> RestrictedOracle:
    """返回只支持函数值与梯度的视图。"""
    return RestrictedOracle(oracle, frozenset({Capability.VALUE, Capability.GRADIENT}))


__all__ = [
    "Capability",
    "CountingOracle",
    "RestrictedOracle",
    "gradient_only",
    "Evaluation",
    "Matrix",
    "ObjectiveOracle",
    "OracleCallCounts",
    "Vector",
    "evaluate",
]
