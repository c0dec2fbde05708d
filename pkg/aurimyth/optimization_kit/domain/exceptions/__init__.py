"""Domain 层异常定义。

Domain 层异常，继承自 OptimizationError。
"""

from __future__ import annotations

from typing import Any

from aurimyth.optimization_kit.common.exceptions import OptimizationError


class CoreException(OptimizationError):  # noqa: N818
    """Domain 层异常基类。"""

    pass


# ============================================================
# 目标函数
# ============================================================

class OracleError(CoreException):
    """目标函数求值相关错误基类。"""

    pass


class DimensionMismatchError(OracleError):
    """向量或矩阵维度与目标函数维度不一致。"""

    def __init__(self, expected: int, actual: int | tuple[int, ...], what: str = "x") -> None:
        super().__init__(
            f"维度不匹配: {what} 期望维度 {expected}，实际为 {actual}",
            metadata={"expected": expected, "actual": actual, "what": what},
        )
        self.expected = expected
        self.actual = actual


class CapabilityNotSupportedError(OracleError):
    """请求的求值阶数超出目标函数能力。"""

    pass


class NonFiniteValueError(OracleError):
    """目标函数返回了 NaN 或 Inf（通常是用户目标函数溢出）。"""

    pass


class NotPositiveSemidefiniteError(OracleError):
    """要求半正定的矩阵存在负特征值。"""

    pass


# ============================================================
# 数据集
# ============================================================

class DatasetError(CoreException):
    """数据集相关错误基类。"""

    pass


class LibsvmParseError(DatasetError):
    """LIBSVM 文本解析失败。

    Attributes:
        line: 出错行号（从 1 开始）
        column: 出错列号（从 1 开始）
    """

    def __init__(self, message: str, line: int, column: int | None = None) -> None:
        location = f"第 {line} 行" if column is None else f"第 {line} 行第 {column} 列"
        super().__init__(f"{message} ({location})", metadata={"line": line, "column": column})
        self.line = line
        self.column = column


class LabelMappingError(DatasetError):
    """标签无法映射到 {-1, +1}（多于两个不同取值）。"""

    pass


class EmptyDatasetError(DatasetError):
    """数据集为空。"""

    pass


# ============================================================
# 三次正则化子问题
# ============================================================

class SubproblemError(CoreException):
    """子问题求解错误基类。"""

    pass


class NonSymmetricHessianError(SubproblemError):
    """Hessian 不对称，无法做特征分解。"""

    pass


class SecularEquationError(SubproblemError):
    """长期方程（secular equation）求根不收敛。"""

    pass


class KrylovBudgetExceededError(SubproblemError):
    """Krylov 子空间维度用尽仍未满足终止条件。

    Attributes:
        best_step: 迄今找到的最好试探步
    """

    def __init__(self, message: str, best_step: Any, metadata: dict[str, Any] | None = None) -> None:
        super().__init__(message, metadata=metadata)
        self.best_step = best_step


class SubproblemIterationError(SubproblemError):
    """迭代型子问题求解器达到迭代上限。"""

    pass


# ============================================================
# 有限差分 Hessian
# ============================================================

class HessianApproximationError(CoreException):
    """有限差分 Hessian 相关错误基类。"""

    pass


class ShrinkBudgetExceededError(HessianApproximationError):
    """差分步长缩减次数超过预算（试探步趋于零）。"""

    pass


# ============================================================
# 估计序列
# ============================================================

class EstimateSequenceError(CoreException):
    """估计序列相关错误基类。"""

    pass


class VarsigmaDecreaseError(EstimateSequenceError):
    """试图减小估计序列的正则化权重 ς。"""

    pass


__all__ = [
    "CapabilityNotSupportedError",
    "CoreException",
    "DatasetError",
    "DimensionMismatchError",
    "EmptyDatasetError",
    "EstimateSequenceError",
    "HessianApproximationError",
    "KrylovBudgetExceededError",
    "LabelMappingError",
    "LibsvmParseError",
    "NonFiniteValueError",
    "NonSymmetricHessianError",
    "NotPositiveSemidefiniteError",
    "OracleError",
    "SecularEquationError",
    "ShrinkBudgetExceededError",
    "SubproblemError",
    "SubproblemIterationError",
    "VarsigmaDecreaseError",
]
