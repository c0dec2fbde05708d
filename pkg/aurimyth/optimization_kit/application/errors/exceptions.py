"""应用层异常类定义。

求解引擎、基准测试和配置覆盖相关的异常，继承自 OptimizationError。
公共 solve_* 接口不会因预算耗尽或子问题失败而抛出，
而是把这些异常转成 SolverRun.status；底层函数直接抛出。
"""

from __future__ import annotations

from typing import Any

from aurimyth.optimization_kit.common.exceptions import OptimizationError


class ApplicationError(OptimizationError):
    """应用层异常基类。

    子类可以覆盖 default_message，构造时省略 message 即使用默认消息。

    继承示例:
        class ReferenceRunError(BenchError):
            default_message = "参考求解未收敛"
    """

    default_message: str = "应用层错误"

    def __init__(
        self,
        message: str | None = None,
        *args: object,
        metadata: dict[str, Any] | None = None,
        cause: Exception | None = None,
    ) -> None:
        super().__init__(message or self.default_message, *args, metadata=metadata, cause=cause)


# ============================================================
# 配置
# ============================================================

class ConfigurationError(ApplicationError):
    """配置错误。"""

    default_message = "配置无效"


class InvalidOverrideError(ConfigurationError):
    """--set 覆盖项的键不存在或格式错误。"""

    default_message = "无效的配置覆盖项"


# ============================================================
# 求解器
# ============================================================

class SolverError(ApplicationError):
    """求解器错误基类。"""

    default_message = "求解失败"


class SolverBudgetExhaustedError(SolverError):
    """外层迭代次数用尽。"""

    default_message = "外层迭代预算耗尽"


class EscalationBudgetExceededError(SolverError):
    """单次成功后 ς 提升次数超过预算（数值失效）。"""

    default_message = "ς 提升次数超过预算"


class UnknownSolverError(SolverError):
    """求解器名称未注册。"""

    default_message = "未知的求解器"


# ============================================================
# 基准测试
# ============================================================

class BenchError(ApplicationError):
    """基准测试错误基类。"""

    default_message = "基准测试失败"


class ReferenceRunError(BenchError):
    """计算 f* 的高精度参考求解未收敛。"""

    default_message = "参考求解未收敛，无法确定 f*"


class OutputNotWritableError(BenchError):
    """输出目录不可写。"""

    default_message = "输出目录不可写"


__all__ = [
    "ApplicationError",
    "BenchError",
    "ConfigurationError",
    "EscalationBudgetExceededError",
    "InvalidOverrideError",
    "OutputNotWritableError",
    "ReferenceRunError",
    "SolverBudgetExhaustedError",
    "SolverError",
    "UnknownSolverError",
]
