"""Common 层 - 最基础层。

提供异常基类和日志系统，不依赖任何上层模块。
"""

from .exceptions import OptimizationError
from .logging import get_class_logger, logger, setup_logging

__all__ = [
    "OptimizationError",
    "get_class_logger",
    "logger",
    "setup_logging",
]
