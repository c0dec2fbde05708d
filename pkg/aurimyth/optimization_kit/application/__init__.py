"""应用层模块。

提供配置管理、求解器编排与基准测试。
"""

from . import bench, config, errors, solvers

__all__ = [
    "bench",
    "config",
    "errors",
    "solvers",
]
