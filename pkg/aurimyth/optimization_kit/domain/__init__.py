"""Domain 层 - 领域层。

包含目标函数、三次正则化子问题、有限差分 Hessian 与估计序列等
纯数值领域逻辑，不依赖配置和命令行。
"""

from __future__ import annotations

__all__ = [
    "estimate",
    "exceptions",
    "hessian",
    "models",
    "objectives",
    "subproblem",
]
