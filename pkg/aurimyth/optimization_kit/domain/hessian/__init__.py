"""有限差分 Hessian 模块。"""

from .finite_difference import (
    FDHessianConfig,
    GradientFn,
    StepPair,
    fd_hessian,
    search_step_pair,
)

__all__ = [
    "FDHessianConfig",
    "GradientFn",
    "StepPair",
    "fd_hessian",
    "search_step_pair",
]
