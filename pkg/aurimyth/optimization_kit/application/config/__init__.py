"""配置模块。

使用 pydantic-settings 进行分层配置管理。
"""

from .settings import (
    BenchSettings,
    FiniteDifferenceSettings,
    HybridSwitchRule,
    LogSettings,
    OnSuccessSigma,
    OptimizationConfig,
    SolverSettings,
)

__all__ = [
    "BenchSettings",
    "FiniteDifferenceSettings",
    "HybridSwitchRule",
    "LogSettings",
    "OnSuccessSigma",
    "OptimizationConfig",
    "SolverSettings",
]
