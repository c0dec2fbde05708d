"""测试工具模块。

提供随机问题工厂与求解结果的不变量检查。

注意：此模块需要 pytest 作为依赖，仅在开发环境可用。
"""

try:
    import pytest
except ImportError:
    raise ImportError("testing 模块需要 pytest，仅在开发环境可用")

from .factory import ProblemFactory
from .invariants import (
    assert_accelerated_descent_sign,
    assert_condition1_at_accepted_steps,
    assert_counters_consistent,
    assert_escalation_invariant,
    assert_fd_step_coupling,
    assert_monotone_trace,
    assert_sigma_floor,
)

__all__ = [
    "ProblemFactory",
    "assert_accelerated_descent_sign",
    "assert_condition1_at_accepted_steps",
    "assert_counters_consistent",
    "assert_escalation_invariant",
    "assert_fd_step_coupling",
    "assert_monotone_trace",
    "assert_sigma_floor",
]
