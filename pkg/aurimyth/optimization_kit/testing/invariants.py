"""求解结果的结构性不变量检查。

每个函数在违反时抛出 AssertionError 并给出位置，供测试直接调用。
"""

from __future__ import annotations

import numpy as np

from aurimyth.optimization_kit.application.config import SolverSettings
from aurimyth.optimization_kit.application.solvers import Phase, SolverRun
from aurimyth.optimization_kit.domain.objectives import ObjectiveOracle
from aurimyth.optimization_kit.domain.subproblem import CubicModel, condition1_holds


def assert_sigma_floor(run: SolverRun, settings: SolverSettings) -> None:
    """σ ≥ σ_min 在每条记录上成立。"""
    for record in run.trace:
        assert record.sigma >= settings.sigma_min, f"outer={record.outer_index}: σ={record.sigma} < σ_min"


def assert_monotone_trace(run: SolverRun) -> None:
    """时间戳、外层序号与累计调用计数单调不减。"""
    for prev, cur in zip(run.trace, run.trace[1:], strict=False):
        assert cur.wall_time >= prev.wall_time, f"outer={cur.outer_index}: 时间戳倒退"
        assert cur.outer_index >= prev.outer_index, f"outer={cur.outer_index}: 序号倒退"
        for name in ("values", "gradients", "hvps", "fd_gradients"):
            assert getattr(cur.counters, name) >= getattr(prev.counters, name), f"outer={cur.outer_index}: {name} 减少"


def assert_escalation_invariant(run: SolverRun) -> None:
    """每次成功后的提升循环结束时 ψ_l(z_l) ≥ W_l·f(x̄_l)。"""
    for entry in run.escalation_log:
        assert entry.psi_min >= entry.weighted_f, f"l={entry.l}: ψ={entry.psi_min} < W·f={entry.weighted_f}"


def assert_condition1_at_accepted_steps(run: SolverRun, oracle: ObjectiveOracle, settings: SolverSettings) -> None:
    """精确 Hessian 下每个被接受的三次正则化步满足 Condition 1。"""
    for step in run.accepted_steps:
        model = CubicModel(
            f0=oracle.value(step.base), g=oracle.gradient(step.base), H=oracle.hessian(step.base), sigma=step.sigma
        )
        assert condition1_holds(model, step.s, settings.kappa_theta), f"outer={step.outer_index}: Condition 1 不成立"


def assert_fd_step_coupling(run: SolverRun, settings: SolverSettings) -> None:
    """差分模式下每个被接受的步满足 h ≤ κ_hs‖s‖。"""
    for step in run.accepted_steps:
        assert step.h is not None, f"outer={step.outer_index}: 缺少差分步长"
        bound = settings.fd.kappa_hs * float(np.linalg.norm(step.s))
        assert step.h <= bound, f"outer={step.outer_index}: h={step.h} > κ_hs‖s‖={bound}"


def assert_accelerated_descent_sign(run: SolverRun, oracle: ObjectiveOracle) -> None:
    """加速阶段每次成功都有 sᵀ∇f(y + s) < 0。"""
    for step in run.accepted_steps:
        if step.phase is not Phase.AAS:
            continue
        slope = float(step.s @ oracle.gradient(step.base + step.s))
        assert slope < 0, f"outer={step.outer_index}: sᵀ∇f(y+s)={slope} ≥ 0"


def assert_counters_consistent(run: SolverRun) -> None:
    """l ≤ T2 + 1，进入第二阶段时 T1 ≥ 1，且摘要计数等于最后一条记录。"""
    if any(r.phase is Phase.AAS for r in run.trace) and run.T2 > 0:
        assert run.T1 >= 1
        assert run.l <= run.T2 + 1
    if run.trace:
        assert run.oracle_calls == run.trace[-1].counters


__all__ = [
    "assert_accelerated_descent_sign",
    "assert_condition1_at_accepted_steps",
    "assert_counters_consistent",
    "assert_escalation_invariant",
    "assert_fd_step_coupling",
    "assert_monotone_trace",
    "assert_sigma_floor",
]
