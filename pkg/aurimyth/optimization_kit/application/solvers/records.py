"""求解记录：迭代轨迹、接受步、ς 提升日志与最终结果。"""

from __future__ import annotations

from collections.abc import Callable
from dataclasses import dataclass, field
from enum import Enum
import time
from typing import Any

import numpy as np

from aurimyth.optimization_kit.domain.objectives import CountingOracle, OracleCallCounts, Vector


class Phase(str, Enum):
    """迭代所属阶段。"""

    SAS = "SAS"  # 简单自适应子程序（第一阶段）
    AAS = "AAS"  # 加速自适应子程序（第二阶段）
    ARC = "ARC"  # 非加速自适应三次正则化
    AGD = "AGD"  # Nesterov 加速梯度


class RunStatus(str, Enum):
    """求解终止状态。"""

    CONVERGED = "converged"
    BUDGET_EXHAUSTED = "budget_exhausted"
    SUBSOLVER_FAILURE = "subsolver_failure"


@dataclass(frozen=True, slots=True)
class TraceRecord:
    """一次外层迭代的记录。

    f 与 grad_norm 取当前迭代点（加速阶段为 x̄_l）；counters 为累计调用次数。
    """

    phase: Phase
    outer_index: int
    successful: bool
    l: int
    f: float
    grad_norm: float
    sigma: float
    varsigma: float | None
    wall_time: float
    counters: OracleCallCounts
    step_norm: float = 0.0


@dataclass(frozen=True, eq=False)
class AcceptedStep:
    """一次被接受的试探步，用于事后复核 Condition 1 与 h ≤ κ_hs‖s‖。"""

    phase: Phase
    outer_index: int
    base: Vector
    s: Vector
    sigma: float
    h: float | None = None


@dataclass(frozen=True, slots=True)
class EscalationRecord:
    """一次成功迭代后的 ς 提升结果（ψ_l(z_l) ≥ W_l·f(x̄_l) 在此成立）。"""

    l: int
    psi_min: float
    weighted_f: float
    varsigma: float
    escalations: int


@dataclass(frozen=True, slots=True)
class RoundRecord:
    """重启包装器中一轮结束时的状态。"""

    round: int
    f: float
    grad_norm: float
    l: int


@dataclass(eq=False)
class SolverRun:
    """完整求解结果。

    Attributes:
        solver: 求解器名称
        x_final: 最终迭代点
        f_final / grad_norm_final: 最终函数值与梯度范数
        T1: 第一阶段迭代次数
        T2: 第二阶段迭代次数
        T3: ς 累计提升次数
        T4: 差分步长累计缩减次数
        l: 成功次数
        trace: 迭代轨迹
        status: 终止状态
        message: 非收敛时的原因
    """

    solver: str
    x_final: Vector
    f_final: float
    grad_norm_final: float
    T1: int = 0
    T2: int = 0
    T3: int = 0
    T4: int = 0
    l: int = 0
    trace: list[TraceRecord] = field(default_factory=list)
    status: RunStatus = RunStatus.CONVERGED
    message: str = ""
    accepted_steps: list[AcceptedStep] = field(default_factory=list)
    escalation_log: list[EscalationRecord] = field(default_factory=list)
    rounds: list[RoundRecord] = field(default_factory=list)
    config: dict[str, Any] = field(default_factory=dict)
    wall_time: float = 0.0
    iterations: int = 0

    @property
    def converged(self) -> bool:
        return self.status is RunStatus.CONVERGED

    @property
    def oracle_calls(self) -> OracleCallCounts:
        """累计调用次数（等于最后一条轨迹的计数）。"""
        return self.trace[-1].counters.copy() if self.trace else OracleCallCounts()

    def successful_records(self) -> list[TraceRecord]:
        return [r for r in self.trace if r.successful]


class RunRecorder:
    """单次求解的轨迹记录器。

    外层迭代序号在各阶段之间全局递增；序号 0 保留给初始点。
    """

    def __init__(self, oracle: CountingOracle, clock: Callable[[], float] = time.perf_counter) -> None:
        self.oracle = oracle
        self._clock = clock
        self._start = clock()
        self._outer = 0
        self.trace: list[TraceRecord] = []
        self.accepted_steps: list[AcceptedStep] = []
        self.escalation_log: list[EscalationRecord] = []
        self.rounds: list[RoundRecord] = []

    @property
    def outer_index(self) -> int:
        return self._outer

    def elapsed(self) -> float:
        return self._clock() - self._start

    def next_outer(self) -> int:
        self._outer += 1
        return self._outer

    def record(
        self,
        phase: Phase,
        successful: bool,
        l: int,
        f: float,
        grad_norm: float,
        sigma: float,
        varsigma: float | None = None,
        step_norm: float = 0.0,
    ) -> TraceRecord:
        """追加一条轨迹记录（使用当前外层序号）。"""
        record = TraceRecord(
            phase=phase,
            outer_index=self._outer,
            successful=successful,
            l=l,
            f=float(f),
            grad_norm=float(grad_norm),
            sigma=float(sigma),
            varsigma=None if varsigma is None else float(varsigma),
            wall_time=self.elapsed(),
            counters=self.oracle.snapshot(),
            step_norm=float(step_norm),
        )
        self.trace.append(record)
        return record

    def accept(self, phase: Phase, base: Vector, s: Vector, sigma: float, h: float | None = None) -> None:
        self.accepted_steps.append(
            AcceptedStep(phase=phase, outer_index=self._outer, base=np.array(base), s=np.array(s), sigma=sigma, h=h)
        )


__all__ = [
    "AcceptedStep",
    "EscalationRecord",
    "Phase",
    "RoundRecord",
    "RunRecorder",
    "RunStatus",
    "SolverRun",
    "TraceRecord",
]
