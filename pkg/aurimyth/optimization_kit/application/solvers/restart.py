"""强凸问题的重启方案：每轮运行 m 次成功迭代后从当前点重新开始。"""

from __future__ import annotations

from enum import Enum

import numpy as np
from numpy.typing import ArrayLike

from aurimyth.optimization_kit.domain.objectives import ObjectiveOracle, gradient_only

from ..config import SolverSettings
from ..errors import UnknownSolverError
from .cubic import resolve_settings
from .engine import Iterate, PhaseOutcome, SolverSession, SuccessEvent, TwoPhaseEngine
from .records import Phase, RoundRecord, SolverRun
from .steps import GradientStep, HessianMode, make_cubic_step


class RestartableSolver(str, Enum):
    """可重启的两阶段求解器。"""

    AARC = "AARC"
    AARC_Q = "AARC_Q"
    AAGD = "AAGD"


def _open_session(
    solver: RestartableSolver, oracle: ObjectiveOracle, settings: SolverSettings
) -> tuple[SolverSession, TwoPhaseEngine]:
    name = f"{solver.value}_restart"
    match solver:
        case RestartableSolver.AARC:
            session = SolverSession(name, oracle, settings)
            return session, session.engine(make_cubic_step(session.oracle, settings, HessianMode.EXACT))
        case RestartableSolver.AARC_Q:
            session = SolverSession(name, gradient_only(oracle), settings)
            step = make_cubic_step(session.oracle, settings, HessianMode.FINITE_DIFFERENCE)
            return session, session.engine(step)
        case RestartableSolver.AAGD:
            session = SolverSession(name, gradient_only(oracle), settings)
            return session, session.engine(GradientStep(), eta=settings.eta_quadratic)


def _run_round(engine: TwoPhaseEngine, start: Iterate, sigma0: float, m: int) -> PhaseOutcome:
    """一轮：SAS 首次成功计为第 1 次，AAS 中成功次数达到 m 即停止。"""
    phase1 = engine.adaptive(start, sigma0, Phase.SAS, until_first_success=True)
    if phase1.converged or m == 1:
        return phase1

    def reached(event: SuccessEvent) -> bool:
        return event.l >= m

    return engine.accelerated(phase1.iterate, phase1.sigma, reached)


def restart_wrapper(
    solver: RestartableSolver | str,
    oracle: ObjectiveOracle,
    x0: ArrayLike,
    m: int,
    k: int,
    cfg: SolverSettings | None = None,
) -> SolverRun:
    """以 m 次成功迭代为一轮、共 k 轮地重启两阶段求解器。

    每轮从上一轮的 x̄ 出发，σ 回到 sigma0，估计序列重新初始化；
    轨迹、计数器与目标函数调用次数在各轮之间累计。
    任一轮达到 ‖∇f‖ ≤ grad_tol 即提前结束。

    Args:
        solver: AARC、AARC_Q 或 AAGD
        oracle: 目标函数
        x0: 初始点
        m: 每轮成功迭代次数（≥ 1）
        k: 轮数（≥ 1）
        cfg: 求解器配置

    Returns:
        SolverRun: rounds 中记录每轮结束时的状态

    Raises:
        UnknownSolverError: 求解器不支持重启
        ValueError: m 或 k 小于 1
    """
    try:
        solver = RestartableSolver(solver)
    except ValueError as e:
        raise UnknownSolverError(
            f"不支持重启的求解器: {solver}",
            metadata={"supported": [s.value for s in RestartableSolver]},
            cause=e,
        ) from e
    if m < 1 or k < 1:
        raise ValueError(f"m 与 k 必须 ≥ 1: m={m}, k={k}")

    settings = resolve_settings(cfg)
    session, engine = _open_session(solver, oracle, settings)

    def body() -> PhaseOutcome:
        current = engine.start(np.asarray(x0, dtype=np.float64), Phase.SAS)
        outcome = PhaseOutcome(current, settings.sigma0, converged=current.grad_norm <= settings.grad_tol)
        for index in range(1, k + 1):
            if outcome.converged:
                break
            successes_before = engine.l
            outcome = _run_round(engine, outcome.iterate, settings.sigma0, m)
            session.recorder.rounds.append(
                RoundRecord(
                    round=index,
                    f=outcome.iterate.f,
                    grad_norm=outcome.iterate.grad_norm,
                    l=engine.l - successes_before,
                )
            )
            session.logger.debug(f"重启第 {index} 轮结束: f={outcome.iterate.f:.10e}")
        return outcome

    return session.run(engine, body)


__all__ = [
    "RestartableSolver",
    "restart_wrapper",
]
