"""一阶方法：加速自适应梯度法与 Nesterov 加速梯度基线。"""

from __future__ import annotations

import numpy as np
from numpy.typing import ArrayLike

from aurimyth.optimization_kit.domain.exceptions import SubproblemIterationError
from aurimyth.optimization_kit.domain.objectives import ObjectiveOracle, gradient_only

from ..config import SolverSettings
from .cubic import resolve_settings
from .engine import Iterate, PhaseOutcome, SolverSession, SuccessHook
from .records import Phase, SolverRun
from .steps import GradientStep

# 单次迭代内 L 加倍次数上限
MAX_BACKTRACKS = 60


def solve_aagd(
    oracle: ObjectiveOracle,
    x0: ArrayLike,
    cfg: SolverSettings | None = None,
    on_success: SuccessHook | None = None,
) -> SolverRun:
    """二次正则化的加速自适应梯度法。

    第一阶段以 m(s) = f + sᵀg + ½σ‖s‖² 判定成功；第二阶段使用二次估计序列，
    线性项权重为 l，y_l = (l·x̄_l + 2z_l)/(l + 2)，成功判据阈值为 eta_quadratic。
    """
    settings = resolve_settings(cfg)
    session = SolverSession("AAGD", gradient_only(oracle), settings)
    engine = session.engine(GradientStep(), eta=settings.eta_quadratic)

    def body():
        start = engine.start(x0, Phase.SAS)
        phase1 = engine.adaptive(start, settings.sigma0, Phase.SAS, until_first_success=True)
        if phase1.converged:
            return phase1
        return engine.accelerated(phase1.iterate, phase1.sigma, on_success)

    return session.run(engine, body)


def solve_agd_baseline(
    oracle: ObjectiveOracle,
    x0: ArrayLike,
    step_estimate: float | None = None,
    budget: int | None = None,
    cfg: SolverSettings | None = None,
) -> SolverRun:
    """带回溯的 Nesterov 加速梯度法（FISTA 形式的动量递推）。

    步长 1/L 从 step_estimate 开始，不满足充分下降
    f(y − g/L) ≤ f(y) − ‖g‖²/(2L) 时 L 加倍（步长减半）。
    轨迹中 sigma 列记录 L。

    Args:
        oracle: 一阶目标函数
        x0: 初始点
        step_estimate: 初始步长，默认 cfg.agd_step
        budget: 迭代上限，默认 cfg.max_outer
        cfg: 求解器配置（grad_tol 等）
    """
    settings = resolve_settings(cfg)
    step = settings.agd_step if step_estimate is None else step_estimate
    if not step > 0:
        raise ValueError(f"步长估计必须为正: {step}")
    if budget is not None:
        settings = settings.with_overrides({"max_outer": budget})
    session = SolverSession("AGD", gradient_only(oracle), settings)
    engine = session.engine(GradientStep())
    counting = session.oracle
    recorder = session.recorder

    def body() -> PhaseOutcome:
        x = engine.start(x0, Phase.AGD)
        lipschitz = 1.0 / step
        y = x
        t = 1.0
        while True:
            engine.current, engine.sigma = x, lipschitz
            if x.grad_norm <= settings.grad_tol:
                return PhaseOutcome(x, lipschitz, converged=True)
            engine.next_outer()
            engine.T1 += 1

            g_y_sq = float(y.g @ y.g)
            for _ in range(MAX_BACKTRACKS):
                x_point = y.x - y.g / lipschitz
                f_point = counting.value(x_point)
                if f_point <= y.f - 0.5 * g_y_sq / lipschitz:
                    break
                lipschitz *= 2.0
            else:
                raise SubproblemIterationError(
                    f"回溯 {MAX_BACKTRACKS} 次后仍不满足充分下降",
                    metadata={"lipschitz": lipschitz, "f_y": y.f},
                )

            x_prev, x = x, Iterate(x_point, f_point, counting.gradient(x_point))
            engine.l += 1
            recorder.record(Phase.AGD, True, engine.l, x.f, x.grad_norm, lipschitz, None,
                            float(np.linalg.norm(x.x - x_prev.x)))
            if x.grad_norm <= settings.grad_tol:
                engine.current = x
                return PhaseOutcome(x, lipschitz, converged=True)

            t_next = 0.5 * (1.0 + np.sqrt(1.0 + 4.0 * t * t))
            y = engine.evaluate(x.x + ((t - 1.0) / t_next) * (x.x - x_prev.x))
            t = t_next

    return session.run(engine, body)


__all__ = [
    "MAX_BACKTRACKS",
    "solve_aagd",
    "solve_agd_baseline",
]
