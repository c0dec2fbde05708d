"""混合策略：加速阶段进展变慢后切换到非加速的自适应三次正则化循环。"""

from __future__ import annotations

from numpy.typing import ArrayLike

from aurimyth.optimization_kit.common.logging import logger
from aurimyth.optimization_kit.domain.objectives import ObjectiveOracle, TestFunctionMeta

from ..config import HybridSwitchRule, SolverSettings
from .cubic import resolve_settings
from .diagnostics import ProblemConstants, quadratic_region_threshold
from .engine import PhaseOutcome, SolverSession, SuccessEvent, SuccessHook
from .records import Phase, SolverRun
from .steps import HessianMode, make_cubic_step


def relative_progress_rule(window: int, ratio: float) -> SuccessHook:
    """成功次数超过 window 且 |f(x̄_l) − f(x̄_{l−1})|/|f(x̄_{l−1})| ≤ ratio 时切换。"""

    def should_switch(event: SuccessEvent) -> bool:
        if event.l <= window:
            return False
        prev = event.previous.f
        return abs(event.xbar.f - prev) <= ratio * abs(prev)

    return should_switch


def quadratic_region_rule(meta: TestFunctionMeta, settings: SolverSettings) -> SuccessHook:
    """f(x̄_l) − f* 进入局部二次收敛区域时切换。"""
    threshold = quadratic_region_threshold(ProblemConstants.from_meta(meta), settings)
    fstar = meta.known_fstar

    def should_switch(event: SuccessEvent) -> bool:
        return event.xbar.f - fstar <= threshold

    return should_switch


def _switch_rule(settings: SolverSettings, window: int, ratio: float, meta: TestFunctionMeta | None) -> SuccessHook:
    if settings.hybrid_switch_rule == HybridSwitchRule.QUADRATIC_REGION:
        if meta is not None and meta.known_fstar is not None:
            return quadratic_region_rule(meta, settings)
        logger.warning("quadratic_region 切换规则需要已知 f* 与问题常数，退回相对进展规则")
    return relative_progress_rule(window, ratio)


def solve_hybrid_aarc(
    oracle: ObjectiveOracle,
    x0: ArrayLike,
    cfg: SolverSettings | None = None,
    switch_window: int | None = None,
    switch_ratio: float | None = None,
    meta: TestFunctionMeta | None = None,
) -> SolverRun:
    """混合 AARC：先运行加速方法，满足切换判据后从当前 x̄_l 继续 ARC 循环。

    切换时丢弃估计序列，σ 沿用；ARC 阶段运行到 ‖∇f‖ ≤ grad_tol。

    Args:
        oracle: 支持二阶求值或 Hessian-向量积的目标函数
        x0: 初始点
        cfg: 求解器配置
        switch_window: 切换前至少需要的成功次数，默认 cfg.hybrid_switch_window
        switch_ratio: 相对进展阈值，默认 cfg.hybrid_switch_ratio
        meta: 已知问题常数（quadratic_region 规则使用）
    """
    settings = resolve_settings(cfg)
    window = settings.hybrid_switch_window if switch_window is None else switch_window
    ratio = settings.hybrid_switch_ratio if switch_ratio is None else switch_ratio
    should_switch = _switch_rule(settings, window, ratio, meta)

    session = SolverSession("AARC_hybrid", oracle, settings)
    engine = session.engine(make_cubic_step(session.oracle, settings, HessianMode.EXACT))

    def body() -> PhaseOutcome:
        start = engine.start(x0, Phase.SAS)
        phase1 = engine.adaptive(start, settings.sigma0, Phase.SAS, until_first_success=True)
        if phase1.converged:
            return phase1
        phase2 = engine.accelerated(phase1.iterate, phase1.sigma, should_switch)
        if not phase2.stopped:
            return phase2
        session.logger.info(f"l={engine.l} 时切换到 ARC 阶段: f={phase2.iterate.f:.10e}, σ={phase2.sigma:.3e}")
        return engine.adaptive(phase2.iterate, phase2.sigma, Phase.ARC, until_first_success=False)

    return session.run(engine, body)


__all__ = [
    "quadratic_region_rule",
    "relative_progress_rule",
    "solve_hybrid_aarc",
]
