"""三次正则化牛顿法：加速版本（精确 / 差分 Hessian）与 ARC 基线。"""

from __future__ import annotations

from dataclasses import dataclass

from numpy.typing import ArrayLike

from aurimyth.optimization_kit.domain.objectives import ObjectiveOracle, Vector, gradient_only

from ..config import SolverSettings
from .engine import SolverSession, SuccessHook
from .records import Phase, SolverRun, TraceRecord
from .steps import HessianMode, make_cubic_step


def resolve_settings(cfg: SolverSettings | None) -> SolverSettings:
    return cfg if cfg is not None else SolverSettings()


@dataclass(frozen=True, eq=False)
class SASResult:
    """第一阶段结果。"""

    x: Vector
    f: float
    g: Vector
    sigma: float
    T1: int
    trace: list[TraceRecord]
    converged: bool


def sas_cubic(
    oracle: ObjectiveOracle,
    x0: ArrayLike,
    sigma0: float | None = None,
    cfg: SolverSettings | None = None,
    hessian_mode: HessianMode | str = HessianMode.EXACT,
) -> SASResult:
    """第一阶段：重复自适应三次正则化步直到一次成功。

    梯度为零的起点直接返回（T1 = 0，不求解子问题）。

    Raises:
        SolverBudgetExhaustedError: 外层预算耗尽
        SubproblemError / HessianApproximationError: 子问题失败
    """
    settings = resolve_settings(cfg)
    if sigma0 is not None:
        settings = settings.with_overrides({"sigma0": sigma0})
    session = SolverSession("SAS", oracle, settings)
    engine = session.engine(make_cubic_step(session.oracle, settings, hessian_mode))
    outcome = engine.adaptive(engine.start(x0, Phase.SAS), settings.sigma0, Phase.SAS, until_first_success=True)
    return SASResult(
        x=outcome.iterate.x,
        f=outcome.iterate.f,
        g=outcome.iterate.g,
        sigma=outcome.sigma,
        T1=engine.T1,
        trace=list(session.recorder.trace),
        converged=outcome.converged,
    )


def aas_cubic(
    oracle: ObjectiveOracle,
    xbar1: ArrayLike,
    sigma_in: float,
    cfg: SolverSettings | None = None,
    hessian_mode: HessianMode | str = HessianMode.EXACT,
    on_success: SuccessHook | None = None,
) -> SolverRun:
    """第二阶段：从 x̄₁ 出发的加速自适应子程序。"""
    settings = resolve_settings(cfg)
    session = SolverSession("AAS", oracle, settings)
    engine = session.engine(make_cubic_step(session.oracle, settings, hessian_mode))

    def body():
        xbar = engine.start(xbar1, Phase.AAS)
        engine.l = 1
        if xbar.grad_norm <= settings.grad_tol:
            return None
        return engine.accelerated(xbar, sigma_in, on_success)

    return session.run(engine, body)


def _solve_accelerated_cubic(
    name: str,
    oracle: ObjectiveOracle,
    x0: ArrayLike,
    settings: SolverSettings,
    hessian_mode: HessianMode,
    on_success: SuccessHook | None = None,
) -> SolverRun:
    session = SolverSession(name, oracle, settings)
    engine = session.engine(make_cubic_step(session.oracle, settings, hessian_mode))

    def body():
        start = engine.start(x0, Phase.SAS)
        phase1 = engine.adaptive(start, settings.sigma0, Phase.SAS, until_first_success=True)
        if phase1.converged:
            return phase1
        return engine.accelerated(phase1.iterate, phase1.sigma, on_success)

    return session.run(engine, body)


def solve_aarc(oracle: ObjectiveOracle, x0: ArrayLike, cfg: SolverSettings | None = None) -> SolverRun:
    """加速自适应三次正则化牛顿法（精确 Hessian）。

    Args:
        oracle: 支持二阶求值或 Hessian-向量积的目标函数
        x0: 初始点
        cfg: 求解器配置

    Returns:
        SolverRun: 预算耗尽或子问题失败时 status 相应标记，不抛出
    """
    return _solve_accelerated_cubic("AARC", oracle, x0, resolve_settings(cfg), HessianMode.EXACT)


def solve_aarcq(oracle: ObjectiveOracle, x0: ArrayLike, cfg: SolverSettings | None = None) -> SolverRun:
    """加速自适应三次正则化牛顿法（差分近似 Hessian）。

    只使用函数值与梯度；每次子问题都经过差分步长与试探步的耦合搜索，
    缩减次数累计到 T4。
    """
    return _solve_accelerated_cubic(
        "AARC_Q", gradient_only(oracle), x0, resolve_settings(cfg), HessianMode.FINITE_DIFFERENCE
    )


def solve_arc_baseline(
    oracle: ObjectiveOracle,
    x0: ArrayLike,
    cfg: SolverSettings | None = None,
    hessian_mode: HessianMode | str = HessianMode.EXACT,
) -> SolverRun:
    """非加速自适应三次正则化（ARC）基线，运行到 ‖∇f‖ ≤ grad_tol。"""
    settings = resolve_settings(cfg)
    mode = HessianMode(hessian_mode)
    if mode is HessianMode.FINITE_DIFFERENCE:
        oracle = gradient_only(oracle)
    session = SolverSession("ARC", oracle, settings)
    engine = session.engine(make_cubic_step(session.oracle, settings, mode))

    def body():
        start = engine.start(x0, Phase.ARC)
        return engine.adaptive(start, settings.sigma0, Phase.ARC, until_first_success=False)

    return session.run(engine, body)


__all__ = [
    "SASResult",
    "aas_cubic",
    "resolve_settings",
    "sas_cubic",
    "solve_aarc",
    "solve_aarcq",
    "solve_arc_baseline",
]
