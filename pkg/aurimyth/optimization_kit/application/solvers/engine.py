"""两阶段自适应求解引擎。

第一阶段（SAS）：在 x 处求解正则化模型，f(x+s) − m(x,s,σ) < 0 即成功。
第二阶段（AAS）：维护 (x̄_l, y_l, z_l) 与估计序列 ψ_l，在 y_l 处求步，
ρ = −sᵀ∇f(y+s)/‖s‖^p ≥ η 即成功；每次成功后提升 ς 直到
ψ_l(z_l) ≥ W_l·f(x̄_l)，再令 y_l = (1 − τ_l)x̄_l + τ_l z_l。

三次正则化（精确/差分 Hessian）与梯度方法共用同一个引擎，
区别只在 StepProvider。非加速的 ARC 基线即不在首次成功后停止的 SAS 循环。
"""

from __future__ import annotations

from collections.abc import Callable
from dataclasses import dataclass
import time

import numpy as np
from numpy.typing import ArrayLike

from aurimyth.optimization_kit.common.logging import get_class_logger, log_exception
from aurimyth.optimization_kit.domain.estimate import (
    EstimateState,
    add_linear,
    init_estimate,
    linear_weight,
    minimize_estimate,
    mixing_weight,
    raise_varsigma,
    target_weight,
)
from aurimyth.optimization_kit.domain.exceptions import (
    EstimateSequenceError,
    HessianApproximationError,
    NonFiniteValueError,
    SubproblemError,
)
from aurimyth.optimization_kit.domain.objectives import CountingOracle, ObjectiveOracle, Vector

from ..config import OnSuccessSigma, SolverSettings
from ..errors import EscalationBudgetExceededError, SolverBudgetExhaustedError
from .records import EscalationRecord, Phase, RunRecorder, RunStatus, SolverRun
from .steps import StepProvider

# 映射为 subsolver_failure 的异常
SUBSOLVER_FAILURES = (
    SubproblemError,
    HessianApproximationError,
    EstimateSequenceError,
    EscalationBudgetExceededError,
    NonFiniteValueError,
)


@dataclass(frozen=True, eq=False)
class Iterate:
    """带缓存函数值与梯度的迭代点。"""

    x: Vector
    f: float
    g: Vector

    @property
    def grad_norm(self) -> float:
        return float(np.linalg.norm(self.g))


@dataclass(frozen=True, eq=False)
class SuccessEvent:
    """加速阶段一次成功迭代后的状态，供切换/截断判据使用。"""

    l: int
    xbar: Iterate
    previous: Iterate
    sigma: float
    varsigma: float


@dataclass(frozen=True, eq=False)
class PhaseOutcome:
    """一个阶段结束时的状态。

    Attributes:
        iterate: 当前迭代点（加速阶段为 x̄_l）
        sigma: 结束时的 σ
        converged: 是否满足 ‖∇f‖ ≤ grad_tol
        stopped: 是否被回调提前终止
    """

    iterate: Iterate
    sigma: float
    converged: bool
    stopped: bool = False


SuccessHook = Callable[[SuccessEvent], bool]


class TwoPhaseEngine:
    """两阶段求解引擎（单次求解内顺序执行）。

    Attributes:
        T1: SAS 迭代次数
        T2: AAS 迭代次数
        T3: ς 累计提升次数
        T4: 差分步长累计缩减次数
        l: 累计成功次数
    """

    def __init__(
        self,
        oracle: CountingOracle,
        step: StepProvider,
        settings: SolverSettings,
        recorder: RunRecorder,
        eta: float | None = None,
    ) -> None:
        self.oracle = oracle
        self.step = step
        self.settings = settings
        self.recorder = recorder
        self.eta = settings.eta if eta is None else eta
        self.logger = get_class_logger(self)
        self.T1 = 0
        self.T2 = 0
        self.T3 = 0
        self.T4 = 0
        self.l = 0
        self.current: Iterate | None = None
        self.sigma = settings.sigma0
        self.varsigma: float | None = None
        self.phase = Phase.SAS

    # ------------------------------------------------------------
    # 基础操作
    # ------------------------------------------------------------

    def evaluate(self, x: ArrayLike) -> Iterate:
        x = np.asarray(x, dtype=np.float64)
        f, g = self.oracle.value_and_gradient(x)
        return Iterate(x, f, g)

    def start(self, x0: ArrayLike, phase: Phase) -> Iterate:
        """在 x0 处求值并写入序号为 0 的初始记录。"""
        self.phase = phase
        self.current = self.evaluate(np.array(x0, dtype=np.float64))
        self.recorder.record(phase, False, self.l, self.current.f, self.current.grad_norm, self.sigma)
        return self.current

    def _shrink_sigma(self, sigma: float) -> float:
        match self.settings.on_success_sigma:
            case OnSuccessSigma.KEEP:
                return sigma
            case OnSuccessSigma.FLOOR:
                return self.settings.sigma_min
            case _:
                return max(self.settings.sigma_min, sigma / self.settings.gamma1)

    def _inflate_sigma(self, sigma: float) -> float:
        return self.settings.gamma1 * sigma

    def next_outer(self) -> int:
        if self.recorder.outer_index >= self.settings.max_outer:
            raise SolverBudgetExhaustedError(
                f"外层迭代达到上限 {self.settings.max_outer}（目标函数可能不满足 Lipschitz 或凸性假设）",
                metadata={"max_outer": self.settings.max_outer, "phase": self.phase.value},
            )
        return self.recorder.next_outer()

    def _is_null_step(self, s: Vector, x: Vector) -> bool:
        return float(np.linalg.norm(s)) <= self.settings.step_floor * (1.0 + float(np.linalg.norm(x)))

    def _record(self, successful: bool, it: Iterate, sigma: float, step_norm: float = 0.0) -> None:
        self.recorder.record(
            self.phase, successful, self.l, it.f, it.grad_norm, sigma, self.varsigma, step_norm
        )

    def record_failure_state(self) -> None:
        """异常终止时补一条记录，使最后一行的计数与结果一致。"""
        if self.current is not None:
            self._record(False, self.current, self.sigma)

    # ------------------------------------------------------------
    # 第一阶段 / ARC
    # ------------------------------------------------------------

    def adaptive(self, it: Iterate, sigma: float, phase: Phase, until_first_success: bool) -> PhaseOutcome:
        """自适应正则化循环。

        until_first_success 为真时即 SAS（首次成功后返回），否则为 ARC 基线
        （直到 ‖∇f‖ ≤ grad_tol）。

        Raises:
            SolverBudgetExhaustedError: 外层迭代预算耗尽
        """
        self.phase = phase
        self.varsigma = None
        tol = self.settings.grad_tol
        while True:
            self.current, self.sigma = it, sigma
            if it.grad_norm <= tol:
                return PhaseOutcome(it, sigma, converged=True)

            self.next_outer()
            if phase is Phase.SAS:
                self.T1 += 1
            trial = self.step.trial_step(it.x, it.f, it.g, sigma)
            self.T4 += trial.shrinks

            if self._is_null_step(trial.s, it.x):
                self._record(False, it, sigma)
                sigma = self._inflate_sigma(sigma)
                continue

            x_new = it.x + trial.s
            f_new = self.oracle.value(x_new)
            if f_new - trial.model_value < 0:
                self.recorder.accept(phase, it.x, trial.s, sigma, trial.h)
                it = Iterate(x_new, f_new, self.oracle.gradient(x_new))
                self.l += 1
                self._record(True, it, sigma, trial.norm)
                self.logger.debug(
                    f"{phase.value} 第 {self.recorder.outer_index} 次迭代成功: f={f_new:.6e}, σ={sigma:.3e}"
                )
                sigma = self._shrink_sigma(sigma)
                if until_first_success:
                    self.current, self.sigma = it, sigma
                    return PhaseOutcome(it, sigma, converged=it.grad_norm <= tol)
            else:
                self._record(False, it, sigma, trial.norm)
                sigma = self._inflate_sigma(sigma)

    # ------------------------------------------------------------
    # 第二阶段
    # ------------------------------------------------------------

    def _escalate(self, estimate: EstimateState, weighted_f: float) -> tuple[EstimateState, Vector, float, int]:
        """按 γ₃ 提升 ς 直到 ψ_l(z_l) ≥ weighted_f。

        Raises:
            EscalationBudgetExceededError: 超过单次成功的提升预算
        """
        z, psi = minimize_estimate(estimate)
        count = 0
        while psi < weighted_f:
            if count >= self.settings.max_escalations_per_success:
                raise EscalationBudgetExceededError(
                    f"ς 连续提升 {count} 次仍有 ψ_l(z_l) < W_l·f(x̄_l)",
                    metadata={"l": estimate.l, "psi_min": psi, "weighted_f": weighted_f, "varsigma": estimate.varsigma},
                )
            estimate = raise_varsigma(estimate, self.settings.gamma3 * estimate.varsigma)
            z, psi = minimize_estimate(estimate)
            count += 1
        return estimate, z, psi, count

    def accelerated(self, xbar: Iterate, sigma: float, on_success: SuccessHook | None = None) -> PhaseOutcome:
        """加速自适应子程序。

        Args:
            xbar: x̄₁（SAS 的结果）
            sigma: 沿用的 σ
            on_success: 每次成功后调用，返回 True 时提前结束

        Raises:
            SolverBudgetExhaustedError: 外层迭代预算耗尽
            EscalationBudgetExceededError: ς 提升次数超过预算
        """
        self.phase = Phase.AAS
        degree = self.step.degree
        power = self.step.power
        tol = self.settings.grad_tol
        estimate = init_estimate(degree, xbar.x, xbar.f, self.settings.varsigma1)
        self.varsigma = estimate.varsigma
        z, _ = minimize_estimate(estimate)
        tau = mixing_weight(degree, estimate.l)
        y_point = (1.0 - tau) * xbar.x + tau * z
        y = xbar if np.array_equal(y_point, xbar.x) else self.evaluate(y_point)
        self.current, self.sigma = xbar, sigma

        while True:
            self.next_outer()
            self.T2 += 1
            trial = self.step.trial_step(y.x, y.f, y.g, sigma)
            self.T4 += trial.shrinks

            if self._is_null_step(trial.s, y.x):
                if y.grad_norm <= tol:
                    self.current = y
                    self._record(False, y, sigma)
                    return PhaseOutcome(y, sigma, converged=True)
                self._record(False, xbar, sigma)
                sigma = self.sigma = self._inflate_sigma(sigma)
                continue

            x_new = y.x + trial.s
            g_new = self.oracle.gradient(x_new)
            rho = -float(trial.s @ g_new) / trial.norm**power
            if rho < self.eta:
                self._record(False, xbar, sigma, trial.norm)
                sigma = self.sigma = self._inflate_sigma(sigma)
                continue

            self.recorder.accept(Phase.AAS, y.x, trial.s, sigma, trial.h)
            accepted = Iterate(x_new, self.oracle.value(x_new), g_new)
            self.l += 1
            l = estimate.l + 1
            point = xbar if self.settings.lagged_linear_point else accepted
            estimate = add_linear(estimate, linear_weight(degree, l), point.x, point.f, point.g)
            weighted_f = target_weight(degree, l) * accepted.f
            estimate, z, psi, escalations = self._escalate(estimate, weighted_f)
            self.T3 += escalations
            self.varsigma = estimate.varsigma
            self.recorder.escalation_log.append(
                EscalationRecord(l=l, psi_min=psi, weighted_f=weighted_f, varsigma=estimate.varsigma, escalations=escalations)
            )

            previous, xbar = xbar, accepted
            used_sigma = sigma
            sigma = self._shrink_sigma(sigma)
            self.current, self.sigma = xbar, sigma
            if xbar.grad_norm <= tol:
                self._record(True, xbar, used_sigma, trial.norm)
                return PhaseOutcome(xbar, sigma, converged=True)

            tau = mixing_weight(degree, l)
            y = self.evaluate((1.0 - tau) * xbar.x + tau * z)
            self._record(True, xbar, used_sigma, trial.norm)
            self.logger.debug(
                f"AAS 成功 l={l}: f(x̄)={xbar.f:.6e}, ρ={rho:.3e}, σ={used_sigma:.3e}, ς={estimate.varsigma:.3e}"
            )
            event = SuccessEvent(l=l, xbar=xbar, previous=previous, sigma=sigma, varsigma=estimate.varsigma)
            if on_success is not None and on_success(event):
                return PhaseOutcome(xbar, sigma, converged=False, stopped=True)


class SolverSession:
    """一次求解的上下文：计数包装、轨迹记录与异常到状态的映射。

    使用示例:
        session = SolverSession("AARC", oracle, settings)
        engine = session.engine(make_cubic_step(session.oracle, settings, "exact"))
        run = session.run(engine, lambda: engine.accelerated(...))
    """

    def __init__(
        self,
        name: str,
        oracle: ObjectiveOracle,
        settings: SolverSettings,
        clock: Callable[[], float] = time.perf_counter,
    ) -> None:
        self.name = name
        self.settings = settings
        self.oracle = CountingOracle(oracle)
        self.recorder = RunRecorder(self.oracle, clock)
        self.logger = get_class_logger(self)

    def engine(self, step: StepProvider, eta: float | None = None) -> TwoPhaseEngine:
        return TwoPhaseEngine(self.oracle, step, self.settings, self.recorder, eta)

    def run(self, engine: TwoPhaseEngine, body: Callable[[], PhaseOutcome | None]) -> SolverRun:
        """执行求解主体并组装 SolverRun；预算耗尽与子问题失败转为状态。"""
        self.logger.info(f"{self.name} 开始求解: d={self.oracle.dimension}, 参数={self.settings.resolved()}")
        status, message = RunStatus.CONVERGED, ""
        try:
            outcome = body()
            if outcome is not None and not outcome.converged:
                status = RunStatus.BUDGET_EXHAUSTED
                message = "未达到梯度阈值即结束"
        except SolverBudgetExhaustedError as e:
            status, message = RunStatus.BUDGET_EXHAUSTED, str(e)
            engine.record_failure_state()
            log_exception(f"{self.name} 预算耗尽", level="WARNING", context={"solver": self.name, "l": engine.l})
        except SUBSOLVER_FAILURES as e:
            status, message = RunStatus.SUBSOLVER_FAILURE, f"{type(e).__name__}: {e}"
            engine.record_failure_state()
            log_exception(f"{self.name} 子问题失败", context={"solver": self.name, "l": engine.l})

        return self.build(engine, status, message)

    def build(self, engine: TwoPhaseEngine, status: RunStatus, message: str) -> SolverRun:
        current = engine.current
        run = SolverRun(
            solver=self.name,
            x_final=current.x.copy(),
            f_final=current.f,
            grad_norm_final=current.grad_norm,
            T1=engine.T1,
            T2=engine.T2,
            T3=engine.T3,
            T4=engine.T4,
            l=engine.l,
            trace=list(self.recorder.trace),
            status=status,
            message=message,
            accepted_steps=list(self.recorder.accepted_steps),
            escalation_log=list(self.recorder.escalation_log),
            rounds=list(self.recorder.rounds),
            config=self.settings.resolved(),
            wall_time=self.recorder.elapsed(),
            iterations=self.recorder.outer_index,
        )
        self.logger.info(
            f"{self.name} 结束: status={status.value}, f={run.f_final:.10e}, ‖∇f‖={run.grad_norm_final:.3e}, "
            f"T1={run.T1}, T2={run.T2}, T3={run.T3}, T4={run.T4}, l={run.l}"
        )
        return run


__all__ = [
    "SUBSOLVER_FAILURES",
    "Iterate",
    "PhaseOutcome",
    "SolverSession",
    "SuccessEvent",
    "SuccessHook",
    "TwoPhaseEngine",
]
