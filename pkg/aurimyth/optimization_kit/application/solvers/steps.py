"""试探步提供者。

两阶段引擎只关心"在 (x, f, g, σ) 处给出试探步 s 与模型值 m(s)"，
以及加速阶段成功判据 ρ = −sᵀ∇f(y+s)/‖s‖^p 中的幂次 p：
- ExactCubicStep: 精确 Hessian 的三次正则化步（p = 3）
- FiniteDifferenceCubicStep: 差分近似 Hessian 的三次正则化步（p = 3）
- GradientStep: 二次正则化步 s = −g/σ（p = 2）
"""

from __future__ import annotations

from abc import ABC, abstractmethod
from dataclasses import dataclass
from enum import Enum

import numpy as np

from aurimyth.optimization_kit.common.logging import get_class_logger
from aurimyth.optimization_kit.domain.estimate import RegularizerDegree
from aurimyth.optimization_kit.domain.hessian import FDHessianConfig, search_step_pair
from aurimyth.optimization_kit.domain.objectives import Capability, CountingOracle, Vector
from aurimyth.optimization_kit.domain.subproblem import (
    CubicModel,
    SubproblemSolution,
    SubproblemSolver,
    SubproblemSolverFactory,
    build_solution,
    rescale_to_stationarity,
)

from ..config import SolverSettings


class HessianMode(str, Enum):
    """二阶信息来源。"""

    EXACT = "exact"
    FINITE_DIFFERENCE = "finite_difference"


@dataclass(frozen=True, eq=False)
class TrialStep:
    """一次试探步。

    Attributes:
        s: 试探步
        model_value: m(x, s, σ)
        h: 差分步长（仅差分模式）
        shrinks: 本次差分步长缩减次数
    """

    s: Vector
    model_value: float
    h: float | None = None
    shrinks: int = 0

    @property
    def norm(self) -> float:
        return float(np.linalg.norm(self.s))


class StepProvider(ABC):
    """试探步提供者接口。"""

    degree: RegularizerDegree
    power: int

    @abstractmethod
    def trial_step(self, x: Vector, f: float, g: Vector, sigma: float) -> TrialStep:
        """在 x 处求解正则化模型得到试探步。"""


def create_subsolver(settings: SolverSettings) -> SubproblemSolver:
    """按配置创建子问题求解器。"""
    match settings.subproblem_solver:
        case "lanczos":
            return SubproblemSolverFactory.create(
                "lanczos", max_dim=settings.lanczos_max_dim, tol=settings.subproblem_tol
            )
        case "dense":
            return SubproblemSolverFactory.create("dense", tol=settings.subproblem_tol)
        case _:
            return SubproblemSolverFactory.create(
                settings.subproblem_solver, max_iterations=settings.gd_max_iterations
            )


class _CubicStepBase(StepProvider):
    degree = RegularizerDegree.CUBIC
    power = 3

    def __init__(self, subsolver: SubproblemSolver, kappa_theta: float, require_stationarity: bool) -> None:
        self.subsolver = subsolver
        self.kappa_theta = kappa_theta
        self.require_stationarity = require_stationarity
        self.logger = get_class_logger(self)

    def _enforce_stationarity(self, model: CubicModel, solution: SubproblemSolution) -> SubproblemSolution:
        """驻点恒等式不成立时沿 s 一维极小化，仍满足 Condition 1 才替换。"""
        if not self.require_stationarity or solution.satisfied_stationarity:
            return solution
        rescaled = build_solution(
            model,
            rescale_to_stationarity(model, solution.s),
            self.kappa_theta,
            krylov_dim=solution.krylov_dim,
            iterations=solution.iterations,
        )
        if rescaled.satisfied_condition1:
            return rescaled
        self.logger.debug(f"驻点恒等式残差 {solution.stationarity_residual:.3e}，保留原试探步")
        return solution


class ExactCubicStep(_CubicStepBase):
    """精确 Hessian 的三次正则化试探步。

    Lanczos 求解器通过 Hessian-向量积访问 H（目标函数支持时），
    其余求解器使用显式 Hessian。
    """

    def __init__(
        self,
        oracle: CountingOracle,
        subsolver: SubproblemSolver,
        kappa_theta: float,
        require_stationarity: bool = True,
    ) -> None:
        super().__init__(subsolver, kappa_theta, require_stationarity)
        self.oracle = oracle
        self._use_operator = oracle.supports(Capability.HESSIAN_VECTOR_PRODUCT) and (
            subsolver.name == "lanczos" or not oracle.supports(Capability.HESSIAN)
        )

    def trial_step(self, x: Vector, f: float, g: Vector, sigma: float) -> TrialStep:
        H = self.oracle.hessian_operator(x) if self._use_operator else self.oracle.hessian(x)
        model = CubicModel(f0=f, g=g, H=H, sigma=sigma)
        solution = self._enforce_stationarity(model, self.subsolver.solve(model, self.kappa_theta))
        return TrialStep(s=solution.s, model_value=solution.model_value)


class FiniteDifferenceCubicStep(_CubicStepBase):
    """差分近似 Hessian 的三次正则化试探步。

    差分步长 h 在整个求解过程中沿用上一次的结果，因而单调不增。
    """

    def __init__(
        self,
        oracle: CountingOracle,
        subsolver: SubproblemSolver,
        kappa_theta: float,
        fd: FDHessianConfig,
        require_stationarity: bool = True,
    ) -> None:
        super().__init__(subsolver, kappa_theta, require_stationarity)
        self.oracle = oracle
        self.fd = fd
        self.h = fd.h_init

    def trial_step(self, x: Vector, f: float, g: Vector, sigma: float) -> TrialStep:
        pair = search_step_pair(
            self.oracle.fd_gradient, x, f, g, sigma, self.fd, self.kappa_theta, self.h, self.subsolver
        )
        self.h = pair.h
        solution = pair.solution
        if self.require_stationarity and not solution.satisfied_stationarity:
            model = CubicModel(f0=f, g=g, H=pair.H, sigma=sigma)
            candidate = self._enforce_stationarity(model, solution)
            # 缩放后的步仍需满足 h ≤ κ_hs‖s‖
            if self.h <= self.fd.kappa_hs * candidate.step_norm:
                solution = candidate
        return TrialStep(s=solution.s, model_value=solution.model_value, h=pair.h, shrinks=pair.shrink_count)


class GradientStep(StepProvider):
    """二次正则化模型 m(s) = f + sᵀg + ½σ‖s‖² 的极小点 s = −g/σ。"""

    degree = RegularizerDegree.QUADRATIC
    power = 2

    def trial_step(self, x: Vector, f: float, g: Vector, sigma: float) -> TrialStep:
        s = -g / sigma
        return TrialStep(s=s, model_value=float(f + s @ g + 0.5 * sigma * (s @ s)))


def make_cubic_step(oracle: CountingOracle, settings: SolverSettings, hessian_mode: HessianMode | str) -> StepProvider:
    """按 Hessian 模式构造三次正则化试探步提供者。"""
    subsolver = create_subsolver(settings)
    if HessianMode(hessian_mode) is HessianMode.FINITE_DIFFERENCE:
        return FiniteDifferenceCubicStep(
            oracle, subsolver, settings.kappa_theta, settings.fd.to_domain(), settings.require_stationarity
        )
    return ExactCubicStep(oracle, subsolver, settings.kappa_theta, settings.require_stationarity)


__all__ = [
    "ExactCubicStep",
    "FiniteDifferenceCubicStep",
    "GradientStep",
    "HessianMode",
    "StepProvider",
    "TrialStep",
    "create_subsolver",
    "make_cubic_step",
]
