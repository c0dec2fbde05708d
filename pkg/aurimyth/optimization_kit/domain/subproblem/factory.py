"""子问题求解器工厂 - 注册机制。

求解引擎只依赖 SubproblemSolver 接口，通过名称选择具体实现：
- lanczos: Krylov 子空间求解（默认）
- dense: 完整特征分解
- gradient_descent: Cauchy 点 + 梯度下降
"""

from __future__ import annotations

from abc import ABC, abstractmethod
from typing import Any, ClassVar

from aurimyth.optimization_kit.common.logging import logger
from aurimyth.optimization_kit.domain.objectives import Vector

from .dense import solve_dense
from .gradient import solve_gradient_descent
from .lanczos import solve_lanczos
from .model import CubicModel, SubproblemSolution


class SubproblemSolver(ABC):
    """三次正则化子问题求解器接口。"""

    name: ClassVar[str]

    @abstractmethod
    def solve(
        self,
        model: CubicModel,
        kappa_theta: float,
        warm_start: Vector | None = None,
    ) -> SubproblemSolution:
        """返回满足 Condition 1 的近似解。"""


class LanczosSubproblemSolver(SubproblemSolver):
    """Lanczos 求解器（Krylov 子空间按 g 重建，忽略 warm_start）。"""

    name = "lanczos"

    def __init__(self, max_dim: int | None = None, tol: float = 1e-10) -> None:
        self.max_dim = max_dim
        self.tol = tol

    def solve(self, model: CubicModel, kappa_theta: float, warm_start: Vector | None = None) -> SubproblemSolution:
        return solve_lanczos(
            model.H, model.g, model.sigma, kappa_theta,
            max_dim=self.max_dim, f0=model.f0, tol=self.tol,
        )


class DenseSubproblemSolver(SubproblemSolver):
    """特征分解求解器。"""

    name = "dense"

    def __init__(self, tol: float = 1e-10) -> None:
        self.tol = tol

    def solve(self, model: CubicModel, kappa_theta: float, warm_start: Vector | None = None) -> SubproblemSolution:
        return solve_dense(model, tol=self.tol, kappa_theta=kappa_theta)


class GradientDescentSubproblemSolver(SubproblemSolver):
    """梯度下降求解器。"""

    name = "gradient_descent"

    def __init__(self, max_iterations: int = 20000) -> None:
        self.max_iterations = max_iterations

    def solve(self, model: CubicModel, kappa_theta: float, warm_start: Vector | None = None) -> SubproblemSolution:
        return solve_gradient_descent(model, kappa_theta, self.max_iterations, warm_start)


class SubproblemSolverFactory:
    """子问题求解器工厂。

    使用示例:
        solver = SubproblemSolverFactory.create("lanczos", max_dim=50)
        solution = solver.solve(model, kappa_theta=0.5)
    """

    _solvers: ClassVar[dict[str, type[SubproblemSolver]]] = {}

    @classmethod
    def register(cls, name: str, solver_class: type[SubproblemSolver]) -> None:
        """注册子问题求解器。"""
        cls._solvers[name] = solver_class
        logger.debug(f"注册子问题求解器: {name} -> {solver_class.__name__}")

    @classmethod
    def create(cls, name: str, **config: Any) -> SubproblemSolver:
        """按名称创建求解器。

        Raises:
            ValueError: 名称未注册
        """
        if name not in cls._solvers:
            available = ", ".join(cls._solvers)
            raise ValueError(f"子问题求解器 '{name}' 未注册。可用求解器: {available}")
        return cls._solvers[name](**config)

    @classmethod
    def get_registered(cls) -> list[str]:
        """获取已注册的求解器名称。"""
        return list(cls._solvers)


SubproblemSolverFactory.register(LanczosSubproblemSolver.name, LanczosSubproblemSolver)
SubproblemSolverFactory.register(DenseSubproblemSolver.name, DenseSubproblemSolver)
SubproblemSolverFactory.register(GradientDescentSubproblemSolver.name, GradientDescentSubproblemSolver)


__all__ = [
    "DenseSubproblemSolver",
    "GradientDescentSubproblemSolver",
    "LanczosSubproblemSolver",
    "SubproblemSolver",
    "SubproblemSolverFactory",
]
