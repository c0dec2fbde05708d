"""求解器注册表。"""

from __future__ import annotations

from collections.abc import Callable
from typing import ClassVar

from numpy.typing import ArrayLike

from aurimyth.optimization_kit.common.logging import logger
from aurimyth.optimization_kit.domain.objectives import ObjectiveOracle, TestFunctionMeta

from ..config import SolverSettings
from ..errors import UnknownSolverError
from .cubic import solve_aarc, solve_aarcq, solve_arc_baseline
from .gradient import solve_aagd, solve_agd_baseline
from .hybrid import solve_hybrid_aarc
from .records import SolverRun

SolverFn = Callable[[ObjectiveOracle, ArrayLike, SolverSettings, TestFunctionMeta | None], SolverRun]


class SolverFactory:
    """求解器工厂 - 注册机制。

    注册函数统一为 (oracle, x0, cfg, meta) -> SolverRun。

    使用示例:
        run = SolverFactory.run("AARC_hybrid", oracle, x0, settings)
        SolverFactory.get_registered()  # ['AARC', 'AARC_hybrid', ...]
    """

    _solvers: ClassVar[dict[str, SolverFn]] = {}

    @classmethod
    def register(cls, name: str, fn: SolverFn) -> None:
        cls._solvers[name] = fn
        logger.debug(f"注册求解器: {name}")

    @classmethod
    def create(cls, name: str) -> SolverFn:
        """按名称取出求解函数。

        Raises:
            UnknownSolverError: 名称未注册
        """
        if name not in cls._solvers:
            available = ", ".join(cls._solvers)
            raise UnknownSolverError(
                f"求解器 '{name}' 未注册。可用求解器: {available}",
                metadata={"name": name, "available": list(cls._solvers)},
            )
        return cls._solvers[name]

    @classmethod
    def run(
        cls,
        name: str,
        oracle: ObjectiveOracle,
        x0: ArrayLike,
        cfg: SolverSettings,
        meta: TestFunctionMeta | None = None,
    ) -> SolverRun:
        return cls.create(name)(oracle, x0, cfg, meta)

    @classmethod
    def get_registered(cls) -> list[str]:
        return list(cls._solvers)


SolverFactory.register("AARC", lambda oracle, x0, cfg, meta: solve_aarc(oracle, x0, cfg))
SolverFactory.register("AARC_hybrid", lambda oracle, x0, cfg, meta: solve_hybrid_aarc(oracle, x0, cfg, meta=meta))
SolverFactory.register("AARC_Q", lambda oracle, x0, cfg, meta: solve_aarcq(oracle, x0, cfg))
SolverFactory.register("ARC", lambda oracle, x0, cfg, meta: solve_arc_baseline(oracle, x0, cfg))
SolverFactory.register("AAGD", lambda oracle, x0, cfg, meta: solve_aagd(oracle, x0, cfg))
SolverFactory.register("AGD", lambda oracle, x0, cfg, meta: solve_agd_baseline(oracle, x0, cfg=cfg))


__all__ = [
    "SolverFactory",
    "SolverFn",
]
