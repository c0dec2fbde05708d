"""基准测试执行器：同一初始点上并行运行多个求解器并写出轨迹。"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
import contextvars
from dataclasses import dataclass
import os
from pathlib import Path

from aurimyth.optimization_kit.common.logging import (
    RunContext,
    get_class_logger,
    log_performance,
    set_run_context,
    set_run_id,
)
from aurimyth.optimization_kit.domain.objectives import Vector

from ..config import BenchSettings, SolverSettings
from ..errors import OutputNotWritableError
from ..solvers import SolverFactory, SolverRun
from .spec import BenchProblem, BenchSpec, build_problem, make_initial_point, problem_description
from .writers import RunSummary, write_summary_json, write_trace_csv


@dataclass(frozen=True, eq=False)
class SolverOutput:
    """单个求解器的输出。"""

    solver: str
    run: SolverRun
    summary: RunSummary
    trace_path: Path
    summary_path: Path


@dataclass(frozen=True, eq=False)
class BenchResult:
    """一次基准测试的全部输出。"""

    spec: BenchSpec
    problem: BenchProblem
    x0: Vector
    outputs: list[SolverOutput]

    @property
    def files(self) -> list[Path]:
        return [p for o in self.outputs for p in (o.trace_path, o.summary_path)]


def ensure_output_dir(path: str | Path) -> Path:
    """创建输出目录并确认可写。

    Raises:
        OutputNotWritableError: 目录无法创建或不可写
    """
    path = Path(path)
    try:
        path.mkdir(parents=True, exist_ok=True)
    except OSError as e:
        raise OutputNotWritableError(f"无法创建输出目录 {path}: {e}", metadata={"path": str(path)}, cause=e) from e
    if not path.is_dir() or not os.access(path, os.W_OK):
        raise OutputNotWritableError(f"输出目录不可写: {path}", metadata={"path": str(path)})
    return path


class BenchRunner:
    """基准测试执行器。

    每个求解器独占一个工作线程与自己的计数包装和轨迹缓冲；
    线程数取 BENCH_THREADS 与求解器数量的较小值。
    """

    def __init__(self, settings: BenchSettings | None = None, solver_settings: SolverSettings | None = None) -> None:
        self.settings = settings or BenchSettings()
        self.solver_settings = solver_settings or SolverSettings()
        self.logger = get_class_logger(self)

    def _run_one(
        self,
        name: str,
        spec: BenchSpec,
        problem: BenchProblem,
        x0: Vector,
        cfg: SolverSettings,
        out_dir: Path,
    ) -> SolverOutput:
        stem = f"{problem.name}_{name}_seed{spec.seed}"
        # 每个工作线程使用复制的上下文，运行 ID 只作用于本求解器的日志
        set_run_id(stem)
        run = SolverFactory.run(name, problem.oracle, x0, cfg, problem.meta)
        deterministic = self.settings.deterministic_time
        summary = RunSummary.from_run(
            run, seed=spec.seed, dataset=problem.name, problem=problem_description(spec), deterministic_time=deterministic
        )
        try:
            trace_path = write_trace_csv(run, out_dir / f"{stem}.csv", deterministic)
            summary_path = write_summary_json(summary, out_dir / f"{stem}.json")
        except OSError as e:
            raise OutputNotWritableError(f"写出 {stem} 失败: {e}", metadata={"path": str(out_dir)}, cause=e) from e
        return SolverOutput(solver=name, run=run, summary=summary, trace_path=trace_path, summary_path=summary_path)

    def run(self, spec: BenchSpec) -> BenchResult:
        """执行基准测试。

        Raises:
            UnknownSolverError: 求解器名称未注册（在任何求解开始前检查）
            InvalidOverrideError: 配置覆盖无效
            DatasetError: 数据加载失败
            OutputNotWritableError: 输出目录不可写
        """
        set_run_context(RunContext.BENCH)
        for name in spec.solvers:
            SolverFactory.create(name)
        cfg = self.solver_settings.with_overrides(spec.overrides) if spec.overrides else self.solver_settings
        out_dir = ensure_output_dir(spec.output_dir)
        problem = build_problem(spec.data, spec.lam, spec.normalization, self.settings.data_dir)
        x0 = make_initial_point(spec.init, problem.dimension, spec.seed)
        self.logger.info(
            f"基准测试开始: 问题={problem.name}, d={problem.dimension}, 求解器={spec.solvers}, seed={spec.seed}"
        )

        workers = min(self.settings.threads, len(spec.solvers))
        with ThreadPoolExecutor(max_workers=workers, thread_name_prefix="bench") as pool:
            futures = [
                pool.submit(contextvars.copy_context().run, self._run_one, name, spec, problem, x0, cfg, out_dir)
                for name in spec.solvers
            ]
            outputs = [f.result() for f in futures]

        for output in outputs:
            self.logger.info(
                f"{output.solver}: status={output.summary.status}, f={output.summary.f_final:.10e}, "
                f"l={output.summary.l} -> {output.trace_path}"
            )
        return BenchResult(spec=spec, problem=problem, x0=x0, outputs=outputs)


@log_performance(threshold=60.0)
def run_bench(
    spec: BenchSpec,
    settings: BenchSettings | None = None,
    solver_settings: SolverSettings | None = None,
) -> BenchResult:
    """运行基准测试，每个求解器写出一个轨迹 CSV 与一个摘要 JSON。"""
    return BenchRunner(settings, solver_settings).run(spec)


__all__ = [
    "BenchResult",
    "BenchRunner",
    "SolverOutput",
    "ensure_output_dir",
    "run_bench",
]
