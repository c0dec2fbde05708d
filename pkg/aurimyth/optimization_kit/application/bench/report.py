"""收敛速率报告。

对每个求解器的成功迭代计算 (f(x̄_l) − f*)·l^p（p = 2, 3）及其前缀最大值，
并在后一半数据上拟合 log(f − f*) 对 log l 的斜率。
"""

from __future__ import annotations

from enum import Enum
from pathlib import Path

import numpy as np
from pydantic import BaseModel, Field
from scipy import stats

from aurimyth.optimization_kit.common.logging import logger

from ..config import BenchSettings, SolverSettings
from ..errors import BenchError, ReferenceRunError
from ..solvers import SolverFactory
from .spec import build_problem, make_initial_point
from .writers import RunSummary, read_summary_json, read_trace_csv

REPORT_FILENAME = "rate_report.json"
RATE_POWERS = (2, 3)
REFERENCE_SOLVER = "AARC_hybrid"


class FstarSource(str, Enum):
    """f* 的来源。"""

    REFERENCE = "ref"  # 高精度参考求解
    METADATA = "meta"  # 合成问题的已知最优值


class SolverRate(BaseModel):
    """单个求解器的速率数据。"""

    solver: str
    points: int = Field(description="f − f* > 0 的成功迭代数")
    slope: float | None = Field(default=None, description="后一半数据上的双对数斜率")
    l: list[int] = Field(default_factory=list)
    gap: list[float] = Field(default_factory=list)
    scaled: dict[str, list[float]] = Field(default_factory=dict, description="(f − f*)·l^p")
    running_max: dict[str, list[float]] = Field(default_factory=dict)


class RateReport(BaseModel):
    fstar: float
    fstar_source: FstarSource
    dataset: str
    solvers: list[SolverRate]


def tail_slope(l: np.ndarray, gap: np.ndarray) -> float | None:
    """后一半数据上 log gap 对 log l 的最小二乘斜率；不足两个不同的 l 时为 None。"""
    start = len(l) // 2
    tail_l, tail_gap = l[start:], gap[start:]
    if len(tail_l) < 2 or np.unique(tail_l).size < 2:
        return None
    return float(stats.linregress(np.log(tail_l), np.log(tail_gap)).slope)


def solver_rate(solver: str, rows: list[dict], fstar: float) -> SolverRate:
    """由轨迹行计算速率数据（只使用成功迭代）。"""
    pairs = [(r["l"], r["f"] - fstar) for r in rows if r["successful"] and r["l"] >= 1]
    pairs = [(l, gap) for l, gap in pairs if gap > 0]
    if not pairs:
        return SolverRate(solver=solver, points=0)
    l = np.array([p[0] for p in pairs], dtype=np.float64)
    gap = np.array([p[1] for p in pairs], dtype=np.float64)
    scaled = {f"p{p}": gap * l**p for p in RATE_POWERS}
    return SolverRate(
        solver=solver,
        points=len(pairs),
        slope=tail_slope(l, gap),
        l=[int(v) for v in l],
        gap=gap.tolist(),
        scaled={k: v.tolist() for k, v in scaled.items()},
        running_max={k: np.maximum.accumulate(v).tolist() for k, v in scaled.items()},
    )


def _load_summaries(trace_dir: Path) -> list[tuple[RunSummary, Path]]:
    found = []
    for path in sorted(trace_dir.glob("*.json")):
        if path.name == REPORT_FILENAME:
            continue
        csv_path = path.with_suffix(".csv")
        if not csv_path.is_file():
            logger.warning(f"摘要 {path.name} 缺少对应的轨迹 CSV，已跳过")
            continue
        found.append((read_summary_json(path), csv_path))
    if not found:
        raise BenchError(f"目录 {trace_dir} 中没有轨迹文件", metadata={"trace_dir": str(trace_dir)})
    return found


def compute_fstar(
    summary: RunSummary,
    source: FstarSource,
    settings: BenchSettings,
    solver_settings: SolverSettings,
) -> float:
    """按来源计算 f*。

    Raises:
        ReferenceRunError: 元数据中没有 f*，或参考求解未收敛
    """
    problem_desc = summary.problem
    problem = build_problem(
        problem_desc.get("data", summary.dataset),
        problem_desc.get("lambda", 1e-5),
        problem_desc.get("normalization", "none"),
        settings.data_dir,
    )
    if source is FstarSource.METADATA:
        if problem.meta is None or problem.meta.known_fstar is None:
            raise ReferenceRunError(f"问题 {problem.name} 没有已知的 f*，请改用 --fstar ref")
        return float(problem.meta.known_fstar)

    x0 = make_initial_point(problem_desc.get("init", "far_normal:5000"), problem.dimension, summary.seed)
    cfg = solver_settings.with_overrides({"grad_tol": settings.reference_grad_tol})
    reference = SolverFactory.run(REFERENCE_SOLVER, problem.oracle, x0, cfg, problem.meta)
    if not reference.converged:
        raise ReferenceRunError(
            f"参考求解未达到 ‖∇f‖ ≤ {settings.reference_grad_tol}: {reference.message}",
            metadata={"grad_norm_final": reference.grad_norm_final, "status": reference.status.value},
        )
    logger.info(f"参考求解 f* = {reference.f_final:.15e}（‖∇f‖ = {reference.grad_norm_final:.3e}）")
    return reference.f_final


def emit_rate_report(
    trace_dir: str | Path,
    fstar_source: FstarSource | str = FstarSource.REFERENCE,
    settings: BenchSettings | None = None,
    solver_settings: SolverSettings | None = None,
) -> tuple[RateReport, Path]:
    """读取目录中的轨迹，写出 rate_report.json。

    Returns:
        (报告, 报告文件路径)

    Raises:
        BenchError: 目录中没有轨迹或轨迹来自不同问题
        ReferenceRunError: f* 无法确定
    """
    trace_dir = Path(trace_dir)
    settings = settings or BenchSettings()
    solver_settings = solver_settings or SolverSettings()
    source = FstarSource(fstar_source)
    entries = _load_summaries(trace_dir)

    first = entries[0][0]
    if any(s.problem != first.problem or s.dataset != first.dataset for s, _ in entries):
        raise BenchError("目录中的轨迹来自不同的问题，无法共用 f*", metadata={"trace_dir": str(trace_dir)})
    fstar = compute_fstar(first, source, settings, solver_settings)

    rates = []
    for summary, csv_path in entries:
        rows = read_trace_csv(csv_path)
        lowest = min(r["f"] for r in rows)
        if lowest < fstar:
            logger.warning(f"{summary.solver} 的轨迹低于 f*（{lowest:.15e} < {fstar:.15e}），对应点已忽略")
        rates.append(solver_rate(summary.solver, rows, fstar))

    report = RateReport(fstar=fstar, fstar_source=source, dataset=first.dataset, solvers=rates)
    path = trace_dir / REPORT_FILENAME
    path.write_text(report.model_dump_json(indent=2) + "\n", encoding="utf-8")
    return report, path


__all__ = [
    "RATE_POWERS",
    "REPORT_FILENAME",
    "FstarSource",
    "RateReport",
    "SolverRate",
    "compute_fstar",
    "emit_rate_report",
    "solver_rate",
    "tail_slope",
]
