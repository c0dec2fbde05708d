"""轨迹 CSV 与摘要 JSON 的读写。"""

from __future__ import annotations

import csv
from pathlib import Path
from typing import Any

from pydantic import BaseModel, Field

from ..solvers import SolverRun, TraceRecord

TRACE_COLUMNS = (
    "phase",
    "outer_index",
    "successful",
    "l",
    "f",
    "grad_norm",
    "sigma",
    "varsigma",
    "wall_time_s",
    "values",
    "gradients",
    "hvps",
    "fd_gradients",
)


class RunSummary(BaseModel):
    """单个求解器的结果摘要。"""

    solver: str
    status: str
    f_final: float
    grad_norm_final: float
    T1: int
    T2: int
    T3: int
    T4: int
    l: int
    wall_time_s: float
    config: dict[str, Any] = Field(description="全部已解析的求解器参数")
    seed: int
    dataset: str
    problem: dict[str, Any] = Field(default_factory=dict, description="重建问题所需的数据描述")
    oracle_calls: dict[str, int] = Field(default_factory=dict)
    iterations: int = 0
    message: str = ""

    @classmethod
    def from_run(
        cls,
        run: SolverRun,
        seed: int,
        dataset: str,
        problem: dict[str, Any] | None = None,
        deterministic_time: bool = False,
    ) -> RunSummary:
        counts = run.oracle_calls
        return cls(
            solver=run.solver,
            status=run.status.value,
            f_final=run.f_final,
            grad_norm_final=run.grad_norm_final,
            T1=run.T1,
            T2=run.T2,
            T3=run.T3,
            T4=run.T4,
            l=run.l,
            wall_time_s=0.0 if deterministic_time else run.wall_time,
            config=run.config,
            seed=seed,
            dataset=dataset,
            problem=problem or {},
            oracle_calls={
                "values": counts.values,
                "gradients": counts.gradients,
                "hvps": counts.hvps,
                "fd_gradients": counts.fd_gradients,
            },
            iterations=run.iterations,
            message=run.message,
        )


def _fmt(value: float) -> str:
    return repr(float(value))


def trace_row(record: TraceRecord, deterministic_time: bool = False) -> list[str]:
    c = record.counters
    return [
        record.phase.value,
        str(record.outer_index),
        "1" if record.successful else "0",
        str(record.l),
        _fmt(record.f),
        _fmt(record.grad_norm),
        _fmt(record.sigma),
        "" if record.varsigma is None else _fmt(record.varsigma),
        "0.0" if deterministic_time else _fmt(record.wall_time),
        str(c.values),
        str(c.gradients),
        str(c.hvps),
        str(c.fd_gradients),
    ]


def write_trace_csv(run: SolverRun, path: str | Path, deterministic_time: bool = False) -> Path:
    """写出轨迹 CSV（计数为累计值）。"""
    path = Path(path)
    with path.open("w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(TRACE_COLUMNS)
        for record in run.trace:
            writer.writerow(trace_row(record, deterministic_time))
    return path


def write_summary_json(summary: RunSummary, path: str | Path) -> Path:
    path = Path(path)
    path.write_text(summary.model_dump_json(indent=2) + "\n", encoding="utf-8")
    return path


def read_trace_csv(path: str | Path) -> list[dict[str, Any]]:
    """读回轨迹 CSV，数值列转换为 int / float。"""
    rows: list[dict[str, Any]] = []
    with Path(path).open(newline="", encoding="utf-8") as fh:
        for raw in csv.DictReader(fh):
            rows.append(
                {
                    "phase": raw["phase"],
                    "outer_index": int(raw["outer_index"]),
                    "successful": raw["successful"] == "1",
                    "l": int(raw["l"]),
                    "f": float(raw["f"]),
                    "grad_norm": float(raw["grad_norm"]),
                    "sigma": float(raw["sigma"]),
                    "varsigma": float(raw["varsigma"]) if raw["varsigma"] else None,
                    "wall_time_s": float(raw["wall_time_s"]),
                    "values": int(raw["values"]),
                    "gradients": int(raw["gradients"]),
                    "hvps": int(raw["hvps"]),
                    "fd_gradients": int(raw["fd_gradients"]),
                }
            )
    return rows


def read_summary_json(path: str | Path) -> RunSummary:
    return RunSummary.model_validate_json(Path(path).read_text(encoding="utf-8"))


__all__ = [
    "TRACE_COLUMNS",
    "RunSummary",
    "read_summary_json",
    "read_trace_csv",
    "trace_row",
    "write_summary_json",
    "write_trace_csv",
]
