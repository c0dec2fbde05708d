"""基准测试工具。

- spec: 基准测试描述与问题构造
- runner: 并行运行求解器并写出轨迹
- writers: 轨迹 CSV 与摘要 JSON
- report: 收敛速率报告
"""

from .report import FstarSource, RateReport, SolverRate, emit_rate_report, solver_rate, tail_slope
from .runner import BenchResult, BenchRunner, SolverOutput, ensure_output_dir, run_bench
from .spec import (
    BenchProblem,
    BenchSpec,
    build_problem,
    build_synthetic,
    make_initial_point,
    parse_assignments,
    parse_synthetic,
)
from .writers import (
    TRACE_COLUMNS,
    RunSummary,
    read_summary_json,
    read_trace_csv,
    write_summary_json,
    write_trace_csv,
)

__all__ = [
    "TRACE_COLUMNS",
    "BenchProblem",
    "BenchResult",
    "BenchRunner",
    "BenchSpec",
    "FstarSource",
    "RateReport",
    "RunSummary",
    "SolverOutput",
    "SolverRate",
    "build_problem",
    "build_synthetic",
    "emit_rate_report",
    "ensure_output_dir",
    "make_initial_point",
    "parse_assignments",
    "parse_synthetic",
    "read_summary_json",
    "read_trace_csv",
    "run_bench",
    "solver_rate",
    "tail_slope",
    "write_summary_json",
    "write_trace_csv",
]
