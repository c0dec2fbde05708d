"""基准测试命令。

使用示例：
    bench run --data sonar --data-dir ./data --lambda 1e-5 --solvers AARC_hybrid,ARC,AAGD,AGD --seed 7
    bench run --data synthetic:quadratic:d=50,kappa=100 --solvers AARC,AAGD --init zeros --set gamma1=3
    bench report --traces bench_out --fstar meta
    bench datasets
"""

from __future__ import annotations

from pathlib import Path
from typing import NoReturn

from pydantic import ValidationError
from rich.console import Console
from rich.table import Table
import typer

from aurimyth.optimization_kit.common.exceptions import OptimizationError
from aurimyth.optimization_kit.common.logging import log_exception

app = typer.Typer(
    name="bench",
    help="📈 求解器基准测试",
    no_args_is_help=True,
)

console = Console()


def _load_config(log_level: str | None):
    from aurimyth.optimization_kit.application.config import OptimizationConfig
    from aurimyth.optimization_kit.common.logging import RunContext, setup_logging

    config = OptimizationConfig()
    log = config.log
    setup_logging(
        log_level=log_level or log.level,
        log_dir=log.dir,
        run_context=RunContext.CLI,
        rotation_size=log.rotation_size,
        retention_days=log.retention_days,
        enable_console=log.enable_console,
    )
    return config


def _fail(message: str) -> NoReturn:
    console.print(f"[red]❌ {message}[/red]")
    raise typer.Exit(1)


@app.command()
def run(
    data: str = typer.Option(..., "--data", "-d", help="数据集名、LIBSVM 文件路径或 synthetic:<kind>[:k=v,...]"),
    lam: float = typer.Option(1e-5, "--lambda", help="ℓ2 正则系数 λ"),
    solvers: str = typer.Option("AARC_hybrid,ARC,AAGD,AGD", "--solvers", "-s", help="逗号分隔的求解器名称"),
    seed: int = typer.Option(0, "--seed", help="初始点随机种子"),
    init: str = typer.Option("far_normal:5000", "--init", help="far_normal:<方差> | zeros | file:<路径>"),
    out: Path | None = typer.Option(None, "--out", "-o", help="输出目录（默认 BENCH_OUTPUT_DIR）"),
    overrides: list[str] | None = typer.Option(None, "--set", help="求解器配置覆盖 key=value，可重复"),
    normalization: str = typer.Option("none", "--normalize", help="none | scale_to_unit_range | standardize"),
    data_dir: Path | None = typer.Option(None, "--data-dir", help="LIBSVM 数据目录（默认 BENCH_DATA_DIR）"),
    threads: int | None = typer.Option(None, "--threads", help="并行线程数（默认 BENCH_THREADS）"),
    deterministic_time: bool = typer.Option(False, "--deterministic-time", help="wall_time_s 写为 0"),
    log_level: str | None = typer.Option(None, "--log-level", help="日志级别"),
) -> None:
    """在同一初始点上运行多个求解器，写出轨迹 CSV 与摘要 JSON。"""
    from aurimyth.optimization_kit.application.bench import BenchSpec, parse_assignments, run_bench

    config = _load_config(log_level)
    bench_settings = config.bench.model_copy(
        update={
            k: v
            for k, v in {
                "data_dir": str(data_dir) if data_dir else None,
                "threads": threads,
                "deterministic_time": deterministic_time or None,
            }.items()
            if v is not None
        }
    )
    try:
        spec = BenchSpec(
            data=data,
            lam=lam,
            solvers=[s.strip() for s in solvers.split(",") if s.strip()],
            seed=seed,
            init=init,
            overrides=parse_assignments(overrides or []),
            output_dir=out or Path(bench_settings.output_dir),
            normalization=normalization,
        )
        result = run_bench(spec, bench_settings, config.solver)
    except ValidationError as e:
        _fail(f"参数无效: {e.errors()[0]['msg']}")
    except OptimizationError as e:
        log_exception("基准测试失败", level="DEBUG", context={"data": data, "solvers": solvers})
        _fail(str(e))

    table = Table(title=f"{result.problem.name} (d={result.problem.dimension}, seed={seed})")
    for column in ("求解器", "状态", "f", "‖∇f‖", "T1", "T2", "T3", "T4", "l", "耗时(s)"):
        table.add_column(column)
    for output in result.outputs:
        s = output.summary
        style = "green" if s.status == "converged" else "yellow"
        table.add_row(
            s.solver,
            f"[{style}]{s.status}[/{style}]",
            f"{s.f_final:.10e}",
            f"{s.grad_norm_final:.2e}",
            str(s.T1),
            str(s.T2),
            str(s.T3),
            str(s.T4),
            str(s.l),
            f"{s.wall_time_s:.2f}",
        )
    console.print(table)
    console.print(f"[dim]输出目录: {spec.output_dir}[/dim]")


@app.command()
def report(
    traces: Path = typer.Option(..., "--traces", "-t", help="bench run 的输出目录"),
    fstar: str = typer.Option("ref", "--fstar", help="f* 来源: ref（参考求解）| meta（已知值）"),
    data_dir: Path | None = typer.Option(None, "--data-dir", help="LIBSVM 数据目录（默认 BENCH_DATA_DIR）"),
    log_level: str | None = typer.Option(None, "--log-level", help="日志级别"),
) -> None:
    """计算各求解器的 (f − f*)·l^p 序列与双对数斜率。"""
    from aurimyth.optimization_kit.application.bench import FstarSource, emit_rate_report

    if fstar not in {s.value for s in FstarSource}:
        _fail(f"未知的 f* 来源: {fstar}（可选 ref / meta）")
    config = _load_config(log_level)
    bench_settings = config.bench
    if data_dir is not None:
        bench_settings = bench_settings.model_copy(update={"data_dir": str(data_dir)})
    try:
        rate_report, path = emit_rate_report(traces, fstar, bench_settings, config.solver)
    except OptimizationError as e:
        log_exception("速率报告失败", level="DEBUG", context={"traces": traces, "fstar": fstar})
        _fail(str(e))

    table = Table(title=f"{rate_report.dataset}: f* = {rate_report.fstar:.15e} ({rate_report.fstar_source.value})")
    for column in ("求解器", "点数", "斜率", "max (f−f*)·l²", "max (f−f*)·l³"):
        table.add_column(column)
    for rate in rate_report.solvers:
        table.add_row(
            rate.solver,
            str(rate.points),
            "-" if rate.slope is None else f"{rate.slope:.3f}",
            f"{rate.running_max['p2'][-1]:.3e}" if rate.points else "-",
            f"{rate.running_max['p3'][-1]:.3e}" if rate.points else "-",
        )
    console.print(table)
    console.print(f"[dim]报告: {path}[/dim]")


@app.command()
def datasets() -> None:
    """列出登记的基准数据集。"""
    from aurimyth.optimization_kit.infrastructure.datasets import CATALOG, LIBSVM_BINARY_URL

    table = Table(title="基准数据集")
    for column in ("名称", "n", "d", "慢", "文件名"):
        table.add_column(column)
    for info in CATALOG.values():
        table.add_row(info.name, str(info.n), str(info.d), "是" if info.slow else "", ", ".join(info.candidates()))
    console.print(table)
    console.print(f"[dim]下载: {LIBSVM_BINARY_URL}[/dim]")


def main() -> None:
    """bench 脚本入口。"""
    app()


__all__ = [
    "app",
    "main",
]
