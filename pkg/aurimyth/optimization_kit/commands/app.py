"""AuriMyth Optimization Kit 统一命令行入口。

- aurimyth-opt bench run        运行基准测试
- aurimyth-opt bench report     收敛速率报告
- aurimyth-opt bench datasets   列出基准数据集

使用示例：
    aurimyth-opt bench run --data sonar --data-dir ./data --solvers AARC_hybrid,ARC
    aurimyth-opt --version
"""

from __future__ import annotations

import typer

_app: typer.Typer | None = None
_registered = False


def _get_app() -> typer.Typer:
    """获取并初始化 Typer 应用（延迟加载）。"""
    global _app, _registered

    if _app is None:
        _app = typer.Typer(
            name="aurimyth-opt",
            help="AuriMyth Optimization Kit CLI - 自适应加速凸优化",
            add_completion=True,
            no_args_is_help=True,
            rich_markup_mode="rich",
        )

        @_app.callback(invoke_without_command=True)
        def callback(
            ctx: typer.Context,
            version: bool = typer.Option(
                False,
                "--version",
                "-v",
                help="显示版本信息",
                is_eager=True,
            ),
        ) -> None:
            """AuriMyth Optimization Kit - 三次正则化牛顿法与加速梯度法。"""
            if version:
                from rich.console import Console

                from aurimyth.optimization_kit import __version__

                Console().print(f"[bold cyan]AuriMyth Optimization Kit[/bold cyan] v{__version__}")
                raise typer.Exit()

    if not _registered:
        _registered = True
        from .bench import app as bench_app

        _app.add_typer(bench_app, name="bench", help="📈 求解器基准测试")

    return _app


def main() -> None:
    """CLI 入口点。"""
    _get_app()()


def __getattr__(name: str):
    if name == "app":
        return _get_app()
    raise AttributeError(f"module {__name__!r} has no attribute {name!r}")


__all__ = [
    "app",
    "main",
]
