"""日志管理器 - 统一的日志配置和管理。

提供：
- 统一的日志配置（控制台 + 可选的滚动文件）
- 运行上下文（cli / bench / solver）与运行 ID 注入
- 性能监控装饰器
- Java 风格的紧凑异常堆栈

日志文件（仅在指定日志目录时创建）：
- {context}_info_{date}.log  - INFO 及以上
- {context}_error_{date}.log - ERROR 及以上
"""

from __future__ import annotations

from collections.abc import Callable
from contextvars import ContextVar
from enum import Enum
from functools import wraps
import os
import sys
import time
import traceback
from typing import Any
import uuid

from loguru import logger

# 移除默认配置，由 setup_logging 统一配置
logger.remove()


class RunContext(str, Enum):
    """日志用运行上下文。"""

    CLI = "cli"
    BENCH = "bench"
    SOLVER = "solver"


_run_context: ContextVar[RunContext] = ContextVar("run_context", default=RunContext.SOLVER)
_run_id_var: ContextVar[str] = ContextVar("run_id", default="")


def get_run_context() -> RunContext:
    """获取当前运行上下文。"""
    return _run_context.get()


def _to_run_context(ctx: RunContext | str) -> RunContext:
    if isinstance(ctx, RunContext):
        return ctx
    try:
        return RunContext(str(ctx).strip().lower())
    except ValueError:
        return RunContext.SOLVER


def set_run_context(context: RunContext | str) -> None:
    """设置当前运行上下文。

    基准测试的工作线程在执行求解器前调用 set_run_context("bench")，
    后续日志都会带上该上下文。
    """
    _run_context.set(_to_run_context(context))


def get_run_id() -> str:
    """获取当前运行 ID，尚未设置时生成一个新的随机 ID。"""
    run_id = _run_id_var.get()
    if not run_id:
        run_id = uuid.uuid4().hex
        _run_id_var.set(run_id)
    return run_id


def set_run_id(run_id: str) -> None:
    """设置运行 ID。"""
    _run_id_var.set(run_id)


_log_config: dict[str, Any] = {
    "log_dir": None,
    "initialized": False,
}

# 堆栈中不展示的第三方模块
_INTERNAL_MODULES = {"concurrent", "threading", "typer", "click"}


def _format_exception_compact(
    exc_type: type[BaseException],
    exc_value: BaseException,
    exc_tb: Any,
) -> str:
    """格式化异常为 Java 风格堆栈。"""
    import linecache

    lines = [f"{exc_type.__name__}: {exc_value}"]
    tb = exc_tb
    while tb:
        frame = tb.tb_frame
        filename = frame.f_code.co_filename
        short_file = filename.split("/")[-1]
        lineno = tb.tb_lineno

        is_site_package = "site-packages/" in filename
        if is_site_package:
            module = filename.split("site-packages/")[-1].replace("/", ".").replace(".py", "")
            if module.split(".")[0] in _INTERNAL_MODULES:
                tb = tb.tb_next
                continue
        else:
            module = short_file.replace(".py", "")

        lines.append(f"    at {module}.{frame.f_code.co_name}({short_file}:{lineno})")
        if not is_site_package:
            source_line = linecache.getline(filename, lineno).strip()
            if source_line:
                lines.append(f"        >> {source_line}")
        tb = tb.tb_next

    metadata = getattr(exc_value, "metadata", None)
    if metadata:
        lines.append("  Metadata:")
        for key, value in list(metadata.items())[:10]:
            text = repr(value)
            lines.append(f"    {key} = {text[:200] + '...' if len(text) > 200 else text}")

    return "\n".join(lines)


def _create_console_sink(colorize: bool = True):
    """创建控制台 sink。"""
    if colorize:
        green, cyan, yellow, red, reset, bold = (
            "\033[32m", "\033[36m", "\033[33m", "\033[31m", "\033[0m", "\033[1m",
        )
    else:
        green = cyan = yellow = red = reset = bold = ""

    level_colors = {
        "DEBUG": cyan,
        "INFO": green,
        "WARNING": yellow,
        "ERROR": red,
        "CRITICAL": f"{bold}{red}",
    }

    def sink(message):
        record = message.record
        exc = record.get("exception")
        level = record["level"].name
        level_color = level_colors.get(level, "")
        context = record["extra"].get("context", RunContext.SOLVER.value)
        run_id = record["extra"].get("run_id", "")[:8]
        name = record["extra"].get("name", record["name"])

        output = (
            f"{green}{record['time'].strftime('%Y-%m-%d %H:%M:%S')}{reset} | "
            f"{cyan}[{context}]{reset} | "
            f"{level_color}{level: <8}{reset} | "
            f"{cyan}{name}:{record['line']}{reset} | "
            f"{run_id} - "
            f"{level_color}{record['message']}{reset}\n"
        )
        if exc and exc.type:
            output += f"{red}{_format_exception_compact(exc.type, exc.value, exc.traceback)}{reset}\n"
        sys.stderr.write(output)

    return sink


def _escape_tags(s: str) -> str:
    """转义 loguru 格式特殊字符。"""
    s = s.replace("{", "{{").replace("}", "}}")
    return s.replace("<", r"\<")


def _format_message(record: dict) -> str:
    """格式化文件日志行。"""
    exc = record.get("exception")
    output = (
        f"{record['time'].strftime('%Y-%m-%d %H:%M:%S')} | {record['level'].name: <8} | "
        f"{record['name']}:{_escape_tags(record['function'])}:{record['line']} | "
        f"{record['extra'].get('run_id', '')} - {_escape_tags(record['message'])}\n"
    )
    if exc and exc.type:
        output += f"{_escape_tags(_format_exception_compact(exc.type, exc.value, exc.traceback))}\n"
    return output


def setup_logging(
    log_level: str = "INFO",
    log_dir: str | None = None,
    run_context: RunContext | str = RunContext.CLI,
    rotation_size: str = "50 MB",
    retention_days: int = 7,
    enable_console: bool = True,
) -> None:
    """设置日志配置（幂等）。

    Args:
        log_level: 日志级别（DEBUG/INFO/WARNING/ERROR/CRITICAL）
        log_dir: 日志目录；为 None 时只输出到控制台
        run_context: 默认运行上下文
        rotation_size: 单文件大小上限
        retention_days: 日志保留天数
        enable_console: 是否输出到控制台
    """
    log_level = log_level.upper()
    context = _to_run_context(run_context)

    logger.remove()
    set_run_context(context)
    _log_config.update({"log_dir": log_dir, "initialized": True})

    logger.configure(patcher=lambda record: record["extra"].update({
        "run_id": get_run_id(),
        "context": get_run_context().value,
    }))

    if enable_console:
        logger.add(_create_console_sink(), format="{message}", level=log_level, colorize=False)

    if log_dir:
        os.makedirs(log_dir, exist_ok=True)
        for ctx in RunContext:
            logger.add(
                os.path.join(log_dir, f"{ctx.value}_info_{{time:YYYY-MM-DD}}.log"),
                format=lambda record: _format_message(record),
                rotation=rotation_size,
                retention=f"{retention_days} days",
                level=log_level,
                encoding="utf-8",
                enqueue=True,
                delay=True,
                filter=lambda record, c=ctx.value: record["extra"].get("context") == c,
            )
            logger.add(
                os.path.join(log_dir, f"{ctx.value}_error_{{time:YYYY-MM-DD}}.log"),
                format=lambda record: _format_message(record),
                rotation=rotation_size,
                retention=f"{retention_days} days",
                level="ERROR",
                encoding="utf-8",
                enqueue=True,
                delay=True,
                filter=lambda record, c=ctx.value: record["extra"].get("context") == c,
            )

    logger.debug(f"日志系统初始化完成 | 上下文: {context.value} | 级别: {log_level} | 目录: {log_dir}")


def log_performance(threshold: float = 1.0) -> Callable:
    """性能监控装饰器（同步函数）。

    记录函数执行时间，超过阈值时警告。

    Args:
        threshold: 警告阈值（秒）
    """
    def decorator[T](func: Callable[..., T]) -> Callable[..., T]:
        @wraps(func)
        def wrapper(*args, **kwargs) -> T:
            start_time = time.perf_counter()
            try:
                result = func(*args, **kwargs)
            except Exception as exc:
                duration = time.perf_counter() - start_time
                logger.error(
                    f"执行失败: {func.__module__}.{func.__name__} | "
                    f"耗时: {duration:.3f}s | 异常: {type(exc).__name__}: {exc}"
                )
                raise
            duration = time.perf_counter() - start_time
            if duration > threshold:
                logger.warning(
                    f"性能警告: {func.__module__}.{func.__name__} 执行耗时 {duration:.3f}s "
                    f"(阈值: {threshold}s)"
                )
            else:
                logger.debug(f"性能: {func.__module__}.{func.__name__} 执行耗时 {duration:.3f}s")
            return result

        return wrapper
    return decorator


def get_class_logger(obj: object) -> Any:
    """获取类专用的日志器。

    Args:
        obj: 对象实例或类

    Returns:
        绑定了 name 的日志器

    使用示例:
        class LanczosSubproblemSolver:
            def solve(self, model):
                log = get_class_logger(self)
                log.debug("扩展 Krylov 子空间")
    """
    cls = obj if isinstance(obj, type) else obj.__class__
    return logger.bind(name=f"{cls.__module__}.{cls.__name__}")


def format_exception_java_style(
    exc_type: type[BaseException] | None = None,
    exc_value: BaseException | None = None,
    exc_tb: Any | None = None,
    *,
    max_frames: int = 20,
) -> str:
    """将异常堆栈格式化为 Java 风格。

    Args:
        exc_type: 异常类型（默认从 sys.exc_info() 获取）
        exc_value: 异常值
        exc_tb: 异常 traceback
        max_frames: 最大堆栈帧数

    Returns:
        Java 风格的堆栈字符串
    """
    if exc_type is None:
        exc_type, exc_value, exc_tb = sys.exc_info()
    if exc_type is None or exc_value is None:
        return "No exception"

    lines = [f"{exc_type.__name__}: {exc_value}"]
    frames = traceback.extract_tb(exc_tb)
    if len(frames) > max_frames:
        lines.append(f"    ... ({len(frames) - max_frames} frames omitted)")
        frames = frames[-max_frames:]
    for frame in frames:
        short_file = frame.filename.split("/")[-1]
        lines.append(f"    at {short_file.replace('.py', '')}.{frame.name}({short_file}:{frame.lineno})")
    return "\n".join(lines)


def log_exception(
    message: str = "异常",
    *,
    exc_info: tuple | None = None,
    level: str = "ERROR",
    context: dict[str, Any] | None = None,
) -> None:
    """记录异常日志（Java 风格堆栈）。

    Args:
        message: 日志消息
        exc_info: 异常信息元组，默认从 sys.exc_info() 获取
        level: 日志级别
        context: 额外上下文（如求解器名称、数据集）
    """
    if exc_info is None:
        exc_info = sys.exc_info()
    parts = [message]
    if context:
        parts.append("上下文: " + " | ".join(f"{k}={v}" for k, v in context.items()))
    stack = format_exception_java_style(*exc_info)
    logger.opt(depth=1).log(level, " | ".join(parts) + f"\n{stack}")


__all__ = [
    "RunContext",
    "format_exception_java_style",
    "get_class_logger",
    "get_run_context",
    "get_run_id",
    "log_exception",
    "log_performance",
    "logger",
    "set_run_context",
    "set_run_id",
    "setup_logging",
]
