"""基准测试描述：数据来源、初始点与配置覆盖的解析。

数据来源写法:
    sonar                                  目录中登记的数据集（在 data_dir 中查找）
    path/to/file.libsvm[.gz]               任意 LIBSVM 文件
    synthetic:quadratic:d=50,kappa=100     合成问题（参数见 build_synthetic）

初始点写法:
    far_normal:5000   各坐标独立 N(0, 5000)，即标准差 √5000
    zeros             零向量
    file:x0.txt       文本文件（numpy.loadtxt）
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path
from typing import Any

import numpy as np
from pydantic import BaseModel, Field

from aurimyth.optimization_kit.domain.exceptions import DatasetError, DimensionMismatchError
from aurimyth.optimization_kit.domain.models import NormalizationMode
from aurimyth.optimization_kit.domain.objectives import (
    DEFAULT_LAMBDA,
    ObjectiveOracle,
    SyntheticKind,
    TestFunctionMeta,
    Vector,
    make_conditioned_quadratic,
    make_logistic,
    make_synthetic,
)
from aurimyth.optimization_kit.infrastructure.datasets import (
    check_shape,
    find_dataset_file,
    get_dataset_info,
    load_libsvm,
    normalize,
)

from ..errors import InvalidOverrideError

SYNTHETIC_PREFIX = "synthetic:"
DEFAULT_INIT = "far_normal:5000"


class BenchSpec(BaseModel):
    """一次基准测试的描述。

    Attributes:
        data: 数据来源（数据集名、文件路径或 synthetic:...）
        lam: 逻辑回归的 ℓ2 正则系数 λ
        solvers: 求解器名称列表
        seed: 初始点随机种子
        init: 初始点写法
        overrides: 求解器配置覆盖（点分键）
        output_dir: 输出目录
        normalization: 特征归一化方式
    """

    data: str
    lam: float = Field(default=DEFAULT_LAMBDA, ge=0, description="ℓ2 正则系数")
    solvers: list[str] = Field(min_length=1, description="求解器名称列表")
    seed: int = Field(default=0, description="初始点随机种子")
    init: str = Field(default=DEFAULT_INIT, description="初始点写法")
    overrides: dict[str, str] = Field(default_factory=dict, description="求解器配置覆盖")
    output_dir: Path = Field(default=Path("bench_out"), description="输出目录")
    normalization: NormalizationMode = Field(default=NormalizationMode.NONE, description="特征归一化方式")


@dataclass(frozen=True, eq=False)
class BenchProblem:
    """构造好的目标函数。

    Attributes:
        oracle: 目标函数
        name: 输出文件中使用的问题名
        meta: 已知常数（仅合成问题）
    """

    oracle: ObjectiveOracle
    name: str
    meta: TestFunctionMeta | None = None

    @property
    def dimension(self) -> int:
        return self.oracle.dimension


def parse_assignments(items: list[str] | tuple[str, ...]) -> dict[str, str]:
    """解析 key=value 列表。

    Raises:
        InvalidOverrideError: 缺少等号或键为空
    """
    result: dict[str, str] = {}
    for item in items:
        key, sep, value = item.partition("=")
        key = key.strip()
        if not sep or not key:
            raise InvalidOverrideError(f"无法解析配置覆盖 '{item}'，应为 key=value", metadata={"item": item})
        result[key] = value.strip()
    return result


def parse_synthetic(data: str) -> tuple[SyntheticKind, dict[str, str]]:
    """拆分 synthetic:<kind>[:k=v,...]。"""
    body = data.removeprefix(SYNTHETIC_PREFIX)
    kind, _, params = body.partition(":")
    try:
        synthetic_kind = SyntheticKind(kind)
    except ValueError as e:
        raise DatasetError(
            f"未知的合成问题类型: {kind}",
            metadata={"supported": [k.value for k in SyntheticKind]},
            cause=e,
        ) from e
    pairs = [p for p in params.split(",") if p.strip()] if params else []
    try:
        return synthetic_kind, parse_assignments(pairs)
    except InvalidOverrideError as e:
        raise DatasetError(f"合成问题参数无法解析: {params}", cause=e) from e


def build_synthetic(kind: SyntheticKind, params: dict[str, str]) -> tuple[ObjectiveOracle, TestFunctionMeta]:
    """按参数构造合成问题。

    - quadratic: d（维数，默认 50）、kappa（条件数，默认 100）、mu（默认 1）、seed
    - log_sum_exp: n（项数，默认 2d）、d（默认 10）、mu（默认 0）、seed
    - separable_convex_quartic: d（默认 10）、radius（默认 1）
    """
    d = int(params.get("d", 50 if kind is SyntheticKind.QUADRATIC else 10))
    seed = int(params.get("seed", 0))
    match kind:
        case SyntheticKind.QUADRATIC:
            return make_conditioned_quadratic(
                d, float(params.get("kappa", 100.0)), seed=seed, mu=float(params.get("mu", 1.0))
            )
        case SyntheticKind.LOG_SUM_EXP:
            rng = np.random.default_rng(seed)
            n = int(params.get("n", 2 * d))
            C = rng.standard_normal((n, d)) / np.sqrt(d)
            return make_synthetic(kind, C=C, offsets=rng.standard_normal(n), mu=float(params.get("mu", 0.0)))
        case SyntheticKind.SEPARABLE_CONVEX_QUARTIC:
            return make_synthetic(kind, dimension=d, radius=float(params.get("radius", 1.0)))


def build_problem(
    data: str,
    lam: float = DEFAULT_LAMBDA,
    normalization: NormalizationMode | str = NormalizationMode.NONE,
    data_dir: str | Path | None = None,
) -> BenchProblem:
    """按数据来源构造目标函数。

    Raises:
        DatasetError: 数据集找不到或无法解析（解析错误带行列号）
    """
    if data.startswith(SYNTHETIC_PREFIX):
        kind, params = parse_synthetic(data)
        oracle, meta = build_synthetic(kind, params)
        return BenchProblem(oracle=oracle, name=data.removeprefix(SYNTHETIC_PREFIX).split(":")[0], meta=meta)

    path = Path(data)
    if not path.exists() and get_dataset_info(data) is not None:
        path = find_dataset_file(data_dir or ".", data)
    if not path.exists():
        raise DatasetError(f"数据文件不存在: {data}", metadata={"data": data, "data_dir": str(data_dir)})
    dataset = load_libsvm(path)
    check_shape(dataset)
    dataset = normalize(dataset, normalization)
    return BenchProblem(oracle=make_logistic(dataset, lam), name=dataset.name)


def make_initial_point(init: str, dimension: int, seed: int) -> Vector:
    """按写法生成初始点；同一 seed 对所有求解器给出相同的 x0。

    Raises:
        InvalidOverrideError: 写法无法解析
        DimensionMismatchError: 文件中的向量维数不符
    """
    kind, _, arg = init.partition(":")
    match kind:
        case "far_normal":
            variance = float(arg) if arg else 5000.0
            if not variance > 0:
                raise InvalidOverrideError(f"初始点方差必须为正: {init}")
            rng = np.random.default_rng(seed)
            return rng.normal(0.0, np.sqrt(variance), size=dimension)
        case "zeros":
            return np.zeros(dimension)
        case "file":
            x0 = np.atleast_1d(np.loadtxt(arg, dtype=np.float64))
            if x0.shape != (dimension,):
                raise DimensionMismatchError(expected=dimension, actual=x0.shape, what="x0")
            return x0
        case _:
            raise InvalidOverrideError(f"无法解析初始点写法: {init}", metadata={"init": init})


def problem_description(spec: BenchSpec) -> dict[str, Any]:
    """写入摘要的数据描述，report 据此重建问题。"""
    return {
        "data": spec.data,
        "lambda": spec.lam,
        "normalization": spec.normalization.value,
        "init": spec.init,
    }


__all__ = [
    "DEFAULT_INIT",
    "SYNTHETIC_PREFIX",
    "BenchProblem",
    "BenchSpec",
    "build_problem",
    "build_synthetic",
    "make_initial_point",
    "parse_assignments",
    "parse_synthetic",
    "problem_description",
]
