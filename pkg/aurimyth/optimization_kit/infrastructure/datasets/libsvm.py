"""LIBSVM 文本格式读写。

每行一条记录：`<label> <idx>:<val> <idx>:<val> ...`，`#` 之后为注释。
索引从 1 开始且行内严格递增，缺失的索引视为 0。
输入以 0x1f 0x8b 开头时按 gzip 解压。
"""

from __future__ import annotations

import gzip
import math
from pathlib import Path
import re

import numpy as np

from aurimyth.optimization_kit.common.logging import log_performance, logger
from aurimyth.optimization_kit.domain.exceptions import (
    EmptyDatasetError,
    LabelMappingError,
    LibsvmParseError,
)
from aurimyth.optimization_kit.domain.models import Dataset, LibsvmRecord

GZIP_MAGIC = b"\x1f\x8b"

_TOKEN = re.compile(r"\S+")


def _decode(data: bytes | str) -> str:
    if isinstance(data, str):
        return data
    if data[:2] == GZIP_MAGIC:
        data = gzip.decompress(data)
    try:
        return data.decode("utf-8")
    except UnicodeDecodeError as e:
        raise LibsvmParseError(f"无法按 UTF-8 解码: {e.reason}", line=data[: e.start].count(b"\n") + 1) from e


def _parse_float(token: str, line: int, column: int, what: str) -> float:
    try:
        value = float(token)
    except ValueError:
        raise LibsvmParseError(f"非法{what} '{token}'", line=line, column=column) from None
    if not math.isfinite(value):
        raise LibsvmParseError(f"{what}不是有限数 '{token}'", line=line, column=column)
    return value


def parse_records(data: bytes | str) -> list[LibsvmRecord]:
    """逐行解析为 LibsvmRecord，空行与纯注释行跳过。

    Raises:
        LibsvmParseError: 非法 token（附行号与列号）或索引非递增
    """
    records: list[LibsvmRecord] = []
    for line_no, raw in enumerate(_decode(data).splitlines(), start=1):
        content = raw.split("#", 1)[0]
        tokens = list(_TOKEN.finditer(content))
        if not tokens:
            continue

        label = _parse_float(tokens[0].group(), line_no, tokens[0].start() + 1, "标签")
        entries: list[tuple[int, float]] = []
        previous = 0
        for match in tokens[1:]:
            token, column = match.group(), match.start() + 1
            index_text, sep, value_text = token.partition(":")
            if not sep or not (index_text.isascii() and index_text.isdigit()):
                raise LibsvmParseError(f"非法特征项 '{token}'，应为 <index>:<value>", line=line_no, column=column)
            index = int(index_text)
            if index < 1:
                raise LibsvmParseError(f"特征索引必须从 1 开始: {index}", line=line_no, column=column)
            if index <= previous:
                raise LibsvmParseError(
                    f"特征索引未严格递增: {previous} -> {index}", line=line_no, column=column
                )
            entries.append((index, _parse_float(value_text, line_no, column + len(index_text) + 1, "特征值")))
            previous = index
        records.append(LibsvmRecord(label=label, entries=tuple(entries)))
    return records


def map_labels(raw: np.ndarray) -> np.ndarray:
    """把二分类标签映射到 {-1, +1}。

    两个取值时较小者映射为 -1（兼容 {0,1}、{1,2}、{-1,+1}）；
    只有一个取值时，≤ 0 映射为 -1，否则为 +1。

    Raises:
        LabelMappingError: 超过两个不同取值
    """
    distinct = np.unique(raw)
    if distinct.size > 2:
        raise LabelMappingError(
            f"标签取值超过两个，不是二分类数据: {distinct[:5].tolist()}",
            metadata={"distinct": distinct.tolist()},
        )
    if distinct.size == 2:
        return np.where(raw == distinct[0], -1.0, 1.0)
    return np.where(raw <= 0, -1.0, 1.0)


def records_to_dataset(
    records: list[LibsvmRecord],
    name: str = "dataset",
    dimension: int | None = None,
) -> Dataset:
    """把记录稠密化为 Dataset，d 取出现过的最大索引（或 dimension，取较大者）。

    Raises:
        EmptyDatasetError: 没有记录或没有任何特征
        LabelMappingError: 标签无法映射为二分类
    """
    if not records:
        raise EmptyDatasetError("LIBSVM 输入中没有任何记录")
    d = max((r.entries[-1][0] for r in records if r.entries), default=0)
    if dimension is not None:
        d = max(d, int(dimension))
    if d == 0:
        raise EmptyDatasetError("LIBSVM 输入中没有任何特征")

    samples = np.zeros((len(records), d))
    for row, record in enumerate(records):
        for index, value in record.entries:
            samples[row, index - 1] = value
    raw_labels = np.array([r.label for r in records])
    return Dataset(
        samples=samples,
        labels=map_labels(raw_labels),
        name=name,
        metadata={"raw_labels": sorted(set(raw_labels.tolist()))},
    )


def parse_libsvm(data: bytes | str, name: str = "dataset", dimension: int | None = None) -> Dataset:
    """解析 LIBSVM 文本（或 gzip 压缩字节）为稠密 Dataset。

    Args:
        data: 文本或字节流
        name: 数据集名称
        dimension: 最小特征维度（测试集补齐到训练集维度时使用）

    Returns:
        Dataset: 第 k 条记录对应第 k 行

    Raises:
        LibsvmParseError: 格式错误（附行号与列号）
        LabelMappingError: 标签超过两个取值
        EmptyDatasetError: 空输入

    使用示例:
        dataset = parse_libsvm("+1 1:0.5 3:2.0\\n-1 2:1.0\\n")
        assert (dataset.n, dataset.d) == (2, 3)
    """
    return records_to_dataset(parse_records(data), name=name, dimension=dimension)


def _format_value(value: float) -> str:
    text = repr(float(value))
    return text[:-2] if text.endswith(".0") else text


def serialize_libsvm(dataset: Dataset) -> str:
    """把 Dataset 写回 LIBSVM 文本。

    只写非零项；最后一列全为零时在首行显式写出 `d:0`，
    以保证重新解析得到相同的维度。
    """
    lines: list[str] = []
    last_column_empty = not np.any(dataset.samples[:, -1])
    for row, label in enumerate(dataset.labels):
        parts = ["+1" if label > 0 else "-1"]
        values = dataset.samples[row]
        parts.extend(f"{j + 1}:{_format_value(values[j])}" for j in np.flatnonzero(values))
        if row == 0 and last_column_empty:
            parts.append(f"{dataset.d}:0")
        lines.append(" ".join(parts))
    return "\n".join(lines) + "\n"


def dataset_name_from_path(path: Path) -> str:
    """由文件名推断数据集名称（去掉 .gz/.txt 等后缀与 _scale）。"""
    name = path.name
    for suffix in (".gz", ".txt", ".libsvm", ".svm"):
        name = name.removesuffix(suffix)
    return name.removesuffix("_scale")


@log_performance(threshold=5.0)
def load_libsvm(path: str | Path, name: str | None = None, dimension: int | None = None) -> Dataset:
    """读取 LIBSVM 文件（自动识别 gzip）。"""
    path = Path(path)
    dataset = parse_libsvm(path.read_bytes(), name=name or dataset_name_from_path(path), dimension=dimension)
    logger.info(f"加载数据集 {dataset.name}: n={dataset.n}, d={dataset.d} ({path})")
    return dataset


__all__ = [
    "GZIP_MAGIC",
    "dataset_name_from_path",
    "load_libsvm",
    "map_labels",
    "parse_libsvm",
    "parse_records",
    "records_to_dataset",
    "serialize_libsvm",
]
