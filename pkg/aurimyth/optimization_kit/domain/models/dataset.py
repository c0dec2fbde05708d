"""数据集模型。"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum

import numpy as np
from numpy.typing import NDArray

from aurimyth.optimization_kit.domain.exceptions import DatasetError, EmptyDatasetError


class NormalizationMode(str, Enum):
    """特征归一化方式。"""

    NONE = "none"
    SCALE_TO_UNIT_RANGE = "scale_to_unit_range"
    STANDARDIZE = "standardize"


@dataclass(frozen=True, slots=True)
class LibsvmRecord:
    """LIBSVM 单行记录。

    Attributes:
        label: 原始标签值
        entries: (index, value) 列表，index 从 1 开始且严格递增
    """

    label: float
    entries: tuple[tuple[int, float], ...] = ()


@dataclass(frozen=True, eq=False)
class Dataset:
    """二分类数据集（稠密存储）。

    Attributes:
        samples: n×d 样本矩阵，第 i 行为 a_i
        labels: 长度为 n 的标签向量，取值 {-1, +1}
        name: 数据集名称（用于基准测试输出）
        normalization: 已应用的归一化方式
    """

    samples: NDArray[np.float64]
    labels: NDArray[np.float64]
    name: str = "dataset"
    normalization: NormalizationMode = NormalizationMode.NONE
    metadata: dict[str, object] = field(default_factory=dict)

    def __post_init__(self) -> None:
        samples = np.array(self.samples, dtype=np.float64)
        labels = np.array(self.labels, dtype=np.float64)
        if samples.ndim != 2 or samples.shape[0] == 0 or samples.shape[1] == 0:
            raise EmptyDatasetError(f"数据集为空或形状非法: {samples.shape}")
        if labels.shape != (samples.shape[0],):
            raise DatasetError(
                f"标签数量 {labels.shape} 与样本行数 {samples.shape[0]} 不一致",
            )
        if not np.all(np.isin(labels, (-1.0, 1.0))):
            raise DatasetError("标签必须取值于 {-1, +1}")
        samples.setflags(write=False)
        labels.setflags(write=False)
        object.__setattr__(self, "samples", samples)
        object.__setattr__(self, "labels", labels)

    @property
    def n(self) -> int:
        """样本数。"""
        return int(self.samples.shape[0])

    @property
    def d(self) -> int:
        """特征维度。"""
        return int(self.samples.shape[1])

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Dataset):
            return NotImplemented
        return (
            np.array_equal(self.samples, other.samples)
            and np.array_equal(self.labels, other.labels)
        )

    def __hash__(self) -> int:
        return hash((self.samples.tobytes(), self.labels.tobytes()))

    def __repr__(self) -> str:
        return f"Dataset(name={self.name!r}, n={self.n}, d={self.d}, normalization={self.normalization.value})"


__all__ = [
    "Dataset",
    "LibsvmRecord",
    "NormalizationMode",
]
