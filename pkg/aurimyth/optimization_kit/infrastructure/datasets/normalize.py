"""按特征的仿射归一化。常量特征保持不变。"""

from __future__ import annotations

import numpy as np

from aurimyth.optimization_kit.domain.models import Dataset, NormalizationMode


def normalize(dataset: Dataset, mode: NormalizationMode | str = NormalizationMode.NONE) -> Dataset:
    """对每列做仿射变换。

    Args:
        dataset: 数据集
        mode: none 原样返回；scale_to_unit_range 映射到 [0, 1]；
            standardize 零均值单位方差（总体方差）

    Returns:
        Dataset: 新数据集，normalization 字段记录所用方式
    """
    mode = NormalizationMode(mode)
    if mode is NormalizationMode.NONE:
        return dataset

    X = dataset.samples
    if mode is NormalizationMode.SCALE_TO_UNIT_RANGE:
        offset = X.min(axis=0)
        scale = X.max(axis=0) - offset
    else:
        offset = X.mean(axis=0)
        scale = X.std(axis=0)

    constant = scale == 0
    offset = np.where(constant, 0.0, offset)
    scale = np.where(constant, 1.0, scale)
    return Dataset(
        samples=(X - offset) / scale,
        labels=dataset.labels,
        name=dataset.name,
        normalization=mode,
        metadata={**dataset.metadata, "normalization": mode.value},
    )


__all__ = [
    "normalize",
]
