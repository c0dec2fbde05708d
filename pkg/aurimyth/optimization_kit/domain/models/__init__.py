"""领域模型。

- Dataset: 稠密样本矩阵 + {-1, +1} 标签
- LibsvmRecord: LIBSVM 单行记录
- NormalizationMode: 特征归一化方式
"""

from .dataset import Dataset, LibsvmRecord, NormalizationMode

__all__ = [
    "Dataset",
    "LibsvmRecord",
    "NormalizationMode",
]
