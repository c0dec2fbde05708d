"""Infrastructure 层 - 基础设施层。

提供数据集读写等与外部文件格式打交道的能力。
"""

from __future__ import annotations

__all__ = [
    "datasets",
]
