"""基准数据集目录。

登记二分类 LIBSVM 数据集的预期规模；w8a 与 SUSY 规模较大，标记为慢速。
"""

from __future__ import annotations

from pathlib import Path

from pydantic import BaseModel, Field

from aurimyth.optimization_kit.common.logging import logger
from aurimyth.optimization_kit.domain.exceptions import DatasetError
from aurimyth.optimization_kit.domain.models import Dataset

LIBSVM_BINARY_URL = "https://www.csie.ntu.edu.tw/~cjlin/libsvmtools/datasets/binary.html"


class DatasetInfo(BaseModel):
    """数据集目录条目。"""

    name: str = Field(..., description="数据集名称")
    n: int = Field(..., description="样本数")
    d: int = Field(..., description="特征维度")
    slow: bool = Field(default=False, description="是否为大规模（可选）数据集")
    filenames: tuple[str, ...] = Field(default=(), description="候选文件名")

    def candidates(self) -> tuple[str, ...]:
        names = self.filenames or (self.name,)
        return tuple(f"{n}{suffix}" for n in names for suffix in ("", ".gz"))


CATALOG: dict[str, DatasetInfo] = {
    info.name: info
    for info in (
        DatasetInfo(name="sonar", n=208, d=60, filenames=("sonar_scale", "sonar")),
        DatasetInfo(name="splice", n=1000, d=60, filenames=("splice", "splice_scale")),
        DatasetInfo(name="svmguide1", n=3089, d=4),
        DatasetInfo(name="svmguide3", n=1243, d=22),
        DatasetInfo(name="w8a", n=49749, d=300, slow=True),
        DatasetInfo(name="SUSY", n=5_000_000, d=18, slow=True),
    )
}


def get_dataset_info(name: str) -> DatasetInfo | None:
    """按名称查询目录条目（大小写不敏感）。"""
    lowered = name.lower()
    return next((info for key, info in CATALOG.items() if key.lower() == lowered), None)


def find_dataset_file(data_dir: str | Path, name: str) -> Path:
    """在数据目录中查找已登记数据集的文件。

    Raises:
        DatasetError: 未登记或文件不存在
    """
    info = get_dataset_info(name)
    if info is None:
        raise DatasetError(f"未登记的数据集: {name}（可用: {', '.join(CATALOG)}）")
    data_dir = Path(data_dir)
    for candidate in info.candidates():
        path = data_dir / candidate
        if path.is_file():
            return path
    raise DatasetError(
        f"数据目录 {data_dir} 中找不到 {name}（尝试: {', '.join(info.candidates())}；下载: {LIBSVM_BINARY_URL}）",
        metadata={"data_dir": str(data_dir), "name": name},
    )


def check_shape(dataset: Dataset) -> bool:
    """与目录中登记的规模比对，不一致时记录警告。"""
    info = get_dataset_info(dataset.name)
    if info is None:
        return True
    if (dataset.n, dataset.d) != (info.n, info.d):
        logger.warning(
            f"数据集 {dataset.name} 规模 ({dataset.n}, {dataset.d}) 与登记值 ({info.n}, {info.d}) 不一致"
        )
        return False
    return True


__all__ = [
    "CATALOG",
    "LIBSVM_BINARY_URL",
    "DatasetInfo",
    "check_shape",
    "find_dataset_file",
    "get_dataset_info",
]
