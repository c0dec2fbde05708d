"""数据集读写模块。

- parse_libsvm / serialize_libsvm / load_libsvm: LIBSVM 格式（支持 gzip）
- normalize: 按特征归一化
- CATALOG: 基准数据集目录
"""

from .catalog import (
    CATALOG,
    LIBSVM_BINARY_URL,
    DatasetInfo,
    check_shape,
    find_dataset_file,
    get_dataset_info,
)
from .libsvm import (
    GZIP_MAGIC,
    dataset_name_from_path,
    load_libsvm,
    map_labels,
    parse_libsvm,
    parse_records,
    records_to_dataset,
    serialize_libsvm,
)
from .normalize import normalize

__all__ = [
    "CATALOG",
    "GZIP_MAGIC",
    "LIBSVM_BINARY_URL",
    "DatasetInfo",
    "check_shape",
    "dataset_name_from_path",
    "find_dataset_file",
    "get_dataset_info",
    "load_libsvm",
    "map_labels",
    "normalize",
    "parse_libsvm",
    "parse_records",
    "records_to_dataset",
    "serialize_libsvm",
]
