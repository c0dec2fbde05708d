"""目标函数模块。

- ObjectiveOracle: 统一的 f / ∇f / ∇²f / Hessian-向量积求值抽象
- CountingOracle: 单次求解的调用计数包装
- make_logistic: 正则化逻辑回归
- make_synthetic: 带已知常数的合成凸函数
"""

from .base import (
    Capability,
    CountingOracle,
    Evaluation,
    Matrix,
    ObjectiveOracle,
    OracleCallCounts,
    RestrictedOracle,
    Vector,
    evaluate,
    gradient_only,
)
from .logistic import DEFAULT_LAMBDA, LogisticOracle, make_logistic
from .synthetic import (
    LogSumExpOracle,
    QuadraticOracle,
    SeparableQuarticOracle,
    SyntheticKind,
    TestFunctionMeta,
    make_conditioned_quadratic,
    make_synthetic,
)

__all__ = [
    "DEFAULT_LAMBDA",
    "Capability",
    "CountingOracle",
    "Evaluation",
    "LogSumExpOracle",
    "LogisticOracle",
    "Matrix",
    "ObjectiveOracle",
    "OracleCallCounts",
    "QuadraticOracle",
    "RestrictedOracle",
    "SeparableQuarticOracle",
    "SyntheticKind",
    "TestFunctionMeta",
    "Vector",
    "evaluate",
    "gradient_only",
    "make_conditioned_quadratic",
    "make_logistic",
    "make_synthetic",
]
