"""估计序列模块。"""

from .sequence import (
    EstimateState,
    RegularizerDegree,
    add_linear,
    estimate_gradient,
    eval_estimate,
    init_estimate,
    linear_weight,
    minimize_estimate,
    mixing_weight,
    raise_varsigma,
    regularizer,
    target_weight,
)

__all__ = [
    "EstimateState",
    "RegularizerDegree",
    "add_linear",
    "estimate_gradient",
    "eval_estimate",
    "init_estimate",
    "linear_weight",
    "minimize_estimate",
    "mixing_weight",
    "raise_varsigma",
    "regularizer",
    "target_weight",
]
