"""三次正则化子问题模块。

- CubicModel / SubproblemSolution: 模型与近似解
- solve_dense: 特征分解得到的全局极小点（对照解）
- solve_lanczos: Krylov 子空间求解，以 Condition 1 终止
- solve_gradient_descent: 可选的梯度下降求解
- SubproblemSolverFactory: 按名称创建求解器
"""

from .dense import solve_dense
from .factory import (
    DenseSubproblemSolver,
    GradientDescentSubproblemSolver,
    LanczosSubproblemSolver,
    SubproblemSolver,
    SubproblemSolverFactory,
)
from .gradient import cauchy_point, solve_gradient_descent
from .lanczos import solve_lanczos
from .model import (
    CubicModel,
    SubproblemSolution,
    build_solution,
    condition1_holds,
    condition1_rhs,
    model_gradient,
    model_value,
    rescale_to_stationarity,
    stationarity_holds,
    stationarity_residual,
    zero_step_solution,
)
from .secular import SecularRoot, secular_function, solve_secular

__all__ = [
    "CubicModel",
    "DenseSubproblemSolver",
    "GradientDescentSubproblemSolver",
    "LanczosSubproblemSolver",
    "SecularRoot",
    "SubproblemSolution",
    "SubproblemSolver",
    "SubproblemSolverFactory",
    "build_solution",
    "cauchy_point",
    "condition1_holds",
    "condition1_rhs",
    "model_gradient",
    "model_value",
    "rescale_to_stationarity",
    "secular_function",
    "solve_dense",
    "solve_gradient_descent",
    "solve_lanczos",
    "solve_secular",
    "stationarity_holds",
    "stationarity_residual",
    "zero_step_solution",
]
