"""前向梯度差分 Hessian 与步长耦合搜索。

H(x) = ½(A + Aᵀ) + κ_c·h·I，A 的第 j 列为 (∇f(x + h·eⱼ) − ∇f(x))/h。
对角平移 κ_c·h·I 在 κ_c ≥ κ_e 时保证 H 半正定。

search_step_pair 在差分步长 h 与试探步 s 之间循环：
h > κ_hs‖s‖ 时 h ← γ₄h 并重建 H、重解子问题，直到 h ≤ κ_hs‖s‖。
"""

from __future__ import annotations

from collections.abc import Callable
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np
from scipy import linalg

from aurimyth.optimization_kit.common.logging import logger
from aurimyth.optimization_kit.domain.exceptions import (
    NonFiniteValueError,
    ShrinkBudgetExceededError,
)
from aurimyth.optimization_kit.domain.objectives import Matrix, Vector
from aurimyth.optimization_kit.domain.subproblem import (
    CubicModel,
    SubproblemSolution,
    SubproblemSolver,
)

GradientFn = Callable[[Vector], Vector]


@dataclass(frozen=True, slots=True)
class FDHessianConfig:
    """有限差分 Hessian 参数。

    Attributes:
        kappa_c: 对角平移权重 κ_c
        kappa_hs: 步长耦合系数 κ_hs
        gamma4: 差分步长缩减因子 γ₄ ∈ (0, 1)
        h_init: 初始差分步长 h₀,₀ ∈ (0, 1]
        max_shrinks: 单次搜索允许的最大缩减次数
        psd_tolerance: 半正定检查的相对容差
        workers: 并行求梯度的线程数
    """

    kappa_c: float = 1.0
    kappa_hs: float = 1.0
    gamma4: float = 0.5
    h_init: float = 1e-2
    max_shrinks: int = 200
    psd_tolerance: float = 1e-10
    workers: int = 1

    def __post_init__(self) -> None:
        if not self.kappa_c > 0:
            raise ValueError(f"kappa_c 必须为正: {self.kappa_c}")
        if not self.kappa_hs > 0:
            raise ValueError(f"kappa_hs 必须为正: {self.kappa_hs}")
        if not 0 < self.gamma4 < 1:
            raise ValueError(f"gamma4 必须在 (0, 1) 内: {self.gamma4}")
        if not 0 < self.h_init <= 1:
            raise ValueError(f"h_init 必须在 (0, 1] 内: {self.h_init}")
        if self.max_shrinks < 0 or self.workers < 1:
            raise ValueError("max_shrinks 不能为负，workers 至少为 1")


@dataclass(frozen=True, eq=False)
class StepPair:
    """差分步长与试探步的耦合结果。

    Attributes:
        h: 满足 h ≤ κ_hs‖s‖ 的差分步长
        s: 试探步
        H: 对应的近似 Hessian
        shrink_count: 本次搜索的缩减次数（计入 T₄）
        builds: Hessian 构造次数
        solution: 子问题解
    """

    h: float
    s: Vector
    H: Matrix
    shrink_count: int
    builds: int
    solution: SubproblemSolution


def fd_hessian(
    gradient_fn: GradientFn,
    x: Vector,
    h: float,
    kappa_c: float,
    max_workers: int = 1,
) -> Matrix:
    """前向差分构造对称化并平移的 Hessian 近似。

    恰好调用 d + 1 次 gradient_fn。探测点的梯度可并行计算，
    按列顺序组装，结果与线程数无关。

    Args:
        gradient_fn: 梯度函数
        x: 基点
        h: 差分步长 > 0
        kappa_c: 对角平移权重
        max_workers: 线程数

    Raises:
        NonFiniteValueError: 探测点梯度出现 NaN/Inf
    """
    if not h > 0:
        raise ValueError(f"差分步长必须为正: {h}")
    x = np.asarray(x, dtype=np.float64)
    d = x.shape[0]
    shifted_points = [x + h * e for e in np.eye(d)]

    g0 = np.asarray(gradient_fn(x), dtype=np.float64)
    if max_workers > 1 and d > 1:
        with ThreadPoolExecutor(max_workers=max_workers) as executor:
            columns = list(executor.map(gradient_fn, shifted_points))
    else:
        columns = [gradient_fn(p) for p in shifted_points]

    A = (np.column_stack(columns) - g0[:, None]) / h
    if not np.all(np.isfinite(A)):
        raise NonFiniteValueError(f"有限差分 Hessian 含非有限值（h = {h:.3e}）", metadata={"h": h})
    return 0.5 * (A + A.T) + kappa_c * h * np.eye(d)


def _is_psd(H: Matrix, tolerance: float) -> bool:
    lam_min = float(linalg.eigvalsh(H, subset_by_index=[0, 0])[0])
    return lam_min >= -tolerance * (1.0 + float(np.max(np.abs(H))))


def search_step_pair(
    gradient_fn: GradientFn,
    x: Vector,
    f0: float,
    g: Vector,
    sigma: float,
    cfg: FDHessianConfig,
    kappa_theta: float,
    h_start: float,
    subsolver: SubproblemSolver,
) -> StepPair:
    """搜索满足 h ≤ κ_hs‖s‖ 的 (h, s, H)。

    每轮构造 H_k 并把子问题解到 Condition 1；H_k 出现超出容差的负特征值时
    同样按 γ₄ 缩减 h 重建。重解时以上一轮的 s 作为热启动。

    Args:
        gradient_fn: 梯度函数（差分探测专用）
        x: 当前点
        f0: f(x)
        g: ∇f(x)，调用方保证非零
        sigma: σ
        cfg: 差分参数
        kappa_theta: Condition 1 的 κθ
        h_start: 起始差分步长（沿用上一次接受的 h）
        subsolver: 子问题求解器

    Raises:
        ShrinkBudgetExceededError: 缩减次数超过 cfg.max_shrinks
    """
    h = h_start
    shrinks = 0
    builds = 0
    warm: Vector | None = None

    while True:
        H = fd_hessian(gradient_fn, x, h, cfg.kappa_c, cfg.workers)
        builds += 1
        if not _is_psd(H, cfg.psd_tolerance):
            logger.debug(f"差分 Hessian 非半正定，缩减 h = {h:.3e}")
        else:
            solution = subsolver.solve(CubicModel(f0=f0, g=g, H=H, sigma=sigma), kappa_theta, warm)
            if h <= cfg.kappa_hs * solution.step_norm:
                return StepPair(h=h, s=solution.s, H=H, shrink_count=shrinks, builds=builds, solution=solution)
            warm = solution.s

        if shrinks >= cfg.max_shrinks:
            raise ShrinkBudgetExceededError(
                f"差分步长缩减 {shrinks} 次仍未满足 h ≤ κ_hs‖s‖（试探步趋于零）",
                metadata={"h": h, "shrinks": shrinks, "sigma": sigma},
            )
        h *= cfg.gamma4
        shrinks += 1


__all__ = [
    "FDHessianConfig",
    "GradientFn",
    "StepPair",
    "fd_hessian",
    "search_step_pair",
]
