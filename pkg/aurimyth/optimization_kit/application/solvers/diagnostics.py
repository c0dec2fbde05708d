"""收敛分析诊断计算器。

这些量依赖 L_g、L_h、μ、D、κ_e 等常数，真实数据集上无从得知，
只用于已知常数的合成问题：校验计数器上界、速率常数与重启轮长度。

使用示例:
    oracle, meta = make_synthetic("quadratic", A=A)
    consts = ProblemConstants.from_meta(meta)
    bounds = sigma_bounds(consts, settings, AnalysisVariant.CUBIC)
    assert run.T1 <= t1_bound(settings, bounds.sigma1)
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
import math

import numpy as np
from numpy.typing import ArrayLike

from aurimyth.optimization_kit.domain.objectives import TestFunctionMeta

from ..config import SolverSettings


class AnalysisVariant(str, Enum):
    """分析所对应的算法。"""

    CUBIC = "cubic"  # 精确 Hessian
    INEXACT_CUBIC = "inexact_cubic"  # 差分 Hessian
    GRADIENT = "gradient"  # 二次正则化梯度法


@dataclass(frozen=True)
class ProblemConstants:
    """问题常数。

    Attributes:
        Lg: 梯度 Lipschitz 常数
        Lh: Hessian Lipschitz 常数
        mu: 强凸参数
        D: 水平集半径（重启轮长度需要）
        kappa_e: 差分 Hessian 误差常数
    """

    Lg: float
    Lh: float
    mu: float = 0.0
    D: float | None = None
    kappa_e: float = 0.0

    @classmethod
    def from_meta(cls, meta: TestFunctionMeta, kappa_e: float = 0.0) -> ProblemConstants:
        return cls(
            Lg=meta.known_Lg,
            Lh=meta.known_Lh,
            mu=meta.known_mu,
            D=meta.level_set_radius,
            kappa_e=kappa_e,
        )


@dataclass(frozen=True)
class SigmaBounds:
    """σ 在两个阶段中的上界 σ̄₁、σ̄₂。"""

    sigma1: float
    sigma2: float


def _fd_error(consts: ProblemConstants, settings: SolverSettings) -> float:
    """(κ_e + κ_c)·κ_hs"""
    return (consts.kappa_e + settings.fd.kappa_c) * settings.fd.kappa_hs


def sigma_bounds(consts: ProblemConstants, settings: SolverSettings, variant: AnalysisVariant | str) -> SigmaBounds:
    """计算 σ̄₁ 与 σ̄₂。"""
    g2 = settings.gamma2
    eta = settings.eta
    match AnalysisVariant(variant):
        case AnalysisVariant.CUBIC:
            s1 = max(settings.sigma0, g2 * consts.Lh / 2.0)
            s2 = max(s1, g2 * consts.Lh / 2.0 + g2 * settings.kappa_theta + g2 * eta)
        case AnalysisVariant.INEXACT_CUBIC:
            err = _fd_error(consts, settings)
            s1 = max(settings.sigma0, (3.0 * g2 * consts.Lh + g2 * err) / 2.0)
            s2 = max(s1, g2 * consts.Lh / 2.0 + g2 * settings.kappa_theta + g2 * err + g2 * eta)
        case AnalysisVariant.GRADIENT:
            eta = settings.eta_quadratic
            s1 = max(settings.sigma0, g2 * consts.Lg)
            s2 = max(s1, g2 * consts.Lg + g2 * eta)
    return SigmaBounds(sigma1=s1, sigma2=s2)


def _adaptive_factor(settings: SolverSettings, sigma_bar: float) -> float:
    return 1.0 + 2.0 / math.log(settings.gamma1) * math.log(sigma_bar / settings.sigma_min)


def t1_bound(settings: SolverSettings, sigma1: float) -> float:
    """第一阶段迭代次数上界 1 + (2/log γ₁)·log(σ̄₁/σ_min)。"""
    return _adaptive_factor(settings, sigma1)


def t2_bound(settings: SolverSettings, sigma2: float, successes: int) -> float:
    """第二阶段迭代次数上界 (1 + (2/log γ₁)·log(σ̄₂/σ_min))·|S|。"""
    return _adaptive_factor(settings, sigma2) * successes


def _cubic_growth(consts: ProblemConstants, settings: SolverSettings, sigma2: float, extra: float = 0.0) -> float:
    """((L_h + 2σ̄₂ + extra + 2κθL_g)/(1 − κθ))³"""
    kt = settings.kappa_theta
    return ((consts.Lh + 2.0 * sigma2 + extra + 2.0 * kt * consts.Lg) / (1.0 - kt)) ** 3


def t3_bound(
    consts: ProblemConstants,
    settings: SolverSettings,
    variant: AnalysisVariant | str,
    sigma2: float,
) -> int:
    """ς 累计提升次数上界。"""
    match AnalysisVariant(variant):
        case AnalysisVariant.CUBIC:
            arg = _cubic_growth(consts, settings, sigma2) / (settings.eta**2 * settings.varsigma1)
        case AnalysisVariant.INEXACT_CUBIC:
            extra = 2.0 * _fd_error(consts, settings)
            arg = _cubic_growth(consts, settings, sigma2, extra) / (settings.eta**2 * settings.varsigma1)
        case AnalysisVariant.GRADIENT:
            arg = (consts.Lg + sigma2) ** 2 * 4.0 / (settings.eta_quadratic * settings.varsigma1)
    # arg ≤ 1 时无需提升
    return max(0, math.ceil(math.log(arg) / math.log(settings.gamma3)))


def t4_bound(consts: ProblemConstants, settings: SolverSettings, sigma2: float, epsilon: float) -> int:
    """差分步长累计缩减次数上界。

    ⌈−(1/log γ₄)·log[(L_g + (κ_e+κ_c)κ_hs + σ̄₂)·h₀,₀ / ((1 − κθ)κ_hs) / ε]⌉
    """
    fd = settings.fd
    if not epsilon > 0:
        raise ValueError(f"ε 必须为正: {epsilon}")
    arg = (consts.Lg + _fd_error(consts, settings) + sigma2) * fd.h_init
    arg /= (1.0 - settings.kappa_theta) * fd.kappa_hs * epsilon
    return max(0, math.ceil(-math.log(arg) / math.log(fd.gamma4)))


def _dist(a: ArrayLike, b: ArrayLike) -> float:
    return float(np.linalg.norm(np.asarray(a, dtype=np.float64) - np.asarray(b, dtype=np.float64)))


def rate_constant_c1(
    consts: ProblemConstants,
    settings: SolverSettings,
    x0: ArrayLike,
    xbar1: ArrayLike,
    xstar: ArrayLike,
) -> float:
    """三次加速方法的速率常数：f(x̄_l) − f* ≤ C₁/l³。"""
    bounds = sigma_bounds(consts, settings, AnalysisVariant.CUBIC)
    kt = settings.kappa_theta
    r0, r1 = _dist(x0, xstar), _dist(xbar1, xstar)
    return (
        (2.0 * consts.Lh + 2.0 * bounds.sigma1) * r0**3
        + _cubic_growth(consts, settings, bounds.sigma2) / settings.eta**2 * r1**3
        + 12.0 * kt * (1.0 + kt) * consts.Lg**2 / settings.sigma_min * r0**2
    )


def rate_constant_c3(
    consts: ProblemConstants,
    settings: SolverSettings,
    x0: ArrayLike,
    xbar1: ArrayLike,
    xstar: ArrayLike,
) -> float:
    """加速梯度法的速率常数：f(x̄_l) − f* ≤ C₃/l²。"""
    bounds = sigma_bounds(consts, settings, AnalysisVariant.GRADIENT)
    return (consts.Lg + bounds.sigma1) * _dist(x0, xstar) ** 2 + 2.0 * (consts.Lg + bounds.sigma2) ** 2 * _dist(
        xbar1, xstar
    ) ** 2


def restart_length(
    consts: ProblemConstants,
    settings: SolverSettings,
    variant: AnalysisVariant | str,
    epsilon: float | None = None,
) -> int:
    """重启方案中每轮的成功迭代次数 m（向上取整）。

    Args:
        consts: 问题常数，需 μ > 0；三次变体还需 D
        settings: 求解器配置
        variant: 算法
        epsilon: 目标精度（仅差分变体需要）

    Raises:
        ValueError: 缺少所需常数
    """
    variant = AnalysisVariant(variant)
    if not consts.mu > 0:
        raise ValueError("重启轮长度需要强凸参数 μ > 0")
    bounds = sigma_bounds(consts, settings, variant)
    head = t1_bound(settings, bounds.sigma1)
    factor = _adaptive_factor(settings, bounds.sigma2)
    kt = settings.kappa_theta

    if variant is AnalysisVariant.GRADIENT:
        core = (consts.Lg + bounds.sigma1 + 2.0 * (consts.Lg + bounds.sigma2) ** 2) / consts.mu
        m = head + factor * (2.0 * math.sqrt(core) + 1.0) + t3_bound(consts, settings, variant, bounds.sigma2)
        return math.ceil(m)

    if consts.D is None:
        raise ValueError("三次变体的重启轮长度需要水平集半径 D")
    growth = _cubic_growth(consts, settings, bounds.sigma2) / settings.eta**2
    tau2 = 12.0 * kt * (1.0 + kt) * consts.Lg**2 / settings.sigma_min
    if variant is AnalysisVariant.CUBIC:
        tau1 = 2.0 * consts.Lh + 2.0 * bounds.sigma1 + growth
        tail = t3_bound(consts, settings, variant, bounds.sigma2)
    else:
        if epsilon is None:
            raise ValueError("差分变体的重启轮长度需要目标精度 ε")
        tau1 = 3.0 * consts.Lh + 3.0 * bounds.sigma1 + 3.0 * _fd_error(consts, settings) + growth
        tail = t3_bound(consts, settings, variant, bounds.sigma2) + t4_bound(consts, settings, bounds.sigma2, epsilon)
    m = head + factor * (2.0 * ((tau1 * consts.D + tau2) / consts.mu) ** (1.0 / 3.0) + 1.0) + tail
    return math.ceil(m)


def quadratic_region_threshold(
    consts: ProblemConstants,
    settings: SolverSettings,
    inexact: bool = False,
) -> float:
    """SAS 局部二次收敛区域的函数值间隙阈值。

    f(w) − f* 低于该值后重复 SAS 步二次收敛；要求 κθ < μ/2，否则返回 0。
    """
    kt = settings.kappa_theta
    mu = consts.mu
    if not mu > 2.0 * kt:
        return 0.0
    variant = AnalysisVariant.INEXACT_CUBIC if inexact else AnalysisVariant.CUBIC
    sigma2 = sigma_bounds(consts, settings, variant).sigma2
    denom = consts.Lh / 2.0 + sigma2 + kt * consts.Lg
    if inexact:
        denom += _fd_error(consts, settings)
    return mu * (mu - 2.0 * kt) ** 2 * (1.0 - kt) ** 2 / (2.0 * denom**2)


__all__ = [
    "AnalysisVariant",
    "ProblemConstants",
    "SigmaBounds",
    "quadratic_region_threshold",
    "rate_constant_c1",
    "rate_constant_c3",
    "restart_length",
    "sigma_bounds",
    "t1_bound",
    "t2_bound",
    "t3_bound",
    "t4_bound",
]
