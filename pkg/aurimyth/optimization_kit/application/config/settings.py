"""配置类。

使用 pydantic-settings 进行分层配置管理，每组配置对应一个环境变量前缀：
- SOLVER_: 求解器自适应参数
- SOLVER_FD_: 有限差分 Hessian 参数
- BENCH_: 基准测试
- LOG_: 日志

注意：参数默认值在每次求解开始时完整记录到日志与结果摘要中。
"""

from __future__ import annotations

from collections.abc import Mapping
from enum import Enum
from pathlib import Path
from typing import Any, Literal, Self

from dotenv import load_dotenv
from pydantic import Field, ValidationError, model_validator
from pydantic_settings import BaseSettings, SettingsConfigDict

from aurimyth.optimization_kit.domain.hessian import FDHessianConfig

from ..errors import InvalidOverrideError


def _load_env_file(env_file: str | Path) -> bool:
    """加载 .env 文件到环境变量。"""
    return load_dotenv(env_file, override=True)


class OnSuccessSigma(str, Enum):
    """成功迭代后的 σ 更新规则（均落在 [σ_min, σ] 内）。"""

    SHRINK = "shrink"  # max(σ_min, σ/γ₁)
    KEEP = "keep"  # σ 不变
    FLOOR = "floor"  # 直接取 σ_min


class HybridSwitchRule(str, Enum):
    """混合求解器从加速阶段切换到 ARC 的判据。"""

    RELATIVE_PROGRESS = "relative_progress"
    QUADRATIC_REGION = "quadratic_region"


class FiniteDifferenceSettings(BaseSettings):
    """有限差分 Hessian 配置。

    环境变量前缀: SOLVER_FD_
    示例: SOLVER_FD_KAPPA_C, SOLVER_FD_H_INIT, SOLVER_FD_WORKERS
    """

    kappa_c: float = Field(default=1.0, gt=0, description="对角平移权重 κ_c（应不小于差分误差常数 κ_e）")
    kappa_hs: float = Field(default=1.0, gt=0, description="差分步长与试探步的耦合系数 κ_hs")
    gamma4: float = Field(default=0.5, gt=0, lt=1, description="差分步长缩减因子 γ₄")
    h_init: float = Field(default=1e-2, gt=0, le=1, description="初始差分步长 h₀,₀")
    max_shrinks: int = Field(default=200, ge=0, description="单次步长搜索允许的最大缩减次数")
    psd_tolerance: float = Field(default=1e-10, ge=0, description="近似 Hessian 半正定检查的相对容差")
    workers: int = Field(default=1, ge=1, description="差分梯度并行线程数")

    model_config = SettingsConfigDict(
        env_prefix="SOLVER_FD_",
        case_sensitive=False,
    )

    def to_domain(self) -> FDHessianConfig:
        """转换为领域层参数对象。"""
        return FDHessianConfig(**self.model_dump())


class SolverSettings(BaseSettings):
    """求解器配置。

    环境变量前缀: SOLVER_
    示例: SOLVER_GAMMA1, SOLVER_SIGMA0, SOLVER_GRAD_TOL
    """

    gamma1: float = Field(default=2.0, description="σ 放大因子 γ₁ > 1")
    gamma2: float = Field(default=3.0, description="σ 放大上界 γ₂ > γ₁")
    gamma3: float = Field(default=2.0, description="ς 提升因子 γ₃ > 1")
    eta: float = Field(default=1e-3, gt=0, description="加速阶段成功判据阈值 η（三次正则化）")
    eta_quadratic: float = Field(default=1e-3, gt=0, description="加速阶段成功判据阈值 η（梯度方法）")
    sigma_min: float = Field(default=1e-8, gt=0, description="σ 下界 σ_min")
    sigma0: float = Field(default=1.0, gt=0, description="初始 σ₀")
    varsigma1: float = Field(default=1.0, gt=0, description="估计序列初始正则权重 ς₁")
    kappa_theta: float = Field(default=0.5, description="Condition 1 的 κθ ∈ (0, 1)")
    grad_tol: float = Field(default=1e-9, gt=0, description="‖∇f‖ 停止阈值 ε")
    max_outer: int = Field(default=10000, ge=1, description="外层迭代预算")
    max_escalations_per_success: int = Field(default=100, ge=1, description="每次成功后 ς 提升次数上限")
    on_success_sigma: OnSuccessSigma = Field(default=OnSuccessSigma.SHRINK, description="成功后 σ 更新规则")
    lagged_linear_point: bool = Field(
        default=False,
        description="线性项锚定在上一个 x̄（默认锚定在新接受的点）",
    )
    subproblem_solver: Literal["lanczos", "dense", "gradient_descent"] = Field(
        default="lanczos",
        description="三次子问题求解器",
    )
    subproblem_tol: float = Field(default=1e-10, gt=0, description="子问题长期方程容差")
    lanczos_max_dim: int | None = Field(default=None, ge=1, description="Krylov 维度上限（默认 d）")
    gd_max_iterations: int = Field(default=20000, ge=1, description="梯度下降子问题最大迭代次数")
    require_stationarity: bool = Field(default=True, description="接受步时是否要求驻点恒等式成立")
    step_floor: float = Field(default=1e-14, gt=0, description="‖s‖ ≤ step_floor·(1+‖x‖) 视为零步")
    agd_step: float = Field(default=1.0, gt=0, description="AGD 基线的初始步长估计")
    hybrid_switch_window: int = Field(default=10, ge=0, description="混合求解器检查进度前的最少成功次数")
    hybrid_switch_ratio: float = Field(default=0.1, gt=0, description="混合求解器的相对进度阈值")
    hybrid_switch_rule: HybridSwitchRule = Field(
        default=HybridSwitchRule.RELATIVE_PROGRESS,
        description="混合求解器切换判据",
    )
    fd: FiniteDifferenceSettings = Field(default_factory=FiniteDifferenceSettings)

    model_config = SettingsConfigDict(
        env_prefix="SOLVER_",
        case_sensitive=False,
    )

    @model_validator(mode="after")
    def _check_ordering(self) -> Self:
        if not self.gamma2 > self.gamma1 > 1:
            raise ValueError(f"需要 γ₂ > γ₁ > 1，实际 γ₁={self.gamma1}, γ₂={self.gamma2}")
        if not self.gamma3 > 1:
            raise ValueError(f"需要 γ₃ > 1，实际 {self.gamma3}")
        if not 0 < self.kappa_theta < 1:
            raise ValueError(f"需要 0 < κθ < 1，实际 {self.kappa_theta}")
        if self.sigma0 < self.sigma_min:
            raise ValueError(f"需要 σ₀ ≥ σ_min，实际 σ₀={self.sigma0}, σ_min={self.sigma_min}")
        return self

    def with_overrides(self, overrides: Mapping[str, Any]) -> SolverSettings:
        """应用点分键覆盖（如 {"gamma1": "3", "fd.kappa_c": "0.5"}）并重新校验。

        Raises:
            InvalidOverrideError: 键不存在或值校验失败
        """
        data = self.model_dump()
        for key, value in overrides.items():
            *parents, leaf = key.split(".")
            target = data
            for part in parents:
                if not isinstance(target.get(part), dict):
                    raise InvalidOverrideError(f"未知的配置项: {key}", metadata={"key": key})
                target = target[part]
            if leaf not in target:
                raise InvalidOverrideError(f"未知的配置项: {key}", metadata={"key": key})
            target[leaf] = value
        try:
            return SolverSettings.model_validate(data)
        except ValidationError as e:
            raise InvalidOverrideError(f"配置覆盖校验失败: {e.errors()[0]['msg']}", cause=e) from e

    def resolved(self) -> dict[str, Any]:
        """返回全部已解析参数（JSON 兼容）。"""
        return self.model_dump(mode="json")


class BenchSettings(BaseSettings):
    """基准测试配置。

    环境变量前缀: BENCH_
    示例: BENCH_THREADS, BENCH_OUTPUT_DIR, BENCH_DETERMINISTIC_TIME
    """

    threads: int = Field(default=1, ge=1, description="并行求解的最大线程数")
    output_dir: str = Field(default="bench_out", description="轨迹与摘要输出目录")
    data_dir: str | None = Field(default=None, description="LIBSVM 数据文件目录")
    reference_grad_tol: float = Field(default=1e-12, gt=0, description="计算 f* 的参考求解梯度阈值")
    deterministic_time: bool = Field(default=False, description="轨迹中 wall_time_s 写为 0（逐字节可复现）")

    model_config = SettingsConfigDict(
        env_prefix="BENCH_",
        case_sensitive=False,
    )


class LogSettings(BaseSettings):
    """日志配置。

    环境变量前缀: LOG_
    示例: LOG_LEVEL, LOG_DIR, LOG_ROTATION_SIZE
    """

    level: str = Field(default="INFO", description="日志级别 (DEBUG/INFO/WARNING/ERROR/CRITICAL)")
    dir: str | None = Field(default=None, description="日志文件目录（不设置则只输出到控制台）")
    rotation_size: str = Field(default="50 MB", description="日志文件轮转大小阈值")
    retention_days: int = Field(default=7, description="日志文件保留天数")
    enable_console: bool = Field(default=True, description="是否输出日志到控制台")

    model_config = SettingsConfigDict(
        env_prefix="LOG_",
        case_sensitive=False,
    )


class OptimizationConfig(BaseSettings):
    """根配置。

    初始化时先从 .env 文件加载环境变量，再由 pydantic-settings 读取。
    """

    def __init__(self, _env_file: str | Path = ".env", **kwargs: Any) -> None:
        """初始化配置。

        Args:
            _env_file: .env 文件路径，默认为当前目录下的 .env
            **kwargs: 其他配置参数
        """
        _load_env_file(_env_file)
        super().__init__(**kwargs)

    solver: SolverSettings = Field(default_factory=SolverSettings)
    bench: BenchSettings = Field(default_factory=BenchSettings)
    log: LogSettings = Field(default_factory=LogSettings)

    model_config = SettingsConfigDict(
        case_sensitive=False,
        extra="ignore",
    )

    @property
    def fd(self) -> FiniteDifferenceSettings:
        return self.solver.fd


__all__ = [
    "BenchSettings",
    "FiniteDifferenceSettings",
    "HybridSwitchRule",
    "LogSettings",
    "OnSuccessSigma",
    "OptimizationConfig",
    "SolverSettings",
]
