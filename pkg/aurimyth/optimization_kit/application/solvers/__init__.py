"""求解器。

- cubic: AARC（精确 Hessian）、AARC-Q（差分 Hessian）与 ARC 基线
- gradient: AAGD 与 Nesterov 加速梯度基线
- hybrid: 加速阶段后切换到 ARC 的混合策略
- restart: 强凸问题的重启方案
- diagnostics: 已知常数问题上的上界与速率常数
- registry: 按名称创建求解器
"""

from .cubic import SASResult, aas_cubic, sas_cubic, solve_aarc, solve_aarcq, solve_arc_baseline
from .diagnostics import (
    AnalysisVariant,
    ProblemConstants,
    SigmaBounds,
    quadratic_region_threshold,
    rate_constant_c1,
    rate_constant_c3,
    restart_length,
    sigma_bounds,
    t1_bound,
    t2_bound,
    t3_bound,
    t4_bound,
)
from .engine import Iterate, PhaseOutcome, SolverSession, SuccessEvent, SuccessHook, TwoPhaseEngine
from .gradient import solve_aagd, solve_agd_baseline
from .hybrid import quadratic_region_rule, relative_progress_rule, solve_hybrid_aarc
from .records import (
    AcceptedStep,
    EscalationRecord,
    Phase,
    RoundRecord,
    RunRecorder,
    RunStatus,
    SolverRun,
    TraceRecord,
)
from .registry import SolverFactory, SolverFn
from .restart import RestartableSolver, restart_wrapper
from .steps import HessianMode

__all__ = [
    "AcceptedStep",
    "AnalysisVariant",
    "EscalationRecord",
    "HessianMode",
    "Iterate",
    "Phase",
    "PhaseOutcome",
    "ProblemConstants",
    "RestartableSolver",
    "RoundRecord",
    "RunRecorder",
    "RunStatus",
    "SASResult",
    "SigmaBounds",
    "SolverFactory",
    "SolverFn",
    "SolverRun",
    "SolverSession",
    "SuccessEvent",
    "SuccessHook",
    "TraceRecord",
    "TwoPhaseEngine",
    "aas_cubic",
    "quadratic_region_rule",
    "quadratic_region_threshold",
    "rate_constant_c1",
    "rate_constant_c3",
    "relative_progress_rule",
    "restart_length",
    "restart_wrapper",
    "sas_cubic",
    "sigma_bounds",
    "solve_aagd",
    "solve_aarc",
    "solve_aarcq",
    "solve_agd_baseline",
    "solve_arc_baseline",
    "solve_hybrid_aarc",
    "t1_bound",
    "t2_bound",
    "t3_bound",
    "t4_bound",
]
