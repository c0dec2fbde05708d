"""重启方案测试。"""

from __future__ import annotations

import numpy as np
import pytest

from aurimyth.optimization_kit.application.errors import UnknownSolverError
from aurimyth.optimization_kit.application.solvers import RestartableSolver, restart_wrapper
from aurimyth.optimization_kit.domain.objectives import make_conditioned_quadratic
from aurimyth.optimization_kit.testing import assert_monotone_trace


@pytest.fixture
def quadratic():
    return make_conditioned_quadratic(5, 8.0, seed=11)


@pytest.mark.parametrize("solver", list(RestartableSolver))
@pytest.mark.parametrize("m", [1, 2, 4])
def test_single_round_truncates_at_m(quadratic, settings, solver, m):
    oracle, _ = quadratic
    run = restart_wrapper(solver, oracle, np.full(5, 4.0), m=m, k=1, cfg=settings)
    assert run.l <= m
    assert len(run.rounds) == 1
    assert run.rounds[0].round == 1
    assert run.rounds[0].l == run.l


def test_round_records_accumulate(quadratic, settings):
    oracle, _ = quadratic
    cfg = settings.with_overrides({"grad_tol": 1e-12})
    run = restart_wrapper("AARC", oracle, np.full(5, 4.0), m=3, k=4, cfg=cfg)
    assert [r.round for r in run.rounds] == list(range(1, len(run.rounds) + 1))
    assert sum(r.l for r in run.rounds) == run.l
    assert run.rounds[-1].f == run.f_final
    assert_monotone_trace(run)
    assert run.solver == "AARC_restart"


def test_stops_early_when_converged(quadratic, settings):
    oracle, _ = quadratic
    cfg = settings.with_overrides({"grad_tol": 1e-6})
    run = restart_wrapper("AARC", oracle, np.full(5, 4.0), m=50, k=10, cfg=cfg)
    assert run.converged
    assert len(run.rounds) < 10


def test_unknown_solver(quadratic, settings):
    oracle, _ = quadratic
    with pytest.raises(UnknownSolverError) as exc_info:
        restart_wrapper("ARC", oracle, np.zeros(5), m=2, k=2, cfg=settings)
    assert "AAGD" in exc_info.value.metadata["supported"]


@pytest.mark.parametrize(("m", "k"), [(0, 1), (1, 0), (-1, 3)])
def test_rejects_non_positive_lengths(quadratic, settings, m, k):
    oracle, _ = quadratic
    with pytest.raises(ValueError, match="必须 ≥ 1"):
        restart_wrapper("AAGD", oracle, np.zeros(5), m=m, k=k, cfg=settings)


MAX_ROUND_LENGTH = 1024


def _calibrate_round_length(solver, oracle, x0, fstar, ratio, cfg) -> int:
    """m 从 1 开始加倍，直到单轮重启把 f − f* 缩小到 ratio 倍以内。"""
    gap = oracle.value(x0) - fstar
    m = 1
    while m <= MAX_ROUND_LENGTH:
        run = restart_wrapper(solver, oracle, x0, m=m, k=1, cfg=cfg)
        if run.rounds[0].f - fstar <= ratio * gap:
            return m
        m *= 2
    pytest.fail(f"{solver}: m 加倍到 {MAX_ROUND_LENGTH} 仍未达到收缩比 {ratio}")


@pytest.mark.slow
@pytest.mark.parametrize(("solver", "ratio"), [("AARC", 0.25), ("AAGD", 0.5)])
def test_restart_contracts_gap_each_round(settings, solver, ratio):
    oracle, meta = make_conditioned_quadratic(50, 100.0, seed=11)
    fstar = meta.known_fstar
    cfg = settings.with_overrides({"grad_tol": 1e-10})
    x0 = np.full(50, 4.0)
    # 取校准值的两倍
    m = 2 * _calibrate_round_length(solver, oracle, x0, fstar, ratio, cfg)

    run = restart_wrapper(solver, oracle, x0, m=m, k=5, cfg=cfg)
    assert 1 <= len(run.rounds) <= 5
    gap = oracle.value(x0) - fstar
    for record in run.rounds:
        new_gap = record.f - fstar
        assert new_gap <= ratio * gap + 1e-12 * max(1.0, abs(fstar)), record.round
        gap = new_gap
