"""求解器注册表测试。"""

from __future__ import annotations

import numpy as np
import pytest

from aurimyth.optimization_kit.application.errors import UnknownSolverError
from aurimyth.optimization_kit.application.solvers import SolverFactory, SolverRun
from aurimyth.optimization_kit.domain.objectives import make_conditioned_quadratic

ALL_SOLVERS = ["AARC", "AARC_hybrid", "AARC_Q", "ARC", "AAGD", "AGD"]


def test_registered_names():
    assert set(ALL_SOLVERS) <= set(SolverFactory.get_registered())


def test_unknown_name():
    with pytest.raises(UnknownSolverError) as exc_info:
        SolverFactory.create("Newton")
    assert "AARC" in exc_info.value.metadata["available"]


@pytest.mark.parametrize("name", ALL_SOLVERS)
def test_every_solver_reaches_optimum(settings, name):
    oracle, meta = make_conditioned_quadratic(4, 5.0, seed=5)
    cfg = settings.with_overrides({"grad_tol": 1e-6})
    run = SolverFactory.run(name, oracle, np.ones(4), cfg, meta)
    assert isinstance(run, SolverRun)
    assert run.solver == name
    assert run.converged, run.message
    assert run.f_final == pytest.approx(meta.known_fstar, abs=1e-9)
    assert run.config["grad_tol"] == 1e-6


def test_register_custom_solver(monkeypatch, settings):
    monkeypatch.setattr(SolverFactory, "_solvers", dict(SolverFactory._solvers))
    calls = []

    def fake(oracle, x0, cfg, meta):
        calls.append(cfg)
        return SolverFactory.run("AAGD", oracle, x0, cfg, meta)

    SolverFactory.register("fake", fake)
    oracle, _ = make_conditioned_quadratic(3, 2.0)
    SolverFactory.run("fake", oracle, np.zeros(3), settings)
    assert calls == [settings]
    assert "fake" in SolverFactory.get_registered()
