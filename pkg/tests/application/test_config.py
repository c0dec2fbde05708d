"""配置层测试。"""

from __future__ import annotations

import json

import pytest

from aurimyth.optimization_kit.application.config import (
    FiniteDifferenceSettings,
    OnSuccessSigma,
    OptimizationConfig,
    SolverSettings,
)
from aurimyth.optimization_kit.application.errors import InvalidOverrideError
from aurimyth.optimization_kit.domain.hessian import FDHessianConfig


def test_defaults(settings):
    assert settings.gamma1 == 2.0
    assert settings.gamma2 == 3.0
    assert settings.gamma3 == 2.0
    assert settings.eta == 1e-3
    assert settings.sigma_min == 1e-8
    assert settings.kappa_theta == 0.5
    assert settings.grad_tol == 1e-9
    assert settings.max_outer == 10000
    assert settings.on_success_sigma is OnSuccessSigma.SHRINK
    assert settings.subproblem_solver == "lanczos"
    assert settings.lanczos_max_dim is None
    assert settings.fd.kappa_c == 1.0
    assert settings.fd.h_init == 1e-2


class TestOverrides:
    def test_plain_and_nested_keys(self, settings):
        updated = settings.with_overrides({"gamma1": "1.5", "fd.kappa_c": "0.5", "subproblem_solver": "dense"})
        assert updated.gamma1 == 1.5
        assert updated.fd.kappa_c == 0.5
        assert updated.subproblem_solver == "dense"
        # 原对象不变
        assert settings.gamma1 == 2.0
        assert settings.fd.kappa_c == 1.0

    @pytest.mark.parametrize("key", ["gamma9", "fd.unknown", "eta.inner"])
    def test_unknown_key(self, settings, key):
        with pytest.raises(InvalidOverrideError) as exc_info:
            settings.with_overrides({key: "1"})
        assert exc_info.value.metadata["key"] == key

    @pytest.mark.parametrize(
        "overrides",
        [
            {"gamma1": "4"},  # γ₁ > γ₂
            {"gamma1": "1"},
            {"gamma3": "0.9"},
            {"kappa_theta": "1.0"},
            {"sigma0": "1e-10"},
            {"fd.gamma4": "1.5"},
            {"max_outer": "0"},
        ],
    )
    def test_validation_failures(self, settings, overrides):
        with pytest.raises(InvalidOverrideError):
            settings.with_overrides(overrides)

    def test_ordering_checked_after_all_keys(self, settings):
        updated = settings.with_overrides({"gamma1": "4", "gamma2": "5"})
        assert (updated.gamma1, updated.gamma2) == (4.0, 5.0)


def test_environment_variables(monkeypatch):
    monkeypatch.setenv("SOLVER_GAMMA1", "2.5")
    monkeypatch.setenv("SOLVER_ON_SUCCESS_SIGMA", "floor")
    monkeypatch.setenv("SOLVER_FD_KAPPA_C", "0.25")
    monkeypatch.setenv("SOLVER_LAGGED_LINEAR_POINT", "true")
    settings = SolverSettings()
    assert settings.gamma1 == 2.5
    assert settings.on_success_sigma is OnSuccessSigma.FLOOR
    assert settings.fd.kappa_c == 0.25
    assert settings.lagged_linear_point is True


def test_constructor_rejects_bad_ordering():
    with pytest.raises(ValueError, match="γ₂ > γ₁ > 1"):
        SolverSettings(gamma1=3.0, gamma2=2.0)


def test_resolved_is_json_compatible(settings):
    resolved = settings.resolved()
    assert json.loads(json.dumps(resolved)) == resolved
    assert resolved["on_success_sigma"] == "shrink"
    assert resolved["fd"]["kappa_hs"] == 1.0


def test_fd_settings_to_domain():
    cfg = FiniteDifferenceSettings(kappa_c=0.5, workers=3).to_domain()
    assert isinstance(cfg, FDHessianConfig)
    assert cfg.kappa_c == 0.5
    assert cfg.workers == 3
    assert cfg.max_shrinks == 200


def test_root_config_reads_env_file(tmp_path, monkeypatch):
    for key in ("LOG_LEVEL", "BENCH_THREADS", "SOLVER_SIGMA0"):
        # 先登记，dotenv 写入的值在测试结束后随之恢复
        monkeypatch.setenv(key, "placeholder")
        monkeypatch.delenv(key)
    env_file = tmp_path / ".env"
    env_file.write_text("LOG_LEVEL=DEBUG\nBENCH_THREADS=4\nSOLVER_SIGMA0=2.0\n", encoding="utf-8")

    config = OptimizationConfig(_env_file=env_file)

    assert config.log.level == "DEBUG"
    assert config.bench.threads == 4
    assert config.solver.sigma0 == 2.0
    assert config.fd is config.solver.fd
