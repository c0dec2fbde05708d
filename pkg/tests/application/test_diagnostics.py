"""诊断计算器测试：手算值与合成问题上的计数器/速率上界。"""

from __future__ import annotations

import numpy as np
import pytest

from aurimyth.optimization_kit.application.bench import make_initial_point
from aurimyth.optimization_kit.application.solvers import (
    AnalysisVariant,
    Phase,
    ProblemConstants,
    quadratic_region_threshold,
    rate_constant_c1,
    rate_constant_c3,
    restart_length,
    sigma_bounds,
    solve_aagd,
    solve_aarc,
    t1_bound,
    t2_bound,
    t3_bound,
    t4_bound,
)
from aurimyth.optimization_kit.domain.objectives import make_conditioned_quadratic


@pytest.fixture
def quadratic():
    return make_conditioned_quadratic(6, 10.0, seed=3)


class TestSigmaBounds:
    def test_cubic(self, settings):
        bounds = sigma_bounds(ProblemConstants(Lg=10.0, Lh=4.0), settings, AnalysisVariant.CUBIC)
        assert bounds.sigma1 == pytest.approx(6.0)  # γ₂·L_h/2
        assert bounds.sigma2 == pytest.approx(6.0 + 1.5 + 3e-3)

    def test_gradient(self, settings):
        bounds = sigma_bounds(ProblemConstants(Lg=10.0, Lh=0.0), settings, "gradient")
        assert bounds.sigma1 == pytest.approx(30.0)
        assert bounds.sigma2 == pytest.approx(30.003)

    def test_inexact_adds_fd_error(self, settings):
        consts = ProblemConstants(Lg=10.0, Lh=4.0, kappa_e=0.5)
        exact = sigma_bounds(consts, settings, AnalysisVariant.CUBIC)
        inexact = sigma_bounds(consts, settings, AnalysisVariant.INEXACT_CUBIC)
        # (3γ₂L_h + γ₂(κ_e + κ_c)κ_hs)/2
        assert inexact.sigma1 == pytest.approx((36.0 + 4.5) / 2.0)
        assert inexact.sigma2 > exact.sigma2

    def test_sigma0_dominates_small_constants(self, settings):
        bounds = sigma_bounds(ProblemConstants(Lg=0.1, Lh=0.0), settings, AnalysisVariant.CUBIC)
        assert bounds.sigma1 == settings.sigma0


class TestCounterBounds:
    def test_t1_bound_value(self, settings):
        expected = 1.0 + 2.0 / np.log(2.0) * np.log(1.0 / 1e-8)
        assert t1_bound(settings, 1.0) == pytest.approx(expected)
        assert t2_bound(settings, 1.0, successes=3) == pytest.approx(3 * expected)

    def test_t3_bound_zero_when_no_escalation_needed(self, settings):
        cfg = settings.with_overrides({"varsigma1": 1e12})
        assert t3_bound(ProblemConstants(Lg=1.0, Lh=0.0), cfg, AnalysisVariant.CUBIC, 1.5) == 0

    def test_t4_bound(self, settings):
        consts = ProblemConstants(Lg=1.0, Lh=1.0)
        loose = t4_bound(consts, settings, 2.0, epsilon=1e-3)
        tight = t4_bound(consts, settings, 2.0, epsilon=1e-6)
        assert tight > loose >= 0
        with pytest.raises(ValueError):
            t4_bound(consts, settings, 2.0, epsilon=0.0)

    def test_aarc_counters_within_bounds(self, quadratic, settings):
        oracle, meta = quadratic
        consts = ProblemConstants.from_meta(meta)
        cfg = settings.with_overrides({"grad_tol": 1e-8})
        run = solve_aarc(oracle, np.full(6, 3.0), cfg)
        assert run.converged

        bounds = sigma_bounds(consts, cfg, AnalysisVariant.CUBIC)
        assert run.T1 <= t1_bound(cfg, bounds.sigma1)
        assert run.T2 <= t2_bound(cfg, bounds.sigma2, successes=run.l - 1)
        assert run.T3 <= t3_bound(consts, cfg, AnalysisVariant.CUBIC, bounds.sigma2)

    def test_aagd_counters_within_bounds(self, quadratic, settings):
        oracle, meta = quadratic
        consts = ProblemConstants.from_meta(meta)
        cfg = settings.with_overrides({"grad_tol": 1e-6})
        run = solve_aagd(oracle, np.full(6, 3.0), cfg)
        assert run.converged

        bounds = sigma_bounds(consts, cfg, AnalysisVariant.GRADIENT)
        assert run.T1 <= t1_bound(cfg, bounds.sigma1)
        assert run.T3 <= t3_bound(consts, cfg, AnalysisVariant.GRADIENT, bounds.sigma2)


def _first_success_point(run):
    step = run.accepted_steps[0]
    return step.base + step.s


class TestRateConstants:
    def test_cubic_gap_below_rate(self, quadratic, settings):
        oracle, meta = quadratic
        x0 = np.full(6, 3.0)
        run = solve_aarc(oracle, x0, settings.with_overrides({"grad_tol": 1e-8}))
        c1 = rate_constant_c1(ProblemConstants.from_meta(meta), settings, x0, _first_success_point(run), meta.known_xstar)
        for record in run.successful_records():
            if record.phase is Phase.AAS:
                assert record.f - meta.known_fstar <= c1 / record.l**3

    def test_gradient_gap_below_rate(self, quadratic, settings):
        oracle, meta = quadratic
        x0 = np.full(6, 3.0)
        run = solve_aagd(oracle, x0, settings.with_overrides({"grad_tol": 1e-6}))
        c3 = rate_constant_c3(ProblemConstants.from_meta(meta), settings, x0, _first_success_point(run), meta.known_xstar)
        for record in run.successful_records():
            if record.phase is Phase.AAS:
                assert record.f - meta.known_fstar <= c3 / record.l**2

    def test_rate_constant_grows_with_distance(self, quadratic, settings):
        _, meta = quadratic
        consts = ProblemConstants.from_meta(meta)
        xstar = meta.known_xstar
        near = rate_constant_c1(consts, settings, xstar + 0.1, xstar + 0.1, xstar)
        far = rate_constant_c1(consts, settings, xstar + 1.0, xstar + 1.0, xstar)
        assert far > near > 0


@pytest.mark.slow
class TestBenchmarkScaleQuadratic:
    """d = 50、条件数 100、远离最优点的初始点。"""

    @pytest.fixture
    def problem(self):
        oracle, meta = make_conditioned_quadratic(50, 100.0, seed=11)
        return oracle, meta, make_initial_point("far_normal:5000", 50, seed=1)

    def test_aarc_counters_and_rate(self, problem, settings):
        oracle, meta, x0 = problem
        consts = ProblemConstants.from_meta(meta)
        cfg = settings.with_overrides({"grad_tol": 1e-8})
        run = solve_aarc(oracle, x0, cfg)
        assert run.converged, run.message

        bounds = sigma_bounds(consts, cfg, AnalysisVariant.CUBIC)
        assert run.T1 <= t1_bound(cfg, bounds.sigma1)
        assert run.T2 <= t2_bound(cfg, bounds.sigma2, successes=run.l - 1)
        assert run.T3 <= t3_bound(consts, cfg, AnalysisVariant.CUBIC, bounds.sigma2)

        c1 = rate_constant_c1(consts, cfg, x0, _first_success_point(run), meta.known_xstar)
        aas = [r for r in run.successful_records() if r.phase is Phase.AAS]
        assert aas
        for record in aas:
            assert record.f - meta.known_fstar <= c1 / record.l**3

    def test_aagd_counters_and_rate(self, problem, settings):
        oracle, meta, x0 = problem
        consts = ProblemConstants.from_meta(meta)
        cfg = settings.with_overrides({"grad_tol": 1e-6, "max_outer": 3000})
        run = solve_aagd(oracle, x0, cfg)

        bounds = sigma_bounds(consts, cfg, AnalysisVariant.GRADIENT)
        assert run.T1 <= t1_bound(cfg, bounds.sigma1)
        assert run.T3 <= t3_bound(consts, cfg, AnalysisVariant.GRADIENT, bounds.sigma2)

        c3 = rate_constant_c3(consts, cfg, x0, _first_success_point(run), meta.known_xstar)
        aas = [r for r in run.successful_records() if r.phase is Phase.AAS]
        assert len(aas) >= 3
        for record in aas:
            assert record.f - meta.known_fstar <= c3 / record.l**2


class TestRestartLength:
    def test_gradient_variant(self, quadratic, settings):
        _, meta = quadratic
        m = restart_length(ProblemConstants.from_meta(meta), settings, AnalysisVariant.GRADIENT)
        assert isinstance(m, int)
        assert m > 1

    def test_cubic_needs_radius(self, settings):
        with pytest.raises(ValueError, match="D"):
            restart_length(ProblemConstants(Lg=1.0, Lh=1.0, mu=0.5), settings, AnalysisVariant.CUBIC)
        m = restart_length(ProblemConstants(Lg=1.0, Lh=1.0, mu=0.5, D=2.0), settings, AnalysisVariant.CUBIC)
        assert m > 1

    def test_inexact_needs_epsilon(self, settings):
        consts = ProblemConstants(Lg=1.0, Lh=1.0, mu=0.5, D=2.0)
        with pytest.raises(ValueError, match="ε"):
            restart_length(consts, settings, AnalysisVariant.INEXACT_CUBIC)
        with_eps = restart_length(consts, settings, AnalysisVariant.INEXACT_CUBIC, epsilon=1e-6)
        assert with_eps > restart_length(consts, settings, AnalysisVariant.CUBIC)

    def test_needs_strong_convexity(self, settings):
        with pytest.raises(ValueError, match="μ"):
            restart_length(ProblemConstants(Lg=1.0, Lh=1.0, D=1.0), settings, AnalysisVariant.GRADIENT)


class TestQuadraticRegion:
    def test_zero_without_margin(self, settings):
        # μ = 1 = 2κθ
        assert quadratic_region_threshold(ProblemConstants(Lg=10.0, Lh=1.0, mu=1.0), settings) == 0.0

    def test_positive_with_margin(self, settings):
        consts = ProblemConstants(Lg=10.0, Lh=1.0, mu=4.0)
        exact = quadratic_region_threshold(consts, settings)
        inexact = quadratic_region_threshold(consts, settings, inexact=True)
        assert exact > inexact > 0
