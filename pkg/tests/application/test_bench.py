"""基准测试执行与输出文件测试。"""

from __future__ import annotations

import json

import numpy as np
import pytest

from aurimyth.optimization_kit.application.bench import (
    TRACE_COLUMNS,
    BenchSpec,
    build_problem,
    make_initial_point,
    parse_assignments,
    parse_synthetic,
    read_summary_json,
    read_trace_csv,
    run_bench,
)
from aurimyth.optimization_kit.application.config import BenchSettings
from aurimyth.optimization_kit.common.logging import logger, setup_logging
from aurimyth.optimization_kit.application.errors import (
    InvalidOverrideError,
    OutputNotWritableError,
    UnknownSolverError,
)
from aurimyth.optimization_kit.domain.exceptions import DatasetError, DimensionMismatchError
from aurimyth.optimization_kit.domain.objectives import SyntheticKind
from aurimyth.optimization_kit.infrastructure.datasets import serialize_libsvm

SYNTHETIC = "synthetic:quadratic:d=5,kappa=10,seed=4"
SOLVERS = ["AARC", "AAGD", "AGD"]


def _spec(output_dir, **kwargs):
    values = {
        "data": SYNTHETIC,
        "solvers": SOLVERS,
        "seed": 3,
        "init": "far_normal:4",
        "overrides": {"grad_tol": "1e-6"},
        "output_dir": output_dir,
    }
    values.update(kwargs)
    return BenchSpec(**values)


@pytest.fixture
def bench_settings():
    return BenchSettings(deterministic_time=True, threads=2)


class TestRunBench:
    def test_writes_trace_and_summary_per_solver(self, tmp_path, settings, bench_settings):
        result = run_bench(_spec(tmp_path / "out"), bench_settings, settings)

        expected = {f"quadratic_{name}_seed3.{ext}" for name in SOLVERS for ext in ("csv", "json")}
        assert {p.name for p in (tmp_path / "out").iterdir()} == expected
        assert {p.name for p in result.files} == expected
        assert [o.solver for o in result.outputs] == SOLVERS

        header = (tmp_path / "out" / "quadratic_AARC_seed3.csv").read_text(encoding="utf-8").splitlines()[0]
        assert header.split(",") == list(TRACE_COLUMNS)

    def test_summary_matches_last_row(self, tmp_path, settings, bench_settings):
        result = run_bench(_spec(tmp_path), bench_settings, settings)
        for output in result.outputs:
            rows = read_trace_csv(output.trace_path)
            summary = read_summary_json(output.summary_path)
            last = rows[-1]
            assert summary.status == "converged"
            assert summary.f_final == last["f"]
            assert summary.oracle_calls == {k: last[k] for k in ("values", "gradients", "hvps", "fd_gradients")}
            assert summary.l == last["l"]
            assert summary.seed == 3
            assert summary.dataset == "quadratic"
            assert summary.config["grad_tol"] == 1e-6
            assert summary.problem["data"] == SYNTHETIC
            assert summary.wall_time_s == 0.0
            # 第 0 行是初始点
            assert rows[0]["outer_index"] == 0
            assert all(r["wall_time_s"] == 0.0 for r in rows)

    def test_counters_monotone_in_csv(self, tmp_path, settings, bench_settings):
        result = run_bench(_spec(tmp_path), bench_settings, settings)
        for output in result.outputs:
            rows = read_trace_csv(output.trace_path)
            for key in ("values", "gradients", "hvps", "fd_gradients"):
                column = [r[key] for r in rows]
                assert column == sorted(column)

    def test_same_initial_point_for_all_solvers(self, tmp_path, settings, bench_settings):
        result = run_bench(_spec(tmp_path), bench_settings, settings)
        first_rows = [read_trace_csv(o.trace_path)[0] for o in result.outputs]
        assert len({row["f"] for row in first_rows}) == 1
        np.testing.assert_array_equal(result.x0, make_initial_point("far_normal:4", 5, 3))

    def test_byte_identical_reruns(self, tmp_path, settings, bench_settings):
        run_bench(_spec(tmp_path / "a"), bench_settings, settings)
        run_bench(_spec(tmp_path / "b", solvers=list(reversed(SOLVERS))), bench_settings, settings)
        for name in SOLVERS:
            stem = f"quadratic_{name}_seed3"
            assert (tmp_path / "a" / f"{stem}.csv").read_bytes() == (tmp_path / "b" / f"{stem}.csv").read_bytes()
            assert (tmp_path / "a" / f"{stem}.json").read_bytes() == (tmp_path / "b" / f"{stem}.json").read_bytes()

    def test_logs_carry_per_solver_run_id(self, tmp_path, settings, bench_settings):
        setup_logging(log_level="INFO", enable_console=False)
        seen: list[tuple[str, str]] = []
        handler_id = logger.add(lambda m: seen.append((m.record["extra"].get("run_id", ""), m.record["message"])))
        try:
            run_bench(_spec(tmp_path), bench_settings, settings)
        finally:
            logger.remove(handler_id)
        for name in SOLVERS:
            run_ids = {run_id for run_id, message in seen if message.startswith(f"{name} 结束")}
            assert run_ids == {f"quadratic_{name}_seed3"}

    def test_unknown_solver_fails_before_running(self, tmp_path, settings, bench_settings):
        with pytest.raises(UnknownSolverError):
            run_bench(_spec(tmp_path / "out", solvers=["AARC", "Newton"]), bench_settings, settings)
        assert not (tmp_path / "out").exists()

    def test_invalid_override(self, tmp_path, settings, bench_settings):
        with pytest.raises(InvalidOverrideError):
            run_bench(_spec(tmp_path, overrides={"gamma1": "0.5"}), bench_settings, settings)

    def test_output_path_is_a_file(self, tmp_path, settings, bench_settings):
        blocker = tmp_path / "taken"
        blocker.write_text("", encoding="utf-8")
        with pytest.raises(OutputNotWritableError):
            run_bench(_spec(blocker), bench_settings, settings)

    def test_libsvm_file(self, tmp_path, factory, settings, bench_settings):
        path = tmp_path / "toy.libsvm"
        path.write_text(serialize_libsvm(factory.dataset(n=30, d=4)), encoding="utf-8")
        spec = _spec(tmp_path / "out", data=str(path), solvers=["AARC"], lam=1e-2, init="zeros")
        result = run_bench(spec, bench_settings, settings)
        assert result.problem.name == "toy"
        assert result.outputs[0].trace_path.name == "toy_AARC_seed3.csv"
        summary = json.loads(result.outputs[0].summary_path.read_text(encoding="utf-8"))
        assert summary["problem"]["lambda"] == 1e-2


class TestParsing:
    def test_assignments(self):
        assert parse_assignments(["gamma1=3", " fd.kappa_c = 0.5 "]) == {"gamma1": "3", "fd.kappa_c": "0.5"}

    @pytest.mark.parametrize("item", ["gamma1", "=3"])
    def test_bad_assignment(self, item):
        with pytest.raises(InvalidOverrideError):
            parse_assignments([item])

    def test_synthetic(self):
        kind, params = parse_synthetic("synthetic:log_sum_exp:d=3,n=7")
        assert kind is SyntheticKind.LOG_SUM_EXP
        assert params == {"d": "3", "n": "7"}
        assert parse_synthetic("synthetic:quadratic") == (SyntheticKind.QUADRATIC, {})

    @pytest.mark.parametrize("data", ["synthetic:cubic", "synthetic:quadratic:d"])
    def test_bad_synthetic(self, data):
        with pytest.raises(DatasetError):
            parse_synthetic(data)

    def test_synthetic_problems(self):
        quadratic = build_problem("synthetic:quadratic:d=4,kappa=3")
        assert quadratic.name == "quadratic"
        assert quadratic.dimension == 4
        assert quadratic.meta.known_Lg == pytest.approx(3.0)
        quartic = build_problem("synthetic:separable_convex_quartic:d=3,radius=2")
        assert quartic.meta.known_fstar == 0.0
        lse = build_problem("synthetic:log_sum_exp:d=3,n=5")
        assert lse.dimension == 3

    def test_missing_file(self, tmp_path):
        with pytest.raises(DatasetError):
            build_problem(str(tmp_path / "absent.libsvm"))


class TestInitialPoint:
    def test_far_normal_is_seeded(self):
        a = make_initial_point("far_normal:5000", 1000, seed=1)
        b = make_initial_point("far_normal:5000", 1000, seed=1)
        np.testing.assert_array_equal(a, b)
        assert not np.array_equal(a, make_initial_point("far_normal:5000", 1000, seed=2))
        # 方差 5000
        assert np.std(a) == pytest.approx(np.sqrt(5000.0), rel=0.1)

    def test_zeros(self):
        np.testing.assert_array_equal(make_initial_point("zeros", 3, seed=0), np.zeros(3))

    def test_file(self, tmp_path):
        path = tmp_path / "x0.txt"
        path.write_text("1.0\n2.0\n", encoding="utf-8")
        np.testing.assert_array_equal(make_initial_point(f"file:{path}", 2, seed=0), [1.0, 2.0])
        with pytest.raises(DimensionMismatchError):
            make_initial_point(f"file:{path}", 3, seed=0)

    @pytest.mark.parametrize("init", ["uniform:1", "far_normal:-1"])
    def test_invalid(self, init):
        with pytest.raises(InvalidOverrideError):
            make_initial_point(init, 3, seed=0)
