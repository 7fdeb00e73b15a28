import os

import pandas as pd
import pytest
from click.testing import CliRunner

from cli import cli, worst_exit
from time_logger import time_logger

STEP_DEFECT = """
# шум 0.01, мажоранта Step(0.4)
delta = 0.01
seed = 7
a_min = 1
a_max = 3
b_min = -2
b_max = 2
x_min = 0.5
x_max = 2.5
x_count = 5
t_min = 0.05
t_max = 50
t_count = 5
rho_family = step
rho_c = 0.4
depth = 50
n_max = 12
output = out
"""


@pytest.fixture
def runner():
    return CliRunner()


def invoke(runner, *args):
    return runner.invoke(cli, list(args), catch_exceptions=False)


def test_exit_priority():
    assert worst_exit([0, 1, 3]) == 3
    assert worst_exit([1, 4, 3]) == 4
    assert worst_exit([0]) == 0


def test_check_solution(runner):
    with runner.isolated_filesystem():
        clean = invoke(runner, "check-solution", "--count", "20", "--seed", "1", "--output", "out")
        assert clean.exit_code == 0
        assert pd.read_csv("out/check_solution.diagnostics.csv").empty

        noisy = invoke(runner, "check-solution", "--delta", "0.5", "--residual-tol", "1e-9", "--output", "out")
        assert noisy.exit_code == 1
        diagnostics = pd.read_csv("out/check_solution.diagnostics.csv")
        assert list(diagnostics.columns) == ["check", "witness", "magnitude"]
        assert diagnostics["witness"].str.startswith("f=0;x=").all()


def test_empty_grid_is_config_error(runner):
    with runner.isolated_filesystem():
        result = invoke(runner, "check-solution", "--x-count", "0")
        assert result.exit_code == 2
        assert "x_count" in result.output


def test_unknown_key_is_config_error(runner):
    with runner.isolated_filesystem():
        assert invoke(runner, "axioms", "--set", "colour=red").exit_code == 2
        assert invoke(runner, "axioms", "--config", "missing.txt").exit_code == 2


def test_recover_exact_solution(runner):
    with runner.isolated_filesystem():
        result = invoke(runner, "recover", "--count", "2", "--seed", "4", "--arithmetic", "exact",
                        "--x-min", "0.5", "--x-max", "2", "--x-count", "4", "--output", "out")
        assert result.exit_code == 0
        coefficients = pd.read_csv("out/recover.coefficients.csv")
        assert (coefficients["a_error"] < 1e-9).all()
        assert (coefficients["b_error"] < 1e-9).all()
        trace = pd.read_csv("out/recover.trace.csv")
        assert list(trace.columns) == ["x", "n", "value", "delta", "converged", "truncated", "estimated_ratio", "kind"]
        assert set(trace["kind"]) == {"f0.q1", "f0.q2", "f1.q1", "f1.q2"}


def test_recover_noisy_with_oracle(runner):
    with runner.isolated_filesystem():
        result = invoke(runner, "recover", "--delta", "0.01", "--arithmetic", "exact", "--x-min", "1", "--x-max", "2",
                        "--x-count", "2", "--oracle", "--output", "out")
        assert result.exit_code == 0
        oracle = pd.read_csv("out/recover.oracle.csv")
        assert oracle["agrees"].all()


def test_recover_reports_truncation(runner):
    with runner.isolated_filesystem():
        result = invoke(runner, "recover", "--x-min", "1", "--x-max", "1e6", "--x-count", "2", "--n-max", "20",
                        "--output", "out")
        assert result.exit_code == 3
        trace = pd.read_csv("out/recover.trace.csv")
        assert trace["truncated"].any()


def test_verify_bounds_step_defect(runner):
    with runner.isolated_filesystem():
        with open("run.txt", "w", encoding="utf-8") as f:
            f.write(STEP_DEFECT)
        result = invoke(runner, "verify-bounds", "--config", "run.txt")
        assert result.exit_code == 0, result.output

        bounds = pd.read_csv("out/verify_bounds.bounds.csv")
        assert list(bounds.columns) == ["theorem", "x", "t", "lhs", "rhs", "combiner", "depth", "decrement", "passed"]
        assert len(bounds) == 3 * 2 * 25
        assert set(bounds["combiner"]) == {"tnorm_fold", "clamped_sum"}
        assert bounds[bounds["combiner"] == "tnorm_fold"]["passed"].all()
        assert os.path.exists("out/verify_bounds.summary.md")
        assert os.path.exists("out/verify_bounds.proxies.csv")


def test_verify_bounds_hypothesis_failure(runner):
    with runner.isolated_filesystem():
        with open("run.txt", "w", encoding="utf-8") as f:
            f.write(STEP_DEFECT)
        result = invoke(runner, "verify-bounds", "--config", "run.txt", "--rho-c", "1e-6")
        assert result.exit_code == 4


def test_verify_bounds_eps0_exact_solution(runner):
    with runner.isolated_filesystem():
        result = invoke(runner, "verify-bounds", "--rho-family", "control", "--theta", "0", "--arithmetic", "exact",
                        "--x-count", "3", "--t-count", "3", "--output", "out")
        assert result.exit_code == 0, result.output
        bounds = pd.read_csv("out/verify_bounds.bounds.csv")
        assert (bounds["rhs"] == 1.0).all()
        assert (bounds["lhs"] == 1.0).all()


def test_verify_bounds_oracle_column(runner):
    with runner.isolated_filesystem():
        result = invoke(runner, "verify-bounds", "--set", "delta=0.01", "--x-count", "2", "--t-count", "2",
                        "--oracle", "--output", "out")
        assert result.exit_code == 0, result.output
        bounds = pd.read_csv("out/verify_bounds.bounds.csv")
        assert bounds.columns[-1] == "oracle_deviation"


def test_reports_are_deterministic(runner):
    with runner.isolated_filesystem():
        with open("run.txt", "w", encoding="utf-8") as f:
            f.write(STEP_DEFECT)
        invoke(runner, "verify-bounds", "--config", "run.txt", "--output", "first")
        invoke(runner, "verify-bounds", "--config", "run.txt", "--output", "second", "--workers", "3")
        for name in ("verify_bounds.bounds.csv", "verify_bounds.trace.csv", "verify_bounds.proxies.csv"):
            with open(os.path.join("first", name), "rb") as a, open(os.path.join("second", name), "rb") as b:
                assert a.read() == b.read()


def test_axioms(runner):
    with runner.isolated_filesystem():
        assert invoke(runner, "axioms", "--samples", "10000", "--output", "out").exit_code == 0
        assert pd.read_csv("out/axioms.diagnostics.csv").empty

        broken = invoke(runner, "axioms", "--space", "broken_rn2", "--samples", "200", "--output", "out")
        assert broken.exit_code == 1
        diagnostics = pd.read_csv("out/axioms.diagnostics.csv")
        assert list(diagnostics.columns) == ["axiom", "witness", "magnitude"]
        assert "RN2" in set(diagnostics["axiom"])


def test_tnorm_tail(runner):
    with runner.isolated_filesystem():
        result = invoke(runner, "tnorm-tail", "--tnorm", "lukasiewicz", "--output", "out")
        assert result.exit_code == 0
        tails = pd.read_csv("out/tnorm_tail.csv")
        for _, row in tails.iterrows():
            assert abs(row["value"] - (1.0 - 2.0 ** -row["start"])) <= 1e-9

        harmonic = invoke(runner, "tnorm-tail", "--tnorm", "lukasiewicz", "--tail", "harmonic",
                          "--tail-depth", "100000", "--output", "out")
        assert harmonic.exit_code == 1
        series = pd.read_csv("out/tnorm_tail.series.csv")
        assert not series["converges"].iloc[0]


def test_recover_float_exact_solution_with_defaults(runner):
    with runner.isolated_filesystem():
        result = invoke(runner, "recover", "--count", "3", "--seed", "1", "--output", "out")
        assert result.exit_code == 0, result.output
        trace = pd.read_csv("out/recover.trace.csv")
        assert trace["converged"].all()
        coefficients = pd.read_csv("out/recover.coefficients.csv")
        assert (coefficients["a_error"] < 1e-5).all()
        assert (coefficients["b_error"] < 1e-5).all()


@pytest.mark.parametrize("args, names", [
    (["check-solution", "--count", "20", "--delta", "0.5", "--residual-tol", "1e-9"],
     ["check_solution.diagnostics.csv", "check_solution.family.csv"]),
    (["recover", "--count", "2", "--delta", "0.01", "--oracle"],
     ["recover.trace.csv", "recover.coefficients.csv", "recover.oracle.csv"]),
    (["axioms", "--space", "broken_rn2", "--samples", "300"], ["axioms.diagnostics.csv"]),
    (["tnorm-tail", "--tnorm", "product", "--tail", "harmonic", "--tail-depth", "2000"],
     ["tnorm_tail.csv", "tnorm_tail.series.csv"]),
])
def test_every_command_reruns_byte_identical(runner, args, names):
    with runner.isolated_filesystem():
        first = invoke(runner, *args, "--seed", "11", "--output", "first")
        second = invoke(runner, *args, "--seed", "11", "--output", "second")
        assert first.exit_code == second.exit_code
        for name in names:
            with open(os.path.join("first", name), "rb") as a, open(os.path.join("second", name), "rb") as b:
                assert a.read() == b.read()


def test_timings_do_not_leak_between_runs(runner):
    with runner.isolated_filesystem():
        invoke(runner, "axioms", "--samples", "50", "--output", "out")
        assert time_logger.data == []
