import pandas as pd

from models import BoundReport, Diagnostic, HyersTrace, HypothesisReport, ProxyReport, TheoremResult, TraceLevel
from reports import (export_bounds_to_csv, export_diagnostics_to_csv, export_summary_to_markdown,
                     export_traces_to_csv, trace_records)


def bound(theorem, x_index, t_index, passed=True, combiner="tnorm_fold"):
    return BoundReport(theorem=theorem, x_index=x_index, t_index=t_index, x=str(float(x_index)), t=float(t_index + 1),
                       lhs=1.0, rhs=0.5, combiner=combiner, depth=6, decrement=0.0, passed=passed)


def test_bounds_sorted_and_headed(tmp_path):
    path = tmp_path / "run.bounds.csv"
    rows = [bound("quartic", 1, 0), bound("quartic", 0, 1), bound("quartic", 0, 0), bound("combined", 0, 0)]
    export_bounds_to_csv(rows, str(path))
    df = pd.read_csv(path)
    assert list(df.columns) == ["theorem", "x", "t", "lhs", "rhs", "combiner", "depth", "decrement", "passed"]
    assert list(zip(df["theorem"], df["x"], df["t"])) == [
        ("combined", 0.0, 1.0), ("quartic", 0.0, 1.0), ("quartic", 0.0, 2.0), ("quartic", 1.0, 1.0)]


def test_bounds_oracle_column(tmp_path):
    path = tmp_path / "run.bounds.csv"
    report = bound("quadratic", 0, 0).model_copy(update={"oracle_deviation": 1e-15})
    export_bounds_to_csv([report], str(path), oracle=True)
    assert pd.read_csv(path)["oracle_deviation"].iloc[0] == 1e-15


def test_trace_records():
    trace = HyersTrace(levels=[TraceLevel(n=0, value=1.0, delta=0.0), TraceLevel(n=1, value=0.5, delta=-0.5)],
                       converged=False, estimated_ratio=0.0)
    records = trace_records([("q2:1.0;2.0", trace)])
    assert [(r.kind, r.x, r.n) for r in records] == [("q2", "1.0;2.0", 0), ("q2", "1.0;2.0", 1)]


def test_traces_and_diagnostics_written(tmp_path):
    trace = HyersTrace(levels=[TraceLevel(n=0, value=-12.0, delta=0.0)], converged=True)
    export_traces_to_csv([("q1:1.0", trace)], str(tmp_path / "nested" / "run.trace.csv"))
    assert pd.read_csv(tmp_path / "nested" / "run.trace.csv")["kind"].tolist() == ["q1"]

    export_diagnostics_to_csv([Diagnostic(check="RN2", witness="sample=3", magnitude=0.1)], str(tmp_path / "d.csv"))
    assert (tmp_path / "d.csv").read_text().splitlines() == ["axiom,witness,magnitude", "RN2,sample=3,0.10000000000000001"]


def test_empty_trace_value_is_nan():
    trace = HyersTrace(levels=[], converged=False, truncated=True)
    assert trace.value != trace.value


def test_summary_markdown():
    hypothesis = HypothesisReport(holds=False, f_at_zero=0.0, max_defect=0.25, checked=16, violations=[])
    proxies = [ProxyReport(condition="dilation_point_deg2", x="1.0", t=0.05, first_level=2, depth=12),
               ProxyReport(condition="dilation_fold_deg2", x="1.0", t=0.05, first_level=None, depth=12)]
    result = TheoremResult(theorem="quadratic", hypothesis=hypothesis,
                           reports=[bound("quadratic", 0, 0), bound("quadratic", 0, 1, passed=False)],
                           proxies=proxies, truncated=True)
    text = export_summary_to_markdown([result])
    assert text.startswith("# Проверка оценок устойчивости")
    assert "## quadratic" in text
    assert "нарушена" in text
    assert "Ячеек (x, t): 2, не прошли: 1" in text
    assert "обрезаны" in text
    assert "1 из 2" in text
