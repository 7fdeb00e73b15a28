# -*- coding: utf-8 -*-
"""
Экспорт результатов проверок в CSV и markdown.

Все файлы детерминированы: фиксированный порядок строк и колонок,
float пишется с 17 значащими цифрами, без временных меток.
"""
import os
from typing import Iterable, List, Sequence, Tuple

import pandas as pd

from models import BoundReport, Diagnostic, HyersTrace, TheoremResult, TraceRecord

TRACE_COLUMNS = ["x", "n", "value", "delta", "converged", "truncated", "estimated_ratio", "kind"]
BOUND_COLUMNS = ["theorem", "x", "t", "lhs", "rhs", "combiner", "depth", "decrement", "passed"]
DIAGNOSTIC_COLUMNS = ["axiom", "witness", "magnitude"]
FLOAT_FORMAT = "%.17g"


def _write(df: pd.DataFrame, path: str) -> str:
    directory = os.path.dirname(path)
    if directory:
        os.makedirs(directory, exist_ok=True)
    df.to_csv(path, index=False, float_format=FLOAT_FORMAT, encoding="utf-8", lineterminator="\n")
    return path


def trace_records(traces: Iterable[Tuple[str, HyersTrace]]) -> List[TraceRecord]:
    """Разворачивает трассы вида ("q1:<x>", trace) в построчные записи."""
    records = []
    for label, trace in traces:
        kind, _, x = label.partition(":")
        for level in trace.levels:
            records.append(TraceRecord(
                kind=kind,
                x=x,
                n=level.n,
                value=level.value,
                delta=level.delta,
                converged=trace.converged,
                truncated=trace.truncated,
                estimated_ratio=trace.estimated_ratio,
            ))
    return records


def export_traces_to_csv(traces: Iterable[Tuple[str, HyersTrace]], path: str) -> str:
    """Пишет `<stem>.trace.csv`: x,n,value,delta,converged,truncated,estimated_ratio,kind."""
    rows = [record.model_dump() for record in trace_records(traces)]
    return _write(pd.DataFrame(rows, columns=TRACE_COLUMNS), path)


def export_bounds_to_csv(reports: Sequence[BoundReport], path: str, oracle: bool = False) -> str:
    """
    Пишет `<stem>.bounds.csv`, строки упорядочены по (теорема, комбинатор, индекс x, индекс t).
    С oracle=True добавляется колонка oracle_deviation.
    """
    columns = BOUND_COLUMNS + (["oracle_deviation"] if oracle else [])
    rows = [report.model_dump() for report in reports]
    df = pd.DataFrame(rows, columns=columns + ["x_index", "t_index"])
    if not df.empty:
        df = df.sort_values(["theorem", "combiner", "x_index", "t_index"], kind="mergesort")
    return _write(df[columns], path)


def export_diagnostics_to_csv(diagnostics: Sequence[Diagnostic], path: str, label: str = "axiom") -> str:
    """Пишет диагностики в формате <label>,witness,magnitude (для аксиом label = axiom)."""
    columns = [label] + DIAGNOSTIC_COLUMNS[1:]
    rows = [{label: d.check, "witness": d.witness, "magnitude": d.magnitude} for d in diagnostics]
    return _write(pd.DataFrame(rows, columns=columns), path)


def export_table_to_csv(rows: Sequence[dict], columns: Sequence[str], path: str) -> str:
    return _write(pd.DataFrame(list(rows), columns=list(columns)), path)


def export_summary_to_markdown(results: Sequence[TheoremResult]) -> str:
    """Краткая сводка по проверкам оценок устойчивости."""
    lines = ["# Проверка оценок устойчивости", ""]
    for result in results:
        failed = sum(not report.passed for report in result.reports)
        lines.append(f"## {result.theorem}")
        lines.append("")
        lines.append(f"- Гипотеза о мажорировании дефекта: {'выполнена' if result.hypothesis.holds else 'нарушена'}"
                     f" (шаблон из {result.hypothesis.checked} пар, max |дефект| = {result.hypothesis.max_defect:.6g})")
        lines.append(f"- Ячеек (x, t): {len(result.reports)}, не прошли: {failed}")
        if result.truncated:
            lines.append("- Уровни прямого метода обрезаны защитой от переполнения")
        if result.reconstruction_error is not None:
            lines.append(f"- Ошибка восстановления f = Q_1 + Q_2: {result.reconstruction_error:.3g}")
        unreached = [proxy for proxy in result.proxies if proxy.first_level is None]
        lines.append(f"- Условия на rho: {len(result.proxies) - len(unreached)} из {len(result.proxies)}"
                     f" приближений достигли порога")
        lines.append("")
    return "\n".join(lines)
