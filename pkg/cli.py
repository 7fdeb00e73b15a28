# -*- coding: utf-8 -*-
"""
Командная строка: воспроизводимые эксперименты с CSV-отчётами.

Коды выхода:
    0 - все проверки пройдены;
    1 - нарушение, отсутствие сходимости или провал оценки;
    2 - ошибка конфигурации;
    3 - уровни прямого метода обрезаны защитой от переполнения;
    4 - rho не мажорирует дефект (гипотеза теоремы не выполнена).
"""
import functools
import os
import traceback
from typing import Callable, List

import click
import numpy as np

from errors import ConfigError
from experiment_config import ExperimentConfig, load_config, parse_overrides, render
from funceq import part_g, part_h, residual_sweep, solution_family
from hyers import (Combiner, oracle_cross_check, q1_limit, q2_limit, recover_coefficients,
                   verify_combined_bound, verify_quadratic_bound, verify_quartic_bound)
from models import Diagnostic, TheoremResult
from reports import (export_bounds_to_csv, export_diagnostics_to_csv, export_summary_to_markdown,
                     export_table_to_csv, export_traces_to_csv)
from rnspace import RnSpace, broken_rn2_space, check_axioms, format_vector
from time_logger import time_logger
from tnorms import TNormKind, lukasiewicz_tail_converges, t_tail

EXIT_OK = 0
EXIT_VIOLATION = 1
EXIT_CONFIG = 2
EXIT_TRUNCATED = 3
EXIT_HYPOTHESIS = 4

# Порядок важности при нескольких исходах одновременно
_EXIT_PRIORITY = [EXIT_CONFIG, EXIT_HYPOTHESIS, EXIT_TRUNCATED, EXIT_VIOLATION, EXIT_OK]

_FLAG_FIELDS = {"oracle", "progress"}

_SUITES = {
    "quadratic": verify_quadratic_bound,
    "quartic": verify_quartic_bound,
    "combined": verify_combined_bound,
}

_TAIL_STARTS = (1, 3, 5)


def worst_exit(codes: List[int]) -> int:
    for code in _EXIT_PRIORITY:
        if code in codes:
            return code
    return EXIT_OK


def experiment_options(func: Callable) -> Callable:
    """Общие опции: --config, --set key=value и флаг --<key> для каждого поля ExperimentConfig."""
    options = [
        click.option("--config", "config_path", type=click.Path(dir_okay=False), default=None,
                     help="Файл `key = value` с параметрами эксперимента"),
        click.option("--set", "assignments", multiple=True, help="Переопределение key=value (можно повторять)"),
    ]
    for name in ExperimentConfig.model_fields:
        flag = "--" + name.replace("_", "-")
        if name in _FLAG_FIELDS:
            options.append(click.option(flag, name, is_flag=True, default=False))
        else:
            options.append(click.option(flag, name, type=str, default=None, show_default=False))
    for option in reversed(options):
        func = option(func)
    return func


def run_command(name: str):
    """
    Оборачивает подкоманду: собирает конфигурацию, отображает ошибки в коды
    выхода и в конце сохраняет тайминги.
    """

    def decorator(body: Callable[[ExperimentConfig], int]):
        @functools.wraps(body)
        @click.pass_context
        def wrapper(ctx, config_path, assignments, **flags):
            try:
                overrides = parse_overrides(list(assignments))
                for key, value in flags.items():
                    if key in _FLAG_FIELDS:
                        if value:
                            overrides[key] = True
                    elif value is not None:
                        overrides[key] = value
                config = load_config(config_path, overrides)
            except ConfigError as e:
                click.echo(f"[ERROR] {e}", err=True)
                ctx.exit(EXIT_CONFIG)
                return

            code = EXIT_VIOLATION
            try:
                os.makedirs(config.output, exist_ok=True)
                with open(os.path.join(config.output, f"{name}.config.txt"), "w", encoding="utf-8") as f:
                    f.write(render(config))
                code = body(config)
            except Exception as e:
                click.echo(f"[ERROR] {name}: {e}", err=True)
                print(f"[DEBUG] {traceback.format_exc()}")
                code = EXIT_VIOLATION
            finally:
                time_logger.save_reports()
                time_logger.reset()
            click.echo(f"[INFO] {name}: код выхода {code}")
            ctx.exit(code)

        return wrapper

    return decorator


def _path(config: ExperimentConfig, filename: str) -> str:
    return os.path.join(config.output, filename)


def _family(config: ExperimentConfig):
    return solution_family(config.count, config.seed, config.a_range, config.b_range,
                           config.delta, config.dimension)


def _stencil_points(config: ExperimentConfig) -> List[np.ndarray]:
    """Точки шаблона (x, y): узлы сетки x, их противоположные и ноль."""
    values = sorted({0.0} | {v for x in config.xgrid() for v in (float(x[0]), -float(x[0]))})
    return [np.full(config.dimension, v) for v in values]


@click.group()
def cli():
    """Устойчивость квадратично-квартичного уравнения в случайных нормированных пространствах."""


@cli.command("check-solution")
@experiment_options
@run_command("check_solution")
def check_solution(config: ExperimentConfig) -> int:
    """Невязки уравнения и разложения на g, h по сетке пар (x, y) для семейства решений."""
    points = _stencil_points(config)
    diagnostics: List[Diagnostic] = []
    for index, f in enumerate(_family(config)):
        for d in residual_sweep(f, points, tol=config.residual_tol, progress=config.progress):
            diagnostics.append(d.model_copy(update={"witness": f"f={index};{d.witness}"}))

    export_diagnostics_to_csv(diagnostics, _path(config, "check_solution.diagnostics.csv"), label="check")
    export_table_to_csv([f.to_record().model_dump() for f in _family(config)],
                        ["a", "b", "delta", "seed", "dimension"], _path(config, "check_solution.family.csv"))
    if diagnostics:
        worst = max(diagnostics, key=lambda d: d.magnitude)
        print(f"[WARN] Нарушений: {len(diagnostics)}; наибольшее {worst.check} = {worst.magnitude:.3g} при {worst.witness}")
        return EXIT_VIOLATION
    print(f"[INFO] Все невязки в пределах допуска ({config.count} функций, {len(points)} точек шаблона)")
    return EXIT_OK


@cli.command("recover")
@experiment_options
@run_command("recover")
def recover(config: ExperimentConfig) -> int:
    """Прямой метод: Q_1, Q_2 по сетке x и оценки коэффициентов (a, b)."""
    traces, rows, oracle_rows = [], [], []
    converged, truncated, oracle_ok = True, False, True
    xgrid = config.xgrid()

    for index, f in enumerate(_family(config)):
        g, h = part_g(f), part_h(f)
        q1_values, q2_values = [], []
        for x in xgrid:
            label = format_vector(x)
            q1, q1_trace = q1_limit(g, x, config.n_max, config.tol, config.arithmetic)
            q2, q2_trace = q2_limit(h, x, config.n_max, config.tol, config.arithmetic)
            prefix = f"f{index}." if config.count > 1 else ""
            traces.extend([(f"{prefix}q1:{label}", q1_trace), (f"{prefix}q2:{label}", q2_trace)])
            q1_values.append(q1)
            q2_values.append(q2)
            converged = converged and q1_trace.converged and q2_trace.converged
            truncated = truncated or q1_trace.truncated or q2_trace.truncated
            if config.oracle:
                for kind in ("q1", "q2"):
                    check = oracle_cross_check(f, x, kind, config.n_max)
                    oracle_ok = oracle_ok and check.agrees
                    oracle_rows.append({"f": index, "kind": kind, "x": label, **check._asdict(),
                                        "agrees": check.agrees})

        a_hat, b_hat = recover_coefficients(xgrid, q1_values, q2_values)
        rows.append({"f": index, "a": f.a, "b": f.b, "a_hat": a_hat, "b_hat": b_hat,
                     "a_error": abs(a_hat - f.a), "b_error": abs(b_hat - f.b)})

    export_traces_to_csv(traces, _path(config, "recover.trace.csv"))
    export_table_to_csv(rows, ["f", "a", "b", "a_hat", "b_hat", "a_error", "b_error"],
                        _path(config, "recover.coefficients.csv"))
    if config.oracle:
        export_table_to_csv(oracle_rows, ["f", "kind", "x", "level", "float_value", "exact_value", "deviation",
                                          "tolerance", "agrees"], _path(config, "recover.oracle.csv"))

    codes = [EXIT_OK]
    if truncated:
        print("[WARN] Часть уровней 2^n x обрезана защитой от переполнения")
        codes.append(EXIT_TRUNCATED)
    if not converged:
        print(f"[WARN] Последнее приращение не меньше tol={config.tol:g} хотя бы в одной точке")
        codes.append(EXIT_VIOLATION)
    if not oracle_ok:
        print("[WARN] Расхождение с точным оракулом превышает допуск")
        codes.append(EXIT_VIOLATION)
    return worst_exit(codes)


@cli.command("verify-bounds")
@experiment_options
@run_command("verify_bounds")
def verify_bounds(config: ExperimentConfig) -> int:
    """Три оценки устойчивости по сетке (x, t); строки обоих комбинаторов пишутся рядом."""
    rho = config.profile()
    xgrid, tgrid = config.xgrid(), config.tgrid()
    combiners = [config.combiner] + [c for c in Combiner if c != config.combiner]

    reports, traces, results = [], [], []
    codes = [EXIT_OK]
    for index, f in enumerate(_family(config)):
        for kind, suite in _SUITES.items():
            for combiner in combiners:
                result: TheoremResult = suite(
                    f, rho, xgrid, tgrid, config.depth, config.n_max,
                    tol=config.tol, combiner=combiner, tnorm=config.tnorm, codomain=config.codomain,
                    arithmetic=config.arithmetic, oracle=config.oracle, workers=config.workers,
                    progress=config.progress,
                )
                label = kind if config.count == 1 else f"{kind}#{index}"
                reports.extend(r.model_copy(update={"theorem": label}) for r in result.reports)
                if combiner != config.combiner:
                    continue
                results.append(result.model_copy(update={"theorem": label}))
                traces.extend(result.traces)
                if not result.hypothesis.holds:
                    codes.append(EXIT_HYPOTHESIS)
                if result.truncated:
                    codes.append(EXIT_TRUNCATED)
                if not result.bounds_passed:
                    failed = [r for r in result.reports if not r.passed]
                    if failed:
                        print(f"[WARN] {label}: {len(failed)} ячеек не прошли, например x={failed[0].x}, t={failed[0].t:g}")
                    if result.reconstruction_ok is False:
                        print(f"[WARN] {label}: f != Q_1 + Q_2, ошибка {result.reconstruction_error:.3g}")
                    codes.append(EXIT_VIOLATION)

    export_bounds_to_csv(reports, _path(config, "verify_bounds.bounds.csv"), oracle=config.oracle)
    export_traces_to_csv(traces, _path(config, "verify_bounds.trace.csv"))
    proxies = [proxy.model_dump() for result in results for proxy in result.proxies]
    export_table_to_csv(proxies, ["condition", "x", "t", "first_level", "depth"],
                        _path(config, "verify_bounds.proxies.csv"))
    with open(_path(config, "verify_bounds.summary.md"), "w", encoding="utf-8") as f:
        f.write(export_summary_to_markdown(results))
    return worst_exit(codes)


@cli.command("axioms")
@experiment_options
@run_command("axioms")
def axioms(config: ExperimentConfig) -> int:
    """Сидированный фаззинг аксиом RN1-RN3."""
    if config.space == "broken_rn2":
        space = broken_rn2_space(config.tnorm, config.dimension)
    else:
        space = RnSpace(tnorm=config.tnorm, dimension=config.dimension)
    diagnostics = check_axioms(space, config.samples, config.seed, config.workers)
    export_diagnostics_to_csv(diagnostics, _path(config, "axioms.diagnostics.csv"))
    if diagnostics:
        print(f"[WARN] Нарушений аксиом: {len(diagnostics)} из {config.samples} сэмплов")
        return EXIT_VIOLATION
    print(f"[INFO] Аксиомы RN1-RN3 выполнены на {config.samples} сэмплах")
    return EXIT_OK


def _tail_defect(fixture: str) -> Callable[[int], float]:
    if fixture == "harmonic":
        return lambda i: 1.0 / i
    return lambda i: 2.0 ** -i


@cli.command("tnorm-tail")
@experiment_options
@run_command("tnorm_tail")
def tnorm_tail(config: ExperimentConfig) -> int:
    """Сходимость хвостов T_{i>=n} x_i; для Лукасевича - через ряд sum(1 - x_i)."""
    defect = _tail_defect(config.tail)
    rows = []
    for start in _TAIL_STARTS:
        tail = t_tail(config.tnorm, lambda i: 1.0 - defect(i), start, config.tail_depth)
        rows.append({"fixture": config.tail, "tnorm": config.tnorm.value, "start": start, "value": tail.value,
                     "decrement": tail.decrement, "depth": tail.depth})
    export_table_to_csv(rows, ["fixture", "tnorm", "start", "value", "decrement", "depth"],
                        _path(config, "tnorm_tail.csv"))

    report = lukasiewicz_tail_converges(defect, depth=config.tail_depth)
    export_table_to_csv([{"fixture": config.tail, **report._asdict()}],
                        ["fixture", "converges", "partial_sum", "block_sum", "depth"],
                        _path(config, "tnorm_tail.series.csv"))
    if config.tnorm == TNormKind.LUKASIEWICZ or not report.converges:
        print(f"[INFO] sum(1 - x_i) на глубине {report.depth}: {report.partial_sum:.6g}, "
              f"последний блок {report.block_sum:.3g}")
    if not report.converges:
        print(f"[WARN] Ряд дефектов для '{config.tail}' не сходится: хвосты T_L не стремятся к 1")
        return EXIT_VIOLATION
    return EXIT_OK
