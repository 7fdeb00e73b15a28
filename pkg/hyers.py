# -*- coding: utf-8 -*-
"""
Прямой метод для квадратично-квартичного уравнения в RN-пространствах.

Из возмущённой f строятся g = f(2x) - 16 f(x) и h = f(2x) - 4 f(x);
точные отображения восстанавливаются как пределы
    Q_1(x) = lim g(2^n x) / 4^n,   Q_2(x) = lim h(2^n x) / 16^n,
а оценки mu_{g - Q_1}(t) >= T_{i>=1}(...) проверяются по сетке (x, t)
с бесконечной свёрткой t-нормы, усечённой до depth термов.
"""
import math
from concurrent.futures import ThreadPoolExecutor
from enum import Enum
from fractions import Fraction
from typing import Callable, ClassVar, List, Literal, NamedTuple, Optional, Sequence, Tuple, Union

import numpy as np
from pydantic import BaseModel, ConfigDict, Field
from tqdm import tqdm

from config import FUNCEQ_CONFIG, HYERS_CONFIG, TNORM_CONFIG
from distributions import DistFn, RationalControl, Step
from errors import DomainError
from funceq import DilationDifference, PeakRecorder, part_g, part_h, residual_qq
from models import (BoundReport, Diagnostic, HyersTrace, HypothesisReport, ProxyReport,
                    TheoremResult, TraceLevel)
from rnspace import as_vector, euclidean_norm, format_vector, to_exact
from time_logger import timed
from tnorms import TailResult, TNormKind, fold_terms, get_kind, t_fold


class Combiner(str, Enum):
    TNORM_FOLD = "tnorm_fold"  # три терма сворачиваются t-нормой пространства
    CLAMPED_SUM = "clamped_sum"  # min(1, сумма) - буквальное "+"


class Codomain(str, Enum):
    INDUCED = "induced"  # mu_y(t) = t / (t + |y|)
    STEP = "step"  # mu_y = eps0(t - |y|), детерминированное пространство
    AUTO = "auto"  # по семейству rho


class Arithmetic(str, Enum):
    FLOAT = "float"
    EXACT = "exact"


def _power(norm: float, p: float) -> float:
    # ||0||^p = 0 и при p = 0, чтобы rho_{0,0} = eps0
    return 0.0 if norm == 0.0 else norm ** p


class StepDefect(BaseModel):
    """rho_{x,y} = Step(c): дефект равномерно ограничен числом c."""
    model_config = ConfigDict(frozen=True)

    family: Literal["step"] = "step"
    c: float = Field(ge=0.0)

    preferred_codomain: ClassVar[Codomain] = Codomain.STEP

    def value_by_norms(self, nx: float, ny: float, t: float) -> float:
        return 1.0 if t > self.c else 0.0

    def rho(self, x, y) -> DistFn:
        return Step(threshold=self.c)


class ControlType(BaseModel):
    """rho_{x,y} = RationalControl(theta (||x||^p + ||y||^p)); масштаб 0 даёт eps0."""
    model_config = ConfigDict(frozen=True)

    family: Literal["control"] = "control"
    theta: float = Field(ge=0.0)
    p: float = Field(default=0.0, ge=0.0)

    preferred_codomain: ClassVar[Codomain] = Codomain.INDUCED

    def scale(self, nx: float, ny: float) -> float:
        return self.theta * (_power(nx, self.p) + _power(ny, self.p))

    def value_by_norms(self, nx: float, ny: float, t: float) -> float:
        if t <= 0:
            return 0.0
        scale = self.scale(nx, ny)
        if scale == 0.0:
            return 1.0
        return t / (t + scale)

    def rho(self, x, y) -> DistFn:
        return RationalControl(c=self.scale(euclidean_norm(x), euclidean_norm(y)))


PerturbationProfile = Union[StepDefect, ControlType]


def profile_value(rho: PerturbationProfile, x, y, t: float) -> float:
    """rho_{x,y}(t)."""
    return rho.value_by_norms(euclidean_norm(x), euclidean_norm(y), t)


def combine(values: Sequence[float], combiner: Combiner, tnorm: Union[str, TNormKind]) -> float:
    if Combiner(combiner) == Combiner.TNORM_FOLD:
        return t_fold(tnorm, values)
    return min(1.0, float(sum(values)))


def psi(
        rho: PerturbationProfile,
        x,
        t: float,
        combiner: Combiner = Combiner.TNORM_FOLD,
        tnorm: Union[str, TNormKind] = TNormKind.MINIMUM,
) -> float:
    """psi_{x,x}(t) = combiner[rho_{x,x}(t/4), rho_{x,2x}(t), rho_{0,x}(3t/4)]."""
    if not t > 0:
        raise DomainError(f"psi определена для t > 0, получено t={t}")
    nx = euclidean_norm(x)
    return combine([
        rho.value_by_norms(nx, nx, t / 4),
        rho.value_by_norms(nx, 2 * nx, t),
        rho.value_by_norms(0.0, nx, 3 * t / 4),
    ], combiner, tnorm)


class _Schedule(NamedTuple):
    exponent: int  # аргументы растут как 2^{exponent * i}
    weights: Tuple[float, float, float]  # множители при (rho_{x,x}, rho_{x,2x}, rho_{0,x})


QUADRATIC_SCHEDULE = _Schedule(1, (0.25, 1.0, 0.75))
QUARTIC_SCHEDULE = _Schedule(3, (0.25, 1.0, 0.75))
COMBINED_QUADRATIC_SCHEDULE = _Schedule(1, (3.0, 12.0, 9.0))
COMBINED_QUARTIC_SCHEDULE = _Schedule(3, (3.0, 12.0, 9.0))


def _schedule_terms(rho, nx: float, t: float, depth: int, schedule: _Schedule, combiner, tnorm,
                    shift: int = 0, degree: int = 0):
    """
    Термы i = 1..depth:
    combiner[rho_{u,u}(w1 s), rho_{u,2u}(w2 s), rho_{0,u}(w3 s)],
    где u = 2^{shift+i-1} x, s = 2^{degree*shift + exponent*i} t.
    """
    w1, w2, w3 = schedule.weights
    for i in range(1, depth + 1):
        nu = nx * 2.0 ** (shift + i - 1)
        s = t * 2.0 ** (degree * shift + schedule.exponent * i)
        yield combine([
            rho.value_by_norms(nu, nu, w1 * s),
            rho.value_by_norms(nu, 2 * nu, w2 * s),
            rho.value_by_norms(0.0, nu, w3 * s),
        ], combiner, tnorm)


def _fold_schedule(rho, x, t, depth, schedule, combiner, tnorm, shift=0, degree=0) -> TailResult:
    if not t > 0:
        raise DomainError(f"Оценка определена для t > 0, получено t={t}")
    if depth < 1:
        raise DomainError(f"Глубина должна быть >= 1, получено {depth}")
    terms = _schedule_terms(rho, euclidean_norm(x), t, depth, schedule, combiner, tnorm, shift, degree)
    return fold_terms(tnorm, terms, stable_run=TNORM_CONFIG["stable_run"])


def bound_quadratic_detail(rho, x, t, depth=HYERS_CONFIG["depth"], combiner=Combiner.TNORM_FOLD,
                           tnorm=TNormKind.MINIMUM) -> TailResult:
    return _fold_schedule(rho, x, t, depth, QUADRATIC_SCHEDULE, combiner, tnorm)


def bound_quartic_detail(rho, x, t, depth=HYERS_CONFIG["depth"], combiner=Combiner.TNORM_FOLD,
                         tnorm=TNormKind.MINIMUM) -> TailResult:
    return _fold_schedule(rho, x, t, depth, QUARTIC_SCHEDULE, combiner, tnorm)


def bound_combined_detail(rho, x, t, depth=HYERS_CONFIG["depth"], combiner=Combiner.TNORM_FOLD,
                          tnorm=TNormKind.MINIMUM) -> TailResult:
    first = _fold_schedule(rho, x, t, depth, COMBINED_QUADRATIC_SCHEDULE, combiner, tnorm)
    second = _fold_schedule(rho, x, t, depth, COMBINED_QUARTIC_SCHEDULE, combiner, tnorm)
    return TailResult(
        value=combine([first.value, second.value], combiner, tnorm),
        decrement=max(first.decrement, second.decrement),
        depth=max(first.depth, second.depth),
        stable_from=None,
    )


def bound_rhs_quadratic(rho, x, t, depth=HYERS_CONFIG["depth"], combiner=Combiner.TNORM_FOLD,
                        tnorm=TNormKind.MINIMUM) -> float:
    """Усечённая правая часть оценки для g - Q_1 (аргументы 2^i t/4, 2^i t, 3 2^i t/4)."""
    return bound_quadratic_detail(rho, x, t, depth, combiner, tnorm).value


def bound_rhs_quartic(rho, x, t, depth=HYERS_CONFIG["depth"], combiner=Combiner.TNORM_FOLD,
                      tnorm=TNormKind.MINIMUM) -> float:
    """Усечённая правая часть оценки для h - Q_2 (аргументы 2^{3i} t/4, 2^{3i} t, 3 2^{3i} t/4)."""
    return bound_quartic_detail(rho, x, t, depth, combiner, tnorm).value


def bound_rhs_combined(rho, x, t, depth=HYERS_CONFIG["depth"], combiner=Combiner.TNORM_FOLD,
                       tnorm=TNormKind.MINIMUM) -> float:
    """Правая часть для f - Q_1 - Q_2: две свёртки (3, 12, 9) * 2^i t и (3, 12, 9) * 2^{3i} t."""
    return bound_combined_detail(rho, x, t, depth, combiner, tnorm).value


# --- Прямой метод ---

def _estimate_ratio(deltas: Sequence[float]) -> float:
    """Коэффициент сжатия по трём последним приращениям: sqrt(|d_n| / |d_{n-2}|)."""
    if len(deltas) < 3:
        return 0.0
    first, _, last = (abs(d) for d in deltas[-3:])
    if first == 0.0:
        return 0.0
    return math.sqrt(last / first)


class _Limit(NamedTuple):
    value: object  # float или Fraction - последнее приближение в родной арифметике
    trace: HyersTrace


def _rounding_floor(fn: Callable, x, n: int, divisor: int, raw: dict) -> float:
    """Порог шума округления для float-приращений: factor * eps * масштаб операндов на уровнях <= n."""
    if isinstance(fn, DilationDifference):
        scale = (1 + fn.factor) * dyadic_scale(fn.f, x, n, divisor)
    else:
        scale = max([1.0] + [abs(float(value)) for value in raw.values()])
    return HYERS_CONFIG["float_noise_factor"] * float(np.finfo(float).eps) * scale


def _dyadic_limit(
        fn: Callable,
        x,
        n_max: int,
        tol: float,
        divisor: int,
        arithmetic: Arithmetic = Arithmetic.FLOAT,
        eval_limit: float = HYERS_CONFIG["evaluation_limit"],
        order: str = "ascending",
) -> _Limit:
    if n_max < 2:
        raise DomainError(f"n_max должен быть >= 2, получено {n_max}")
    x = as_vector(x)
    if Arithmetic(arithmetic) == Arithmetic.EXACT:
        x = to_exact(x)
    base_norm = euclidean_norm(x)

    available = []
    truncated = False
    for n in range(n_max + 1):
        if base_norm * 2.0 ** n > eval_limit:
            truncated = True
            break
        available.append(n)
    if truncated:
        print(f"[WARN] Точка {format_vector(x)}: 2^n x выходит за предел {eval_limit:g}, уровни обрезаны до {len(available) - 1}")

    raw = {}
    for n in (available if order == "ascending" else reversed(available)):
        raw[n] = fn(x * 2 ** n) / divisor ** n

    levels = []
    for n in available:
        delta = raw[n] - raw[n - 1] if n > 0 else 0
        levels.append(TraceLevel(n=n, value=float(raw[n]), delta=float(delta)))

    if not levels:
        trace = HyersTrace(levels=[], converged=False, truncated=True, divisor=divisor)
        return _Limit(value=float("nan"), trace=trace)

    deltas = [level.delta for level in levels[1:]]
    threshold = tol
    if Arithmetic(arithmetic) == Arithmetic.FLOAT:
        threshold = max(tol, _rounding_floor(fn, x, available[-1], divisor, raw))
    trace = HyersTrace(
        levels=levels,
        converged=bool(deltas) and abs(deltas[-1]) < threshold,
        truncated=truncated,
        estimated_ratio=_estimate_ratio(deltas),
        divisor=divisor,
    )
    return _Limit(value=raw[available[-1]], trace=trace)


def q1_limit(g: Callable, x, n_max: int = HYERS_CONFIG["n_max"], tol: float = HYERS_CONFIG["tol"],
             arithmetic: Arithmetic = Arithmetic.FLOAT, eval_limit: float = HYERS_CONFIG["evaluation_limit"],
             order: str = "ascending") -> Tuple[float, HyersTrace]:
    """Q_1(x) ~ g(2^n x) / 4^n на уровне n_max с трассой приближений."""
    limit = _dyadic_limit(g, x, n_max, tol, 4, arithmetic, eval_limit, order)
    return float(limit.value), limit.trace


def q2_limit(h: Callable, x, n_max: int = HYERS_CONFIG["n_max"], tol: float = HYERS_CONFIG["tol"],
             arithmetic: Arithmetic = Arithmetic.FLOAT, eval_limit: float = HYERS_CONFIG["evaluation_limit"],
             order: str = "ascending") -> Tuple[float, HyersTrace]:
    """Q_2(x) ~ h(2^n x) / 16^n на уровне n_max с трассой приближений."""
    limit = _dyadic_limit(h, x, n_max, tol, 16, arithmetic, eval_limit, order)
    return float(limit.value), limit.trace


def telescoping_gap(trace: HyersTrace) -> Tuple[float, float]:
    """(|a_n - a_0|, sum |delta_k|); первое не превосходит второго."""
    if not trace.levels:
        return 0.0, 0.0
    gap = abs(trace.levels[-1].value - trace.levels[0].value)
    return gap, float(sum(abs(d) for d in trace.deltas))


def scaling_probe(fn: Callable, x, degree: int, n_max: int = HYERS_CONFIG["n_max"],
                  tol: float = HYERS_CONFIG["tol"], arithmetic: Arithmetic = Arithmetic.FLOAT) -> float:
    """|Q(2x) - 2^degree Q(x)| для предела степени degree (2 - через q1, 4 - через q2)."""
    limit = q1_limit if degree == 2 else q2_limit
    x = as_vector(x)
    at_double, _ = limit(fn, 2 * x, n_max, tol, arithmetic)
    at_base, _ = limit(fn, x, n_max, tol, arithmetic)
    return abs(at_double - 2 ** degree * at_base)


def dyadic_scale(f: Callable, x, n: int, divisor: int) -> float:
    """max(1, max_{k<=n} |f(2^{k+1} x)| / divisor^k) - масштаб ошибок округления прямого метода."""
    x = np.asarray(as_vector(x), dtype=float)
    return max([1.0] + [abs(float(f(x * 2.0 ** (k + 1)))) / divisor ** k for k in range(n + 1)])


class OracleReport(NamedTuple):
    level: int
    float_value: float
    exact_value: float
    deviation: float
    tolerance: float

    @property
    def agrees(self) -> bool:
        return self.deviation <= self.tolerance


def oracle_cross_check(f: Callable, x, kind: str = "q1", n_max: int = HYERS_CONFIG["n_max"]) -> OracleReport:
    """Перепроверка float-пути точной рациональной арифметикой на уровне min(n_max, 8)."""
    level = max(2, min(n_max, HYERS_CONFIG["oracle_max_level"]))
    fn, divisor = (part_g(f), 4) if kind == "q1" else (part_h(f), 16)
    float_value = _dyadic_limit(fn, x, level, math.inf, divisor, Arithmetic.FLOAT, math.inf).value
    exact_value = _dyadic_limit(fn, x, level, math.inf, divisor, Arithmetic.EXACT, math.inf).value
    tolerance = HYERS_CONFIG["oracle_tolerance"] * dyadic_scale(f, x, level, divisor)
    return OracleReport(
        level=level,
        float_value=float(float_value),
        exact_value=float(exact_value),
        deviation=abs(float(Fraction(float_value) - exact_value)),
        tolerance=tolerance,
    )


class UniquenessReport(NamedTuple):
    q1_deviation: float
    q2_deviation: float
    q1_values: List[float]
    q2_values: List[float]


def uniqueness_probe(
        f: Callable,
        x,
        schedules: Sequence[Tuple[int, str]] = ((12, "ascending"), (16, "ascending"), (12, "descending")),
        tol: float = HYERS_CONFIG["tol"],
        arithmetic: Arithmetic = Arithmetic.FLOAT,
) -> UniquenessReport:
    """Эмпирическая проверка единственности: пределы при разных (n_max, порядок) совпадают."""
    g, h = part_g(f), part_h(f)
    q1_values, q2_values = [], []
    for n_max, order in schedules:
        q1_values.append(q1_limit(g, x, n_max, tol, arithmetic, order=order)[0])
        q2_values.append(q2_limit(h, x, n_max, tol, arithmetic, order=order)[0])
    return UniquenessReport(
        q1_deviation=float(max(q1_values) - min(q1_values)),
        q2_deviation=float(max(q2_values) - min(q2_values)),
        q1_values=q1_values,
        q2_values=q2_values,
    )


def recover_coefficients(xs: Sequence, q1_values: Sequence[float], q2_values: Sequence[float]) -> Tuple[float, float]:
    """
    Оценки (a, b) методом наименьших квадратов:
    Q_2 / 12 ~ a ||x||^4 и -Q_1 / 12 ~ b ||x||^2 по точкам x != 0.
    """
    norms = np.array([euclidean_norm(x) for x in xs])
    q1 = np.asarray(q1_values, dtype=float)
    q2 = np.asarray(q2_values, dtype=float)
    mask = (norms > 0) & np.isfinite(q1) & np.isfinite(q2)
    if not mask.any():
        return float("nan"), float("nan")
    squares = norms[mask] ** 2
    a_hat = np.linalg.lstsq((squares ** 2)[:, None], q2[mask] / 12.0, rcond=None)[0][0]
    b_hat = np.linalg.lstsq(squares[:, None], -q1[mask] / 12.0, rcond=None)[0][0]
    return float(a_hat), float(b_hat)


# --- Проверка гипотезы и условий ---

def codomain_mu(value, t: float, codomain: Codomain) -> float:
    """mu_y(t) в пространстве значений: индуцированная мера или сдвиг eps0."""
    magnitude = abs(float(value))
    if Codomain(codomain) == Codomain.STEP:
        return 1.0 if t > magnitude else 0.0
    if not t > 0:
        return 0.0
    return t / (t + magnitude)


def resolve_codomain(codomain: Codomain, rho: PerturbationProfile) -> Codomain:
    codomain = Codomain(codomain)
    return rho.preferred_codomain if codomain == Codomain.AUTO else codomain


def defect_stencil(xgrid: Sequence) -> List[Tuple[np.ndarray, np.ndarray]]:
    """Пары (x, y), на которых проверяется мажорирование дефекта: (x,x), (x,2x), (0,x), сетка x сетка, (0,0)."""
    vectors = [as_vector(x) for x in xgrid]
    zero = np.zeros_like(np.asarray(vectors[0], dtype=float))
    pairs = [(zero, zero)]
    for x in vectors:
        pairs.extend([(x, x), (x, 2 * x), (zero, x)])
    pairs.extend((x, y) for x in vectors for y in vectors)

    seen, unique = set(), []
    for x, y in pairs:
        key = (format_vector(x), format_vector(y))
        if key not in seen:
            seen.add(key)
            unique.append((x, y))
    return unique


@timed
def check_hypothesis(
        f: Callable,
        rho: PerturbationProfile,
        xgrid: Sequence,
        tgrid: Sequence[float],
        codomain: Codomain = Codomain.AUTO,
        arithmetic: Arithmetic = Arithmetic.FLOAT,
) -> HypothesisReport:
    """
    Проверяет mu_{defect(x,y)}(t) >= rho_{x,y}(t) на шаблоне.

    К узлам tgrid добавляется t = |defect|: для Step и RationalControl это точный свидетель.
    В float-режиме дефект ниже порога округления (1e-9 * max|f| на шаблоне) считается нулём.
    """
    codomain = resolve_codomain(codomain, rho)
    exact = Arithmetic(arithmetic) == Arithmetic.EXACT
    slack = HYERS_CONFIG["pass_slack"]
    positive_t = sorted(t for t in tgrid if t > 0)

    stencil = defect_stencil(xgrid)
    zero = stencil[0][0]
    f_at_zero = float(f(to_exact(zero) if exact else zero))

    violations = []
    max_defect = 0.0
    for x, y in stencil:
        recorder = PeakRecorder(f)
        defect = residual_qq(recorder, to_exact(x) if exact else x, to_exact(y) if exact else y)
        magnitude = abs(float(defect))
        if not exact and magnitude <= FUNCEQ_CONFIG["residual_tolerance"] * recorder.peak:
            magnitude = 0.0
        max_defect = max(max_defect, magnitude)

        probes = positive_t + ([magnitude] if magnitude > 0 else [])
        for t in probes:
            lhs = codomain_mu(magnitude, t, codomain)
            rhs = profile_value(rho, x, y, t)
            if lhs < rhs - slack:
                violations.append(Diagnostic(
                    check="defect_domination",
                    witness=f"x={format_vector(x)};y={format_vector(y)};t={t!r}",
                    magnitude=rhs - lhs,
                ))
                break

    if f_at_zero != 0.0:
        violations.append(Diagnostic(check="f(0)=0", witness="x=0", magnitude=abs(f_at_zero)))

    return HypothesisReport(
        holds=not violations,
        f_at_zero=f_at_zero,
        max_defect=max_defect,
        checked=len(stencil),
        violations=violations,
    )


def condition_proxy(
        rho: PerturbationProfile,
        x,
        t: float,
        degree: int,
        levels: int = HYERS_CONFIG["n_max"],
        depth: int = HYERS_CONFIG["depth"],
        combiner: Combiner = Combiner.TNORM_FOLD,
        tnorm: Union[str, TNormKind] = TNormKind.MINIMUM,
) -> List[ProxyReport]:
    """
    Конечные приближения условий на rho при n -> inf:
        dilation_point: rho_{2^n x, 2^n x}(2^{degree n} t) -> 1;
        dilation_fold:  T_{i=1}^{depth} psi-термов в точках 2^{n+i-1} x -> 1.
    Сообщается первый n <= levels, на котором значение > 1 - порог.
    """
    threshold = 1.0 - HYERS_CONFIG["proxy_threshold"]
    schedule = QUADRATIC_SCHEDULE if degree == 2 else QUARTIC_SCHEDULE
    nx = euclidean_norm(x)

    point_level = None
    fold_level = None
    for n in range(levels + 1):
        if point_level is None:
            scaled = nx * 2.0 ** n
            if rho.value_by_norms(scaled, scaled, t * 2.0 ** (degree * n)) > threshold:
                point_level = n
        if fold_level is None:
            fold = _fold_schedule(rho, x, t, depth, schedule, combiner, tnorm, shift=n, degree=degree)
            if fold.value > threshold:
                fold_level = n
        if point_level is not None and fold_level is not None:
            break

    label = format_vector(x)
    return [
        ProxyReport(condition=f"dilation_point_deg{degree}", x=label, t=t, first_level=point_level, depth=levels),
        ProxyReport(condition=f"dilation_fold_deg{degree}", x=label, t=t, first_level=fold_level, depth=levels),
    ]


# --- Проверка оценок устойчивости ---

class _Cell(NamedTuple):
    magnitude: float  # |отклонение от предела| в точке x
    traces: List[Tuple[str, HyersTrace]]
    truncated: bool
    oracle_deviation: Optional[float]
    reconstruction_error: Optional[float]
    reconstruction_tolerance: Optional[float]


def _residual_at(kind: str, f: Callable, x, n_max, tol, arithmetic, eval_limit, oracle) -> _Cell:
    exact = Arithmetic(arithmetic) == Arithmetic.EXACT
    native_x = to_exact(x) if exact else as_vector(x)
    label = format_vector(x)

    if kind == "quadratic":
        g = part_g(f)
        limit = _dyadic_limit(g, x, n_max, tol, 4, arithmetic, eval_limit)
        traces = [("q1:" + label, limit.trace)]
        deviation = g(native_x) - limit.value
        truncated = limit.trace.truncated
    elif kind == "quartic":
        h = part_h(f)
        limit = _dyadic_limit(h, x, n_max, tol, 16, arithmetic, eval_limit)
        traces = [("q2:" + label, limit.trace)]
        deviation = h(native_x) - limit.value
        truncated = limit.trace.truncated
    else:
        first = _dyadic_limit(part_g(f), x, n_max, tol, 4, arithmetic, eval_limit)
        second = _dyadic_limit(part_h(f), x, n_max, tol, 16, arithmetic, eval_limit)
        traces = [("q1:" + label, first.trace), ("q2:" + label, second.trace)]
        # Q_1 = -q1 / 12 (квадратичная часть f), Q_2 = q2 / 12 (квартичная)
        deviation = f(native_x) + first.value / 12 - second.value / 12
        truncated = first.trace.truncated or second.trace.truncated

    magnitude = abs(float(deviation))

    oracle_deviation = None
    if oracle and not exact:
        if kind == "quadratic":
            oracle_deviation = oracle_cross_check(f, x, "q1", n_max).deviation
        elif kind == "quartic":
            oracle_deviation = oracle_cross_check(f, x, "q2", n_max).deviation
        else:
            oracle_deviation = (oracle_cross_check(f, x, "q1", n_max).deviation
                                + oracle_cross_check(f, x, "q2", n_max).deviation) / 12

    reconstruction_error = None
    reconstruction_tolerance = None
    if kind == "combined" and getattr(f, "delta", None) == 0.0:
        reconstruction_error = magnitude
        reconstruction_tolerance = 0.0 if exact else \
            HYERS_CONFIG["oracle_tolerance"] * dyadic_scale(f, x, n_max, 4)

    return _Cell(magnitude, traces, truncated, oracle_deviation, reconstruction_error, reconstruction_tolerance)


_BOUND_DETAIL = {
    "quadratic": bound_quadratic_detail,
    "quartic": bound_quartic_detail,
    "combined": bound_combined_detail,
}
_DEGREE = {"quadratic": 2, "quartic": 4}


def _verify(
        kind: str,
        f: Callable,
        rho: PerturbationProfile,
        xgrid: Sequence,
        tgrid: Sequence[float],
        depth: int = HYERS_CONFIG["depth"],
        n_max: int = HYERS_CONFIG["n_max"],
        tol: float = HYERS_CONFIG["tol"],
        combiner: Combiner = Combiner.TNORM_FOLD,
        tnorm: Union[str, TNormKind] = TNormKind.MINIMUM,
        codomain: Codomain = Codomain.AUTO,
        arithmetic: Arithmetic = Arithmetic.FLOAT,
        eval_limit: float = HYERS_CONFIG["evaluation_limit"],
        oracle: bool = False,
        workers: int = 1,
        progress: bool = False,
) -> TheoremResult:
    if not xgrid or not tgrid:
        raise DomainError("Сетки x и t не должны быть пустыми")
    if any(not t > 0 for t in tgrid):
        raise DomainError("Все узлы сетки t должны быть положительными")
    tnorm = get_kind(tnorm)
    combiner = Combiner(combiner)
    measure = resolve_codomain(codomain, rho)
    slack = HYERS_CONFIG["pass_slack"]

    hypothesis = check_hypothesis(f, rho, xgrid, tgrid, measure, arithmetic)
    if not hypothesis.holds:
        print(f"[WARN] {kind}: rho не мажорирует дефект ({len(hypothesis.violations)} нарушений), "
              f"max |дефект| = {hypothesis.max_defect:.3g}")

    def evaluate_x(x):
        return _residual_at(kind, f, x, n_max, tol, arithmetic, eval_limit, oracle)

    iterator = tqdm(xgrid, desc=f"Оценка {kind}", disable=not progress)
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            cells = list(pool.map(evaluate_x, iterator))
    else:
        cells = [evaluate_x(x) for x in iterator]

    reports, traces, proxies = [], [], []
    reconstruction_errors, reconstruction_ok = [], None
    for x_index, (x, cell) in enumerate(zip(xgrid, cells)):
        traces.extend(cell.traces)
        for t_index, t in enumerate(tgrid):
            lhs = codomain_mu(cell.magnitude, t, measure) if math.isfinite(cell.magnitude) else 0.0
            detail = _BOUND_DETAIL[kind](rho, x, t, depth, combiner, tnorm)
            reports.append(BoundReport(
                theorem=kind,
                x_index=x_index,
                t_index=t_index,
                x=format_vector(x),
                t=float(t),
                lhs=lhs,
                rhs=detail.value,
                combiner=combiner.value,
                depth=detail.depth,
                decrement=detail.decrement,
                passed=bool(math.isfinite(cell.magnitude) and lhs >= detail.value - slack),
                oracle_deviation=cell.oracle_deviation,
            ))
        if cell.reconstruction_error is not None:
            reconstruction_errors.append(cell.reconstruction_error)
            ok = cell.reconstruction_error <= cell.reconstruction_tolerance
            reconstruction_ok = ok if reconstruction_ok is None else (reconstruction_ok and ok)
        for degree in ([_DEGREE[kind]] if kind in _DEGREE else [2, 4]):
            proxies.extend(condition_proxy(rho, x, min(tgrid), degree, n_max, depth, combiner, tnorm))

    return TheoremResult(
        theorem=kind,
        hypothesis=hypothesis,
        reports=reports,
        proxies=proxies,
        traces=traces,
        truncated=any(cell.truncated for cell in cells),
        reconstruction_error=max(reconstruction_errors) if reconstruction_errors else None,
        reconstruction_ok=reconstruction_ok,
    )


@timed
def verify_quadratic_bound(f, rho, xgrid, tgrid, depth=HYERS_CONFIG["depth"], n_max=HYERS_CONFIG["n_max"],
                           **options) -> TheoremResult:
    """mu_{g(x) - Q_1(x)}(t) >= T_{i>=1}(...) по сетке (x, t), g = f(2x) - 16 f(x)."""
    return _verify("quadratic", f, rho, xgrid, tgrid, depth, n_max, **options)


@timed
def verify_quartic_bound(f, rho, xgrid, tgrid, depth=HYERS_CONFIG["depth"], n_max=HYERS_CONFIG["n_max"],
                         **options) -> TheoremResult:
    """mu_{h(x) - Q_2(x)}(t) >= T_{i>=1}(...) по сетке (x, t), h = f(2x) - 4 f(x)."""
    return _verify("quartic", f, rho, xgrid, tgrid, depth, n_max, **options)


@timed
def verify_combined_bound(f, rho, xgrid, tgrid, depth=HYERS_CONFIG["depth"], n_max=HYERS_CONFIG["n_max"],
                          **options) -> TheoremResult:
    """
    mu_{f(x) - Q_1(x) - Q_2(x)}(t) против комбинации двух свёрток,
    где Q_1 = -q1(g) / 12, Q_2 = q2(h) / 12. При delta = 0 дополнительно
    проверяется Q_1 + Q_2 = f (точно в exact-режиме).
    """
    return _verify("combined", f, rho, xgrid, tgrid, depth, n_max, **options)


def step_profile_for(delta: float, factor: float = HYERS_CONFIG["defect_factor"]) -> StepDefect:
    """StepDefect(factor * delta): |дефект| <= 26 delta для шума амплитуды delta."""
    return StepDefect(c=factor * delta)
