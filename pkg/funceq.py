# -*- coding: utf-8 -*-
"""
Операторы невязки квадратичного, квартичного и квадратично-квартичного
уравнений, разложение f = (h - g) / 12 и тестовые функции f = a Q4 + b Q2 + delta * eta.

Все операторы принимают векторы как float-массивы, так и массивы Fraction:
в точном режиме арифметика по дороге не округляется.
"""
import functools
from fractions import Fraction
from typing import Callable, ClassVar, Dict, Iterable, List, Sequence

import numpy as np
from pydantic import BaseModel, ConfigDict, Field
from tqdm import tqdm

from config import FUNCEQ_CONFIG
from models import Diagnostic, TestFunctionRecord
from rnspace import as_vector, format_vector
from time_logger import timed

Evaluable = Callable[[np.ndarray], float]


def _zigzag(value: int) -> int:
    return 2 * value if value >= 0 else -2 * value - 1


def noise_key(x, digits: int = FUNCEQ_CONFIG["noise_digits"]) -> tuple:
    """Ключ шума: координаты, округлённые до digits знаков (одинаков для float и Fraction)."""
    scale = 10 ** digits
    return tuple(round(Fraction(v) * scale) for v in as_vector(x))


@functools.lru_cache(maxsize=1 << 16)
def _eta_by_key(seed: int, key: tuple) -> float:
    if not any(key):
        return 0.0
    entropy = [seed, len(key)] + [_zigzag(k) for k in key]
    rng = np.random.default_rng(np.random.SeedSequence(entropy))
    return float(rng.uniform(-1.0, 1.0))


def eta(x, seed: int) -> float:
    """
    Детерминированный псевдослучайный шум в [-1, 1].

    Повторный вызов в той же точке даёт то же значение; eta(0) = 0,
    так что возмущённая функция сохраняет f(0) = 0.
    """
    return _eta_by_key(seed, noise_key(x))


def quadratic_form(x):
    """Q2(x) = ||x||^2 (точно для Fraction)."""
    x = as_vector(x)
    return (x * x).sum()


def _exact(x) -> bool:
    return as_vector(x).dtype == object


def _scaled_noise(delta: float, x, seed: int):
    value = delta * eta(x, seed)
    return Fraction(value) if _exact(x) else value


class TestFunction(BaseModel):
    """f(x) = a * Q2(x)^2 + b * Q2(x) + delta * eta(x); при d = 1 это a x^4 + b x^2."""
    __test__: ClassVar[bool] = False
    model_config = ConfigDict(frozen=True)

    a: float = 0.0
    b: float = 0.0
    delta: float = Field(default=0.0, ge=0.0)
    seed: int = Field(default=0, ge=0)
    dimension: int = Field(default=1, ge=1)

    def exact(self, x):
        """Полиномиальная часть без шума."""
        x = as_vector(x, self.dimension)
        q2 = quadratic_form(x)
        if x.dtype == object:
            return Fraction(self.a) * q2 * q2 + Fraction(self.b) * q2
        return float(self.a * q2 * q2 + self.b * q2)

    def __call__(self, x):
        value = self.exact(x)
        if self.delta == 0.0:
            return value
        return value + _scaled_noise(self.delta, x, self.seed)

    def to_record(self) -> TestFunctionRecord:
        return TestFunctionRecord(a=self.a, b=self.b, delta=self.delta, seed=self.seed, dimension=self.dimension)


class Perturbed:
    """Произвольное отображение плюс ограниченный шум delta * eta(x)."""

    def __init__(self, base: Evaluable, delta: float, seed: int = 0):
        self.base = base
        self.delta = delta
        self.seed = seed

    def __call__(self, x):
        x = as_vector(x)
        return self.base(x) + _scaled_noise(self.delta, x, self.seed)


def residual_qq(f: Evaluable, x, y):
    """Невязка квадратично-квартичного уравнения: f(2x+y) + f(2x-y) - 4f(x+y) - 4f(x-y) - 2f(2x) + 8f(x) + 6f(y)."""
    x, y = as_vector(x), as_vector(y)
    return (f(2 * x + y) + f(2 * x - y) - 4 * f(x + y) - 4 * f(x - y)
            - 2 * f(2 * x) + 8 * f(x) + 6 * f(y))


def residual_quadratic(f: Evaluable, x, y):
    """f(x+y) + f(x-y) - 2f(x) - 2f(y)."""
    x, y = as_vector(x), as_vector(y)
    return f(x + y) + f(x - y) - 2 * f(x) - 2 * f(y)


def residual_quartic(f: Evaluable, x, y):
    """f(x+2y) + f(x-2y) - 4f(x+y) - 4f(x-y) - 24f(y) + 6f(x)."""
    x, y = as_vector(x), as_vector(y)
    return (f(x + 2 * y) + f(x - 2 * y) - 4 * f(x + y) - 4 * f(x - y)
            - 24 * f(y) + 6 * f(x))


def residual_quartic_interchanged(f: Evaluable, x, y):
    """Форма с переставленными аргументами: h(2x+y) + h(2x-y) - 4[h(x+y) + h(x-y) + 6h(x)] + 6h(y)."""
    x, y = as_vector(x), as_vector(y)
    return (f(2 * x + y) + f(2 * x - y) - 4 * (f(x + y) + f(x - y) + 6 * f(x))
            + 6 * f(y))


class DilationDifference:
    """x -> f(2x) - factor * f(x)."""

    def __init__(self, f: Evaluable, factor: int):
        self.f = f
        self.factor = factor

    def __call__(self, x):
        x = as_vector(x)
        return self.f(2 * x) - self.factor * self.f(x)


def part_g(f: Evaluable) -> DilationDifference:
    """g(x) = f(2x) - 16 f(x) - квадратичная часть (с множителем -12)."""
    return DilationDifference(f, 16)


def part_h(f: Evaluable) -> DilationDifference:
    """h(x) = f(2x) - 4 f(x) - квартичная часть (с множителем 12)."""
    return DilationDifference(f, 4)


def reconstruct(g_val, h_val):
    """f = (h - g) / 12."""
    if isinstance(g_val, Fraction) or isinstance(h_val, Fraction):
        return (Fraction(h_val) - Fraction(g_val)) / 12
    return (h_val - g_val) / 12


def biadditive_B(f: Evaluable, x, y):
    """Поляризация B(x, y) = (f(x+y) - f(x-y)) / 4."""
    x, y = as_vector(x), as_vector(y)
    diff = f(x + y) - f(x - y)
    if isinstance(diff, Fraction):
        return diff / 4
    return diff / 4.0


def check_doubling(f: Evaluable, x):
    """f(4x) - 20 f(2x) + 64 f(x); ноль для решений основного уравнения."""
    x = as_vector(x)
    return f(4 * x) - 20 * f(2 * x) + 64 * f(x)


def check_even(f: Evaluable, x):
    """f(-x) - f(x)."""
    x = as_vector(x)
    return f(-x) - f(x)


def stencil_identities(f: Evaluable, x) -> Dict[str, float]:
    """
    Одношаговые выражения основного уравнения, через которые выводится удвоение:
    y = x даёт f(3x) - 6f(2x) + 15f(x), y = 2x (с чётностью) даёт
    f(4x) - 4f(3x) + 4f(2x) + 4f(x); их комбинация с коэффициентом 4
    равна f(4x) - 20f(2x) + 64f(x).
    """
    x = as_vector(x)
    at_diagonal = f(3 * x) - 6 * f(2 * x) + 15 * f(x)
    at_double = f(4 * x) - 4 * f(3 * x) + 4 * f(2 * x) + 4 * f(x)
    return {
        "diagonal": at_diagonal,
        "double": at_double,
        "doubling": at_double + 4 * at_diagonal,
    }


class PeakRecorder:
    """Обёртка, запоминающая max(1, |f|) по всем точкам шаблона."""

    def __init__(self, f: Evaluable):
        self.f = f
        self.peak = 1.0

    def __call__(self, x):
        value = self.f(x)
        self.peak = max(self.peak, abs(float(value)))
        return value

    def reset(self) -> None:
        self.peak = 1.0


def within_tolerance(residual, scale: float, tol: float = FUNCEQ_CONFIG["residual_tolerance"]) -> bool:
    return abs(float(residual)) <= tol * max(1.0, scale)


def solution_family(
        count: int,
        seed: int,
        a_range=(-10.0, 10.0),
        b_range=(-10.0, 10.0),
        delta: float = 0.0,
        dimension: int = 1,
) -> List[TestFunction]:
    """Сидированное семейство f = a Q4 + b Q2 (+ шум)."""
    rng = np.random.default_rng(seed)
    a_values = rng.uniform(a_range[0], a_range[1], size=count)
    b_values = rng.uniform(b_range[0], b_range[1], size=count)
    return [
        TestFunction(a=float(a), b=float(b), delta=delta, seed=seed + i, dimension=dimension)
        for i, (a, b) in enumerate(zip(a_values, b_values))
    ]


# Проверки по парам (x, y) и по точкам x
_SWEEP_CHECKS = {
    "residual_qq": lambda f, x, y: residual_qq(f, x, y),
    "quadratic_g": lambda f, x, y: residual_quadratic(part_g(f), x, y),
    "quartic_h": lambda f, x, y: residual_quartic(part_h(f), x, y),
}
_POINT_CHECKS = {
    "doubling": check_doubling,
    "even": check_even,
}


@timed
def residual_sweep(
        f: Evaluable,
        points: Sequence,
        tol: float = FUNCEQ_CONFIG["residual_tolerance"],
        progress: bool = False,
) -> List[Diagnostic]:
    """
    Прогоняет все невязки по сетке пар (x, y) из points.

    Допуск относительный: |невязка| <= tol * max(1, max|f| на шаблоне).
    """
    vectors = [as_vector(p) for p in points]
    recorder = PeakRecorder(f)
    diagnostics = []

    pairs = [(i, j) for i in range(len(vectors)) for j in range(len(vectors))]
    for i, j in tqdm(pairs, desc="Невязки по сетке", disable=not progress):
        x, y = vectors[i], vectors[j]
        for name, check in _SWEEP_CHECKS.items():
            recorder.reset()
            value = check(recorder, x, y)
            if not within_tolerance(value, recorder.peak, tol):
                diagnostics.append(Diagnostic(
                    check=name,
                    witness=f"x={format_vector(x)};y={format_vector(y)}",
                    magnitude=abs(float(value)),
                ))

    for x in vectors:
        for name, check in _POINT_CHECKS.items():
            recorder.reset()
            value = check(recorder, x)
            if not within_tolerance(value, recorder.peak, tol):
                diagnostics.append(Diagnostic(
                    check=name,
                    witness=f"x={format_vector(x)}",
                    magnitude=abs(float(value)),
                ))
    return diagnostics


def stencil_scale(f: Evaluable, points: Iterable) -> float:
    """max(1, max |f(p)|) по набору точек."""
    return max([1.0] + [abs(float(f(as_vector(p)))) for p in points])
