# -*- coding: utf-8 -*-
"""
Функции распределения из Delta+ / D+, максимальный элемент eps0 и
поточечный порядок.

Три представления:
    Step(c)            - 0 при t <= c, 1 при t > c (сдвиг eps0, детерминированная оценка);
    RationalControl(c) - t / (t + c) при t > 0 (индуцированное пространство);
    GridSampled        - узлы (t_k, v_k) с линейной интерполяцией (эмпирические данные).
"""
import math
from typing import List, Optional, Sequence

import numpy as np
import pandas as pd
from pydantic import BaseModel, ConfigDict, field_validator, model_validator

from config import DISTRIBUTION_CONFIG
from errors import DomainError
from models import Diagnostic


def eps0(t: float) -> float:
    """Максимальный элемент Delta+: 0 при t <= 0, 1 при t > 0."""
    return 1.0 if t > 0 else 0.0


class DistFn(BaseModel):
    """Базовый класс: F: R u {-inf, +inf} -> [0, 1]."""
    model_config = ConfigDict(frozen=True)

    def __call__(self, t: float) -> float:
        t = float(t)
        if math.isnan(t):
            raise DomainError("Аргумент функции распределения не может быть NaN")
        if t == math.inf:
            return 1.0
        if t <= 0:
            return 0.0
        return self._evaluate(t)

    def _evaluate(self, t: float) -> float:
        raise NotImplementedError

    def _stored_at_zero(self) -> float:
        """Значение в t = 0, заложенное в само представление; __call__ его всегда обнуляет."""
        return 0.0

    def evaluate(self, ts: Sequence[float]) -> np.ndarray:
        return np.array([self(t) for t in ts], dtype=float)

    @property
    def scale(self) -> float:
        """Характерный масштаб по t (для проверки предела на +inf)."""
        return 1.0


class Step(DistFn):
    """Step(c): скачок в t = c, непрерывность слева (F(c) = 0)."""
    threshold: float = 0.0

    @field_validator("threshold")
    @classmethod
    def _non_negative(cls, value: float) -> float:
        if not value >= 0 or math.isinf(value):
            raise DomainError(f"Порог Step должен быть конечным и >= 0, получено {value}")
        return float(value)

    def _evaluate(self, t: float) -> float:
        return 1.0 if t > self.threshold else 0.0

    @property
    def scale(self) -> float:
        return max(self.threshold, 1.0)


class RationalControl(DistFn):
    """RationalControl(c): t -> t / (t + c); c = 0 даёт eps0."""
    c: float = 0.0

    @field_validator("c")
    @classmethod
    def _non_negative(cls, value: float) -> float:
        if not value >= 0 or math.isinf(value):
            raise DomainError(f"Масштаб RationalControl должен быть конечным и >= 0, получено {value}")
        return float(value)

    def _evaluate(self, t: float) -> float:
        if self.c == 0.0:
            return 1.0
        return t / (t + self.c)

    @property
    def scale(self) -> float:
        return self.c if self.c > 0 else 1.0


class GridSampled(DistFn):
    """Кусочно-линейная функция по узлам; до первого узла - прямая из (0, 0), после последнего - константа."""
    knots: List[float]
    values: List[float]

    @model_validator(mode="after")
    def _check_knots(self):
        if len(self.knots) == 0 or len(self.knots) != len(self.values):
            raise DomainError("GridSampled: нужны непустые узлы и значения одинаковой длины")
        knots = np.asarray(self.knots, dtype=float)
        values = np.asarray(self.values, dtype=float)
        if not np.all(np.isfinite(knots)) or not np.all(np.isfinite(values)):
            raise DomainError("GridSampled: узлы и значения должны быть конечными")
        if np.any(np.diff(knots) <= 0):
            raise DomainError("GridSampled: абсциссы узлов должны строго возрастать")
        if np.any(values < 0) or np.any(values > 1):
            raise DomainError("GridSampled: значения должны лежать в [0, 1]")
        return self

    def _evaluate(self, t: float) -> float:
        knots = self.knots
        values = self.values
        if knots[0] > 0:
            knots = [0.0] + list(knots)
            values = [0.0] + list(values)
        return float(np.interp(t, knots, values))

    def _stored_at_zero(self) -> float:
        if self.knots[0] > 0:
            return 0.0
        return float(np.interp(0.0, self.knots, self.values))

    @property
    def scale(self) -> float:
        return max(abs(self.knots[-1]), 1.0)

    @classmethod
    def from_csv(cls, path: str) -> "GridSampled":
        """Читает двухколоночный CSV (t, value) со строго возрастающим t."""
        df = pd.read_csv(path)
        for col in ("t", "value"):
            if col not in df.columns:
                raise DomainError(f"Отсутствует обязательная колонка: {col}")
        return cls(knots=df["t"].astype(float).tolist(), values=df["value"].astype(float).tolist())

    def to_csv(self, path: str) -> None:
        pd.DataFrame({"t": self.knots, "value": self.values}).to_csv(path, index=False, float_format="%.17g")


EPS0 = Step(threshold=0.0)


def default_grid(
        lo: float = DISTRIBUTION_CONFIG["grid_min"],
        hi: float = DISTRIBUTION_CONFIG["grid_max"],
        points: int = DISTRIBUTION_CONFIG["grid_points"],
) -> List[float]:
    """Логарифмическая сетка по t (по умолчанию [1e-6, 1e6])."""
    return [float(v) for v in np.logspace(np.log10(lo), np.log10(hi), points)]


def dist_le(F: DistFn, G: DistFn, grid: Optional[Sequence[float]] = None) -> bool:
    """Выборочный сертификат F <= G: F(t) <= G(t) + slack во всех узлах сетки."""
    grid = default_grid() if grid is None else list(grid)
    if not grid:
        raise DomainError("Сетка для сравнения функций распределения пуста")
    slack = DISTRIBUTION_CONFIG["order_slack"]
    return all(F(t) <= G(t) + slack for t in grid)


def validate_distfn(F: DistFn, grid: Optional[Sequence[float]] = None) -> List[Diagnostic]:
    """
    Проверяет условия Delta+ на сетке: монотонность, F(0) = 0 и F(большое t) -> 1.
    Возвращает список диагностик (пустой - функция корректна).
    """
    grid = default_grid() if grid is None else list(grid)
    if any(b < a for a, b in zip(grid, grid[1:])):
        raise DomainError("Сетка для проверки должна быть отсортирована по возрастанию")

    diagnostics = []
    points = sorted(set(grid) | set(getattr(F, "knots", [])))
    values = F.evaluate(points)
    for k in range(1, len(points)):
        drop = values[k - 1] - values[k]
        if drop > DISTRIBUTION_CONFIG["order_slack"]:
            diagnostics.append(Diagnostic(
                check="monotonicity",
                witness=f"t={points[k - 1]!r}->{points[k]!r}",
                magnitude=float(drop),
            ))

    at_zero = F._stored_at_zero()
    if at_zero != 0.0:
        diagnostics.append(Diagnostic(check="F(0)=0", witness="t=0", magnitude=at_zero))

    far = DISTRIBUTION_CONFIG["limit_factor"] * F.scale
    gap = 1.0 - F(far)
    if gap > DISTRIBUTION_CONFIG["limit_tolerance"]:
        diagnostics.append(Diagnostic(check="limit", witness=f"t={far!r}", magnitude=gap))
    return diagnostics
