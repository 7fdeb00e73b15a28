# -*- coding: utf-8 -*-
"""
Непрерывные t-нормы, их конечные свёртки и диагностика бесконечных хвостов.

Поддерживаются только три классические нормы: минимум (Гёдель),
произведение и Лукасевич.
"""
import functools
from enum import Enum
from typing import Callable, Iterable, List, NamedTuple, Optional, Sequence, Union

import numpy as np

from config import TNORM_CONFIG
from errors import DomainError


class TNormKind(str, Enum):
    MINIMUM = "minimum"
    PRODUCT = "product"
    LUKASIEWICZ = "lukasiewicz"


def minimum(a: float, b: float) -> float:
    """T_M(a, b) = min(a, b). Сильнейшая непрерывная t-норма."""
    return min(a, b)


def product(a: float, b: float) -> float:
    """T_P(a, b) = a * b."""
    return a * b


def lukasiewicz(a: float, b: float) -> float:
    """T_L(a, b) = max(a + b - 1, 0). Нильпотентная, поточечно меньше T_P."""
    return max(a + b - 1.0, 0.0)


_FUNCTIONS = {
    TNormKind.MINIMUM: minimum,
    TNormKind.PRODUCT: product,
    TNormKind.LUKASIEWICZ: lukasiewicz,
}


def get_kind(kind: Union[str, TNormKind]) -> TNormKind:
    try:
        return TNormKind(kind)
    except ValueError:
        raise DomainError(f"Неизвестная t-норма: {kind!r}. Доступны: {[k.value for k in TNormKind]}")


def get_function(kind: Union[str, TNormKind]) -> Callable[[float, float], float]:
    return _FUNCTIONS[get_kind(kind)]


def to_unit(value: float, slack: float = TNORM_CONFIG["slack"]) -> float:
    """Проверяет принадлежность [0,1]; значения в пределах slack прижимает к границе."""
    value = float(value)
    if np.isnan(value) or value < -slack or value > 1.0 + slack:
        raise DomainError(f"Значение {value!r} вне отрезка [0, 1]")
    return min(max(value, 0.0), 1.0)


def t_apply(kind: Union[str, TNormKind], a: float, b: float) -> float:
    """Вычисляет T(a, b) для выбранной нормы."""
    return _FUNCTIONS[get_kind(kind)](to_unit(a), to_unit(b))


def t_fold(kind: Union[str, TNormKind], xs: Iterable[float]) -> float:
    """Левая свёртка T^n_{i=1} x_i = T(T^{n-1}_{i=1} x_i, x_n); для n = 1 возвращает x_1."""
    function = _FUNCTIONS[get_kind(kind)]
    values = [to_unit(x) for x in xs]
    if not values:
        raise DomainError("Свёртка t-нормы по пустой последовательности не определена")
    return functools.reduce(function, values)


class TailResult(NamedTuple):
    value: float  # значение усечённой свёртки (верхняя оценка бесконечной)
    decrement: float  # уменьшение на последнем шаге
    depth: int  # фактически свёрнуто термов
    stable_from: Optional[int]  # с какого терма свёртка перестала меняться


def fold_terms(
        kind: Union[str, TNormKind],
        terms: Iterable[float],
        stable_run: Optional[int] = None,
) -> TailResult:
    """
    Свёртка потока термов с учётом декремента.

    Если stable_run задан, свёртка останавливается после stable_run
    нулевых декрементов подряд (дальнейшие термы её уже не меняют
    для монотонных по i семейств).
    """
    function = _FUNCTIONS[get_kind(kind)]
    value = None
    decrement = 0.0
    depth = 0
    zero_run = 0
    stable_from = None
    for term in terms:
        term = to_unit(term)
        depth += 1
        if value is None:
            value = term
            continue
        new_value = function(value, term)
        decrement = value - new_value
        value = new_value
        if decrement == 0.0:
            zero_run += 1
            if stable_from is None:
                stable_from = depth
            if stable_run is not None and zero_run >= stable_run:
                break
        else:
            zero_run = 0
            stable_from = None
    if value is None:
        raise DomainError("Свёртка t-нормы по пустой последовательности не определена")
    return TailResult(value=value, decrement=decrement, depth=depth, stable_from=stable_from)


def t_tail(
        kind: Union[str, TNormKind],
        terms: Callable[[int], float],
        start: int,
        depth: int = TNORM_CONFIG["tail_depth"],
) -> TailResult:
    """
    Усечение T_{i=start}^{inf} x_i = T_{i=1}^{inf} x_{start+i} до depth термов.

    Свёртка не возрастает по глубине, поэтому результат - верхняя оценка хвоста.
    """
    if depth < 1:
        raise DomainError(f"Глубина хвоста должна быть >= 1, получено {depth}")
    if start < 0:
        raise DomainError(f"Начальный индекс хвоста должен быть >= 0, получено {start}")
    return fold_terms(kind, (terms(start + i) for i in range(1, depth + 1)))


class LukasiewiczTailReport(NamedTuple):
    converges: bool
    partial_sum: float  # сумма дефектов 1 - x_i по всей глубине
    block_sum: float  # сумма дефектов по последнему блоку
    depth: int


def lukasiewicz_tail_converges(
        defects: Union[Sequence[float], Callable[[int], float]],
        depth: Optional[int] = None,
        threshold: float = TNORM_CONFIG["tail_threshold"],
        block: Optional[int] = None,
) -> LukasiewiczTailReport:
    """
    Критерий для нормы Лукасевича: хвосты T_L сходятся к 1 тогда и только
    тогда, когда ряд sum(1 - x_i) сходится.

    Частичные суммы считаем фундаментальными на глубине depth, если сумма
    последнего блока (по умолчанию - вторая половина термов) меньше threshold.
    defects - последовательность 1 - x_i либо функция индекса i >= 1.
    """
    if callable(defects):
        if depth is None:
            depth = TNORM_CONFIG["tail_depth"]
        values = np.fromiter((defects(i) for i in range(1, depth + 1)), dtype=float, count=depth)
    else:
        values = np.asarray(defects, dtype=float)
        if depth is not None:
            values = values[:depth]
        depth = len(values)
    if depth < 1:
        raise DomainError("Для проверки хвоста нужен хотя бы один дефект")
    if np.any(values < -TNORM_CONFIG["slack"]) or np.any(values > 1.0 + TNORM_CONFIG["slack"]):
        raise DomainError("Дефекты 1 - x_i должны лежать в [0, 1]")
    values = np.clip(values, 0.0, 1.0)

    if block is None:
        block = max(depth // 2, 1)
    block_sum = float(values[-block:].sum())
    return LukasiewiczTailReport(
        converges=block_sum < threshold,
        partial_sum=float(values.sum()),
        block_sum=block_sum,
        depth=depth,
    )


def unit_grid(points: int = 11) -> List[float]:
    """Равномерная сетка на [0,1] для проверки свойств t-норм."""
    return [float(v) for v in np.linspace(0.0, 1.0, points)]
