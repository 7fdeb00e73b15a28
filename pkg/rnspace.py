# -*- coding: utf-8 -*-
"""
Случайные нормированные пространства (X, mu, T) над R^d.

По умолчанию - индуцированное пространство mu_x(t) = t / (t + ||x||) с
евклидовой нормой. Аксиомы RN1-RN3 проверяются сидированным фаззингом,
сходимость и фундаментальность - на конечном горизонте.
"""
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction
from typing import Callable, List, NamedTuple, Optional, Sequence, Tuple, Union

import numpy as np

from config import RNSPACE_CONFIG
from distributions import DistFn, RationalControl, eps0
from errors import DomainError
from models import Diagnostic
from time_logger import timed
from tnorms import TNormKind, get_kind, t_apply

Vector = np.ndarray
SequenceLike = Union[Callable[[int], Sequence[float]], Sequence[Sequence[float]]]

_STRICT_SLACK = 1e-12


def as_vector(x, dimension: Optional[int] = None) -> Vector:
    """Приводит скаляр или набор координат к одномерному массиву (Fraction сохраняются как object)."""
    if isinstance(x, np.ndarray) and x.ndim == 1:
        vector = x
    elif np.isscalar(x) or isinstance(x, Fraction):
        vector = np.array([x], dtype=object if isinstance(x, Fraction) else float)
    else:
        items = list(x)
        exact = any(isinstance(v, Fraction) for v in items)
        vector = np.array(items, dtype=object if exact else float)
    if vector.size == 0:
        raise DomainError("Вектор должен иметь хотя бы одну координату")
    if vector.dtype != object and not np.all(np.isfinite(vector)):
        raise DomainError(f"Координаты вектора должны быть конечными: {vector}")
    if dimension is not None and vector.size != dimension:
        raise DomainError(f"Ожидалась размерность {dimension}, получено {vector.size}")
    return vector


def to_exact(x) -> Vector:
    """Вектор из Fraction (точная арифметика для оракула)."""
    return np.array([Fraction(v) for v in as_vector(x)], dtype=object)


def euclidean_norm(x) -> float:
    return float(np.linalg.norm(np.asarray(as_vector(x), dtype=float)))


def format_vector(x) -> str:
    """Компактная запись вектора для отчётов: координаты через ';'."""
    return ";".join(repr(float(v)) for v in as_vector(x))


def induced_mu(x, t: float, norm: Callable = euclidean_norm) -> float:
    """mu_x(t) = t / (t + ||x||) индуцированного пространства."""
    if not t > 0:
        raise DomainError(f"Индуцированная мера определена для t > 0, получено t={t}")
    return t / (t + norm(x))


class RnSpace:
    """RN-пространство: норма, t-норма и отображение x -> mu_x из D+."""

    def __init__(
            self,
            tnorm: Union[str, TNormKind] = TNormKind.MINIMUM,
            norm: Callable = euclidean_norm,
            mu: Optional[Callable[[Vector], DistFn]] = None,
            dimension: int = 1,
    ):
        if dimension < 1:
            raise DomainError(f"Размерность должна быть >= 1, получено {dimension}")
        self.tnorm = get_kind(tnorm)
        self.norm = norm
        self.mu = mu
        self.dimension = dimension

    @property
    def is_induced(self) -> bool:
        return self.mu is None

    def distribution(self, x) -> DistFn:
        if self.mu is None:
            return RationalControl(c=self.norm(x))
        return self.mu(as_vector(x))

    def mu_value(self, x, t: float) -> float:
        """mu_x(t); для индуцированного пространства считается напрямую."""
        if self.mu is None:
            if t <= 0:
                return 0.0
            return t / (t + self.norm(x))
        return self.mu(as_vector(x))(t)


def broken_rn2_space(tnorm: Union[str, TNormKind] = TNormKind.MINIMUM, dimension: int = 1) -> RnSpace:
    """Заведомо некорректное пространство mu_x(t) = t / (t + ||x||^2): RN2 нарушается при |alpha| != 1."""
    return RnSpace(
        tnorm=tnorm,
        mu=lambda x: RationalControl(c=euclidean_norm(x) ** 2),
        dimension=dimension,
    )


def _log_uniform(rng: np.random.Generator) -> float:
    return float(10 ** rng.uniform(RNSPACE_CONFIG["t_log_min"], RNSPACE_CONFIG["t_log_max"]))


def _draw_sample(seed: int, index: int, dimension: int) -> Tuple[Vector, Vector, float, float, float]:
    """Сэмпл i выводится из seed + i, поэтому результат не зависит от порядка обработки."""
    rng = np.random.default_rng(seed + index)
    bound = RNSPACE_CONFIG["coordinate_range"]
    x = rng.uniform(-bound, bound, size=dimension)
    y = rng.uniform(-bound, bound, size=dimension)
    alpha = 0.0
    while alpha == 0.0:
        alpha = float(rng.uniform(-RNSPACE_CONFIG["alpha_range"], RNSPACE_CONFIG["alpha_range"]))
    t = _log_uniform(rng)
    s = _log_uniform(rng)
    return x, y, alpha, t, s


def _check_sample(space: RnSpace, seed: int, index: int) -> List[Diagnostic]:
    slack = RNSPACE_CONFIG["axiom_slack"]
    x, y, alpha, t, s = _draw_sample(seed, index, space.dimension)
    found = []

    # RN1: для x != 0 функция mu_x отличается от eps0 хотя бы в одной точке t > 0
    if space.norm(x) > 0:
        probe = (t, s, 1e-6, 1e-3, 1.0)
        if all(space.mu_value(x, u) >= eps0(u) - slack for u in probe):
            found.append(Diagnostic(
                check="RN1",
                witness=f"sample={index};x={x.tolist()}",
                magnitude=float(space.norm(x)),
            ))

    # RN2: mu_{alpha x}(t) = mu_x(t / |alpha|)
    lhs = space.mu_value(alpha * x, t)
    rhs = space.mu_value(x, t / abs(alpha))
    if abs(lhs - rhs) > slack:
        found.append(Diagnostic(
            check="RN2",
            witness=f"sample={index};x={x.tolist()};alpha={alpha!r};t={t!r}",
            magnitude=float(abs(lhs - rhs)),
        ))

    # RN3: mu_{x+y}(t+s) >= T(mu_x(t), mu_y(s))
    lhs = space.mu_value(x + y, t + s)
    rhs = t_apply(space.tnorm, space.mu_value(x, t), space.mu_value(y, s))
    if lhs < rhs - slack:
        found.append(Diagnostic(
            check="RN3",
            witness=f"sample={index};x={x.tolist()};y={y.tolist()};t={t!r};s={s!r}",
            magnitude=float(rhs - lhs),
        ))
    return found


@timed
def check_axioms(space: RnSpace, sample_count: int = 1000, seed: int = 0, workers: int = 1) -> List[Diagnostic]:
    """
    Фаззинг аксиом RN1-RN3 на sample_count сидированных наборах (x, y, alpha, t, s).

    Returns:
        Список нарушений со свидетелями; пустой список - аксиомы выполнены.
    """
    if sample_count < 1:
        raise DomainError(f"sample_count должен быть >= 1, получено {sample_count}")

    diagnostics = []
    # mu_0 = eps0 на положительной сетке
    zero = np.zeros(space.dimension)
    for u in (1e-6, 1e-3, 1.0, 1e3):
        if space.mu_value(zero, u) != eps0(u):
            diagnostics.append(Diagnostic(check="RN1", witness=f"x=0;t={u!r}", magnitude=abs(1.0 - space.mu_value(zero, u))))
            break

    indices = range(sample_count)
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            chunks = list(pool.map(lambda i: _check_sample(space, seed, i), indices))
    else:
        chunks = [_check_sample(space, seed, i) for i in indices]
    for chunk in chunks:
        diagnostics.extend(chunk)
    return diagnostics


def _term(seq: SequenceLike, n: int) -> Vector:
    """n-й член последовательности, нумерация с 1."""
    if callable(seq):
        return as_vector(seq(n))
    return as_vector(seq[n - 1])


class ConvergenceReport(NamedTuple):
    holds: bool
    first_n: Optional[int]  # наименьший N, начиная с которого условие выполнено до горизонта
    witness: Optional[Tuple[int, int]] = None  # пара (n, m) с наибольшим m, где условие нарушено; для сходимости m = 0


def _above(value: float, lam: float) -> bool:
    # Равенство на границе 1 - lambda не засчитываем
    return value > 1.0 - lam + _STRICT_SLACK


def _latest_start(horizon: int) -> int:
    """Хвост [N, horizon] засчитывается, только если покрывает вторую половину горизонта."""
    return max(1, horizon // 2)


def _report(witness: Optional[Tuple[int, int]], first_n: int, horizon: int) -> ConvergenceReport:
    if first_n > _latest_start(horizon):
        return ConvergenceReport(holds=False, first_n=None, witness=witness)
    return ConvergenceReport(holds=True, first_n=first_n, witness=witness)


def seq_convergent(space: RnSpace, seq: SequenceLike, x, eps: float, lam: float, horizon: int) -> ConvergenceReport:
    """
    Есть ли N, что mu_{x_n - x}(eps) > 1 - lambda для всех n в [N, horizon].

    N не может быть больше horizon // 2: хвост из нескольких последних
    членов не отличает сходящуюся последовательность от колеблющейся.
    """
    if horizon < 1:
        raise DomainError(f"Горизонт должен быть >= 1, получено {horizon}")
    x = as_vector(x)
    witness = None
    for n in range(horizon, 0, -1):
        if not _above(space.mu_value(_term(seq, n) - x, eps), lam):
            witness = (n, 0)
            break
    first_n = witness[0] + 1 if witness is not None else 1
    return _report(witness, first_n, horizon)


def seq_cauchy(space: RnSpace, seq: SequenceLike, eps: float, lam: float, horizon: int) -> ConvergenceReport:
    """Есть ли N <= horizon // 2, что mu_{x_n - x_m}(eps) > 1 - lambda для всех horizon >= n >= m >= N."""
    if horizon < 1:
        raise DomainError(f"Горизонт должен быть >= 1, получено {horizon}")
    terms = [_term(seq, n) for n in range(1, horizon + 1)]
    witness = None
    for m in range(horizon, 0, -1):
        for n in range(horizon, m - 1, -1):
            if not _above(space.mu_value(terms[n - 1] - terms[m - 1], eps), lam):
                witness = (n, m)
                break
        if witness is not None:
            break
    first_n = witness[1] + 1 if witness is not None else 1
    return _report(witness, first_n, horizon)


def mu_continuity_check(space: RnSpace, seq: SequenceLike, x, tgrid: Sequence[float], horizon: int) -> float:
    """max_t |mu_{x_horizon}(t) - mu_x(t)| - численная проверка непрерывности mu."""
    x = as_vector(x)
    x_n = _term(seq, horizon)
    return max(abs(space.mu_value(x_n, t) - space.mu_value(x, t)) for t in tgrid)
