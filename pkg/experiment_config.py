# -*- coding: utf-8 -*-
"""
Конфигурация эксперимента: текстовый файл из строк `key = value` с
комментариями `#` плюс переопределения из командной строки.
"""
import os
from typing import Dict, List, Literal, Mapping, Optional, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, ValidationError, field_validator, model_validator

from config import FUNCEQ_CONFIG, HYERS_CONFIG, OUTPUT_DIR, TNORM_CONFIG
from errors import ConfigError
from hyers import Arithmetic, Codomain, Combiner, ControlType, PerturbationProfile, StepDefect
from tnorms import TNormKind


class ExperimentConfig(BaseModel):
    """Все параметры одного запуска; значения по умолчанию соответствуют config.py."""
    model_config = ConfigDict(extra="forbid", frozen=True)

    # Семейство тестовых функций f = a Q4 + b Q2 + delta * eta
    dimension: int = Field(default=1, ge=1)
    a_min: float = -10.0
    a_max: float = 10.0
    b_min: float = -10.0
    b_max: float = 10.0
    delta: float = Field(default=0.0, ge=0.0)
    seed: int = Field(default=0, ge=0)
    count: int = Field(default=1, ge=1)

    # Сетка по x (одинаковые координаты по всем осям) и по t
    x_min: float = 0.5
    x_max: float = 4.0
    x_count: int = Field(default=5, ge=1)
    x_scale: Literal["linear", "log"] = "linear"
    t_min: float = 0.01
    t_max: float = 100.0
    t_count: int = Field(default=5, ge=1)
    t_scale: Literal["linear", "log"] = "log"

    # Прямой метод
    depth: int = Field(default=HYERS_CONFIG["depth"], ge=1)
    n_max: int = Field(default=HYERS_CONFIG["n_max"], ge=2, le=HYERS_CONFIG["max_levels"])
    tol: float = Field(default=HYERS_CONFIG["tol"], gt=0.0)
    residual_tol: float = Field(default=FUNCEQ_CONFIG["residual_tolerance"], gt=0.0)
    combiner: Combiner = Combiner.TNORM_FOLD
    tnorm: TNormKind = TNormKind.MINIMUM
    codomain: Codomain = Codomain.AUTO
    arithmetic: Arithmetic = Arithmetic.FLOAT

    # Семейство rho: step -> StepDefect(rho_c), control -> ControlType(theta, p)
    rho_family: Literal["step", "control"] = "step"
    rho_c: Optional[float] = Field(default=None, ge=0.0)  # None -> defect_factor * delta
    theta: float = Field(default=0.0, ge=0.0)
    p: float = Field(default=0.0, ge=0.0)

    # Аксиомы и хвосты
    samples: int = Field(default=1000, ge=1)
    space: Literal["induced", "broken_rn2"] = "induced"
    tail: Literal["geometric", "harmonic"] = "geometric"
    tail_depth: int = Field(default=TNORM_CONFIG["tail_depth"], ge=1)

    workers: int = Field(default=1, ge=1)
    output: str = OUTPUT_DIR
    oracle: bool = False
    progress: bool = False

    @field_validator("x_min", "x_max")
    @classmethod
    def _coordinate_limit(cls, value: float) -> float:
        limit = HYERS_CONFIG["coordinate_limit"]
        if abs(value) > limit:
            raise ValueError(f"координата {value} превышает предел {limit:g}")
        return value

    @model_validator(mode="after")
    def _check_ranges(self):
        if self.a_min > self.a_max or self.b_min > self.b_max:
            raise ValueError("диапазоны коэффициентов a, b заданы в обратном порядке")
        if self.x_min > self.x_max or (self.x_count > 1 and self.x_min == self.x_max):
            raise ValueError("вырожденный диапазон x")
        if self.t_min <= 0 or self.t_min > self.t_max or (self.t_count > 1 and self.t_min == self.t_max):
            raise ValueError("диапазон t должен быть положительным и невырожденным")
        if self.x_scale == "log" and self.x_min <= 0:
            raise ValueError("логарифмическая сетка x требует x_min > 0")
        return self

    def xgrid(self) -> List[np.ndarray]:
        """Точки x = (v, ..., v) размерности dimension."""
        return [np.full(self.dimension, v) for v in _axis(self.x_min, self.x_max, self.x_count, self.x_scale)]

    def tgrid(self) -> List[float]:
        return _axis(self.t_min, self.t_max, self.t_count, self.t_scale)

    def profile(self) -> PerturbationProfile:
        if self.rho_family == "control":
            return ControlType(theta=self.theta, p=self.p)
        c = self.rho_c if self.rho_c is not None else HYERS_CONFIG["defect_factor"] * self.delta
        return StepDefect(c=c)

    @property
    def a_range(self) -> Tuple[float, float]:
        return self.a_min, self.a_max

    @property
    def b_range(self) -> Tuple[float, float]:
        return self.b_min, self.b_max


def _axis(lo: float, hi: float, count: int, scale: str) -> List[float]:
    if count == 1:
        return [float(lo)]
    if scale == "log":
        return [float(v) for v in np.logspace(np.log10(lo), np.log10(hi), count)]
    return [float(v) for v in np.linspace(lo, hi, count)]


def parse_lines(text: str) -> Dict[str, str]:
    """Разбирает строки `key = value`; пустые строки и всё после `#` игнорируются."""
    values = {}
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"Строка {number}: ожидалось `key = value`, получено {raw.strip()!r}")
        key, value = (part.strip() for part in line.split("=", 1))
        if not key:
            raise ConfigError(f"Строка {number}: пустой ключ")
        values[key.replace("-", "_")] = value
    return values


def parse_overrides(pairs: List[str]) -> Dict[str, str]:
    """Переопределения `--set key=value`."""
    values = {}
    for pair in pairs:
        if "=" not in pair:
            raise ConfigError(f"Переопределение должно иметь вид key=value, получено {pair!r}")
        key, value = (part.strip() for part in pair.split("=", 1))
        values[key.replace("-", "_")] = value
    return values


def load_config(path: Optional[str] = None, overrides: Optional[Mapping[str, object]] = None) -> ExperimentConfig:
    """
    Собирает ExperimentConfig: значения по умолчанию < файл < переопределения.

    Raises:
        ConfigError: файл не читается, неизвестный ключ или значение не проходит валидацию.
    """
    values: Dict[str, object] = {}
    if path is not None:
        if not os.path.isfile(path):
            raise ConfigError(f"Файл конфигурации не найден: {path}")
        with open(path, "r", encoding="utf-8") as f:
            values.update(parse_lines(f.read()))
    for key, value in (overrides or {}).items():
        if value is not None:
            values[key.replace("-", "_")] = value

    unknown = sorted(set(values) - set(ExperimentConfig.model_fields))
    if unknown:
        raise ConfigError(f"Неизвестные ключи конфигурации: {', '.join(unknown)}")
    try:
        return ExperimentConfig(**values)
    except ValidationError as e:
        details = "; ".join(f"{'.'.join(str(p) for p in err['loc']) or 'config'}: {err['msg']}" for err in e.errors())
        raise ConfigError(f"Некорректная конфигурация: {details}") from e


def render(config: ExperimentConfig) -> str:
    """Обратное преобразование в формат `key = value` (для сохранения рядом с отчётами)."""
    lines = []
    for key, value in config.model_dump(mode="json").items():
        if value is None:
            continue
        lines.append(f"{key} = {str(value).lower() if isinstance(value, bool) else value}")
    return "\n".join(lines) + "\n"
