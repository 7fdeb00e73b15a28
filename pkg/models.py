from typing import ClassVar, List, Optional, Tuple

from pydantic import BaseModel, ConfigDict


class Diagnostic(BaseModel):
    """Одно нарушение: название проверки, свидетель и величина нарушения."""
    model_config = ConfigDict(frozen=True)

    check: str
    witness: str
    magnitude: float

    def to_record(self) -> dict:
        return {"check": self.check, "witness": self.witness, "magnitude": self.magnitude}


class TraceLevel(BaseModel):
    model_config = ConfigDict(frozen=True)

    n: int
    value: float
    delta: float  # value_n - value_{n-1}; для n = 0 равно 0


class HyersTrace(BaseModel):
    """Последовательность приближений прямого метода с диагностикой Коши."""
    model_config = ConfigDict(frozen=True)

    levels: List[TraceLevel]
    converged: bool
    truncated: bool = False
    estimated_ratio: float = 0.0
    divisor: int = 4  # 4 для Q_1, 16 для Q_2

    @property
    def value(self) -> float:
        return self.levels[-1].value if self.levels else float("nan")

    @property
    def deltas(self) -> List[float]:
        return [level.delta for level in self.levels[1:]]


class TraceRecord(BaseModel):
    kind: str  # "q1" | "q2"
    x: str
    n: int
    value: float
    delta: float
    converged: bool
    truncated: bool
    estimated_ratio: float


class BoundReport(BaseModel):
    """Строка проверки оценки устойчивости в ячейке (x, t)."""
    theorem: str
    x_index: int
    t_index: int
    x: str
    t: float
    lhs: float
    rhs: float
    combiner: str
    depth: int
    decrement: float
    passed: bool
    oracle_deviation: Optional[float] = None


class HypothesisReport(BaseModel):
    """Проверка того, что rho мажорирует дефект уравнения на шаблоне."""
    holds: bool
    f_at_zero: float
    max_defect: float
    checked: int
    violations: List[Diagnostic]


class ProxyReport(BaseModel):
    """Конечные приближения условий вида lim rho(...) = 1."""
    condition: str
    x: str
    t: float
    first_level: Optional[int]  # первый n, на котором терм > 1 - порог; None - не достигнут
    depth: int


class TheoremResult(BaseModel):
    theorem: str
    hypothesis: HypothesisReport
    reports: List[BoundReport]
    proxies: List[ProxyReport] = []
    traces: List[Tuple[str, HyersTrace]] = []
    truncated: bool = False
    reconstruction_error: Optional[float] = None  # только для delta = 0
    reconstruction_ok: Optional[bool] = None

    @property
    def bounds_passed(self) -> bool:
        return all(report.passed for report in self.reports) and self.reconstruction_ok is not False

    @property
    def passed(self) -> bool:
        return self.hypothesis.holds and self.bounds_passed


class TestFunctionRecord(BaseModel):
    __test__: ClassVar[bool] = False

    a: float
    b: float
    delta: float
    seed: int
    dimension: int
