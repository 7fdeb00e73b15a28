import math

import pytest
from hypothesis import given, strategies as st
from pydantic import ValidationError

from distributions import EPS0, GridSampled, RationalControl, Step, default_grid, dist_le, eps0, validate_distfn

positive = st.floats(min_value=1e-6, max_value=1e6, allow_nan=False)
scales = st.floats(min_value=0.0, max_value=1e3, allow_nan=False)


def test_eps0():
    assert eps0(0.0) == 0.0
    assert eps0(-1.0) == 0.0
    assert eps0(1e-12) == 1.0
    assert EPS0(5.0) == 1.0


def test_step_is_left_continuous():
    step = Step(threshold=2.0)
    assert step(2.0) == 0.0
    assert step(2.0000001) == 1.0
    assert step(math.inf) == 1.0


def test_rational_control():
    control = RationalControl(c=1.0)
    assert control(1.0) == 0.5
    assert control(0.0) == 0.0
    assert control(math.inf) == 1.0
    assert RationalControl(c=0.0)(1e-9) == 1.0


@pytest.mark.parametrize("factory", [lambda: Step(threshold=-1.0), lambda: RationalControl(c=-0.5)])
def test_negative_scale_rejected(factory):
    with pytest.raises(ValueError):
        factory()


@given(scales, positive)
def test_every_distribution_below_eps0(c, t):
    assert RationalControl(c=c)(t) <= EPS0(t)
    assert Step(threshold=c)(t) <= EPS0(t)


@given(scales, scales)
def test_order_follows_scale(c1, c2):
    low, high = min(c1, c2), max(c1, c2)
    assert dist_le(RationalControl(c=high), RationalControl(c=low))
    assert dist_le(Step(threshold=high), Step(threshold=low))


def test_order_is_not_total():
    assert not dist_le(Step(threshold=1.0), RationalControl(c=1.0))
    assert not dist_le(RationalControl(c=1.0), Step(threshold=1.0))


def test_grid_sampled_interpolation():
    F = GridSampled(knots=[1.0, 2.0], values=[0.5, 1.0])
    assert F(0.5) == pytest.approx(0.25)
    assert F(1.5) == pytest.approx(0.75)
    assert F(10.0) == 1.0
    assert validate_distfn(F) == []


def test_grid_sampled_rejects_bad_knots():
    with pytest.raises(ValidationError):
        GridSampled(knots=[1.0, 1.0], values=[0.2, 0.3])
    with pytest.raises(ValidationError):
        GridSampled(knots=[1.0, 2.0], values=[0.2, 1.3])


def test_validate_reports_monotonicity_and_limit():
    F = GridSampled(knots=[1.0, 2.0, 3.0], values=[0.5, 0.2, 0.4])
    checks = {d.check for d in validate_distfn(F)}
    assert checks == {"monotonicity", "limit"}


@pytest.mark.parametrize("knots, values, expected", [
    ([0.0, 1.0], [0.3, 1.0], 0.3),
    ([-1.0, 1.0], [0.2, 1.0], 0.6),
])
def test_validate_reports_mass_at_zero(knots, values, expected):
    F = GridSampled(knots=knots, values=values)
    assert F(0.0) == 0.0
    diagnostics = validate_distfn(F)
    assert [d.check for d in diagnostics] == ["F(0)=0"]
    assert diagnostics[0].magnitude == pytest.approx(expected)


def test_validate_accepts_standard_families():
    for F in (EPS0, Step(threshold=3.0), RationalControl(c=2.0)):
        assert validate_distfn(F) == []


def test_grid_sampled_csv_roundtrip(tmp_path):
    F = GridSampled(knots=[0.5, 1.0, 4.0], values=[0.1, 0.6, 1.0])
    path = tmp_path / "F.csv"
    F.to_csv(str(path))
    assert path.read_text().splitlines()[0] == "t,value"
    assert GridSampled.from_csv(str(path)) == F


def test_default_grid():
    grid = default_grid()
    assert grid[0] == pytest.approx(1e-6)
    assert grid[-1] == pytest.approx(1e6)
    assert len(grid) == 121
