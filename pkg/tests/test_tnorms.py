import pytest
from hypothesis import given, settings, strategies as st

from errors import DomainError
from tnorms import (TNormKind, fold_terms, get_kind, lukasiewicz_tail_converges, t_apply, t_fold, t_tail,
                    to_unit, unit_grid)

unit = st.floats(min_value=0.0, max_value=1.0, allow_nan=False)
kinds = st.sampled_from(list(TNormKind))


@given(kinds, unit, unit)
def test_commutative(kind, a, b):
    assert t_apply(kind, a, b) == pytest.approx(t_apply(kind, b, a), abs=1e-12)


@given(kinds, unit, unit, unit)
def test_associative(kind, a, b, c):
    left = t_apply(kind, t_apply(kind, a, b), c)
    right = t_apply(kind, a, t_apply(kind, b, c))
    assert left == pytest.approx(right, abs=1e-12)


@given(kinds, unit, unit, unit)
def test_monotone(kind, a, b, c):
    low, high = min(b, c), max(b, c)
    assert t_apply(kind, a, low) <= t_apply(kind, a, high) + 1e-12


@given(kinds, unit)
def test_one_is_identity(kind, a):
    assert t_apply(kind, a, 1.0) == pytest.approx(a, abs=1e-12)


@given(unit, unit)
def test_pointwise_order(a, b):
    assert t_apply("lukasiewicz", a, b) <= t_apply("product", a, b) + 1e-12
    assert t_apply("product", a, b) <= t_apply("minimum", a, b) + 1e-12


def test_examples():
    assert t_apply("minimum", 0.3, 0.7) == 0.3
    assert t_apply("product", 0.5, 0.5) == 0.25
    assert t_apply("lukasiewicz", 0.6, 0.3) == 0.0
    assert t_apply("lukasiewicz", 0.9, 0.8) == pytest.approx(0.7)


def test_argument_outside_unit_interval_rejected():
    with pytest.raises(DomainError):
        t_apply("minimum", 1.5, 0.2)
    with pytest.raises(DomainError):
        to_unit(-0.01)
    assert to_unit(1.0 + 1e-13) == 1.0


def test_unknown_kind_rejected():
    with pytest.raises(DomainError):
        get_kind("hamacher")


def test_fold_is_left_fold():
    assert t_fold("product", [0.5, 0.5, 0.5]) == 0.125
    assert t_fold("minimum", [0.9]) == 0.9
    with pytest.raises(DomainError):
        t_fold("minimum", [])


@settings(max_examples=50)
@given(kinds, st.lists(unit, min_size=1, max_size=20), unit)
def test_fold_does_not_increase_with_more_terms(kind, values, extra):
    assert t_fold(kind, values + [extra]) <= t_fold(kind, values) + 1e-12


def test_fold_terms_stops_after_stable_run():
    terms = [0.5] + [1.0] * 100
    result = fold_terms("minimum", iter(terms), stable_run=5)
    assert result.value == 0.5
    assert result.depth == 6
    assert result.decrement == 0.0
    assert result.stable_from == 2


@pytest.mark.parametrize("n", [1, 3, 5])
def test_lukasiewicz_geometric_tail(n):
    tail = t_tail("lukasiewicz", lambda i: 1.0 - 2.0 ** -i, start=n)
    assert tail.value == pytest.approx(1.0 - 2.0 ** -n, abs=1e-9)


def test_lukasiewicz_series_criterion():
    geometric = lukasiewicz_tail_converges(lambda i: 2.0 ** -i)
    assert geometric.converges
    assert geometric.partial_sum == pytest.approx(1.0, abs=1e-9)

    harmonic = lukasiewicz_tail_converges(lambda i: 1.0 / i, depth=100_000)
    assert not harmonic.converges
    assert harmonic.block_sum > 0.5


def test_lukasiewicz_series_from_sequence():
    report = lukasiewicz_tail_converges([0.5, 0.25, 0.0, 0.0], block=2)
    assert report.converges
    assert report.depth == 4
    with pytest.raises(DomainError):
        lukasiewicz_tail_converges([1.5])


def test_tail_rejects_bad_depth():
    with pytest.raises(DomainError):
        t_tail("minimum", lambda i: 1.0, start=0, depth=0)


def test_unit_grid():
    grid = unit_grid(5)
    assert grid == [0.0, 0.25, 0.5, 0.75, 1.0]
