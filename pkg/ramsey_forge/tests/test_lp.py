"""Tests for exact rational feasibility"""
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ramsey_forge.lp import RationalLP, fourier_motzkin_feasible, simplex_feasible


def _lp(rows, n=2):
    lp = RationalLP([f"x{i}" for i in range(n)])
    for coeffs, rhs in rows:
        lp.add_equality(coeffs, rhs)
    return lp


def test_feasible_system():
    lp = _lp([([1, -1], 0), ([1, 1], 2)])
    x = simplex_feasible(lp)
    assert x == [Fraction(1), Fraction(1)]
    assert lp.satisfied_by(x)
    assert fourier_motzkin_feasible(lp)


def test_negative_right_hand_side():
    lp = _lp([([1, 1], -1)])
    assert simplex_feasible(lp) is None
    assert not fourier_motzkin_feasible(lp)
    lp = _lp([([-1, 1], -3)])
    assert lp.satisfied_by(simplex_feasible(lp))


def test_contradictory_rows():
    lp = _lp([([1, 1], 1), ([2, 2], 3)])
    assert simplex_feasible(lp) is None
    assert not fourier_motzkin_feasible(lp)


def test_fractional_solution():
    lp = _lp([([3, 0], 1), ([1, 1], 1)])
    assert simplex_feasible(lp) == [Fraction(1, 3), Fraction(2, 3)]


def test_empty_system_and_row_width():
    assert simplex_feasible(_lp([])) == [0, 0]
    with pytest.raises(ValueError):
        RationalLP(["x"]).add_equality([1, 2], 0)


rows = st.lists(st.tuples(st.lists(st.integers(-2, 2), min_size=3, max_size=3), st.integers(-2, 2)),
                min_size=1, max_size=3)


@settings(max_examples=300, deadline=None)
@given(rows)
def test_simplex_agrees_with_elimination(system):
    lp = _lp(system, n=3)
    x = simplex_feasible(lp)
    assert (x is not None) == fourier_motzkin_feasible(lp)
    if x is not None:
        assert lp.satisfied_by(x)
