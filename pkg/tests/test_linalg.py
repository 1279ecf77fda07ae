"""Exact linear algebra against sympy as an independent oracle."""

from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from germkit.linalg import (
    determinant,
    is_negative_definite,
    leading_principal_minors,
    pivot_columns,
    row_space_coordinates,
    rref,
    solve_exact,
)

ints = st.integers(min_value=-6, max_value=6)
fractions = st.fractions(min_value=-4, max_value=4, max_denominator=6)

int_matrices = st.integers(min_value=1, max_value=5).flatmap(
    lambda n: st.lists(st.lists(ints, min_size=n, max_size=n), min_size=n, max_size=n)
)
frac_matrices = st.integers(min_value=1, max_value=4).flatmap(
    lambda n: st.lists(
        st.lists(fractions, min_size=n, max_size=n), min_size=n, max_size=n
    )
)


def to_sympy(m):
    return sympy.Matrix(
        [[sympy.Rational(Fraction(c).numerator, Fraction(c).denominator) for c in row] for row in m]
    )


@given(int_matrices)
@settings(max_examples=80, deadline=None)
def test_determinant_matches_sympy(m):
    assert determinant([row[:] for row in m]) == to_sympy(m).det()


def test_determinant_of_empty_matrix_is_one():
    assert determinant([]) == 1


@given(frac_matrices)
@settings(max_examples=40, deadline=None)
def test_solve_matches_sympy(m):
    n = len(m)
    col = [Fraction(i + 1) for i in range(n)]
    sm = to_sympy(m)
    if sm.det() == 0:
        with pytest.raises(ValueError):
            solve_exact([row[:] for row in m], [col[:]])
        return
    got = solve_exact([row[:] for row in m], [col[:]])
    want = sm.solve(sympy.Matrix([[sympy.Rational(i + 1)] for i in range(n)]))
    for i in range(n):
        assert sympy.Rational(got[0][i].numerator, got[0][i].denominator) == want[i]


@given(int_matrices)
@settings(max_examples=60, deadline=None)
def test_negative_definiteness_matches_sympy(m):
    n = len(m)
    sym = [[m[i][j] + m[j][i] for j in range(n)] for i in range(n)]
    got = is_negative_definite([row[:] for row in sym])
    want = (-to_sympy(sym)).is_positive_definite
    assert got == want


def test_leading_minors_known():
    # A_3 chain intersection matrix
    m = [[-2, 1, 0], [1, -2, 1], [0, 1, -2]]
    assert leading_principal_minors(m) == [-2, 3, -4]
    assert is_negative_definite(m)


def test_not_negative_definite_cases():
    assert not is_negative_definite([[-1, 2], [2, -1]])
    assert not is_negative_definite([[0]])
    assert is_negative_definite([])
    with pytest.raises(ValueError):
        is_negative_definite([[-1, 1], [0, -1]])


@given(frac_matrices)
@settings(max_examples=40, deadline=None)
def test_rref_is_idempotent_and_certifies_membership(m):
    reduced = rref([row[:] for row in m])
    assert rref([row[:] for row in reduced]) == reduced
    pivots = pivot_columns(reduced)
    assert len(pivots) == len(reduced)
    # every original row lies in the row space and reconstructs exactly
    for row in m:
        coords = row_space_coordinates(reduced, row[:])
        assert coords is not None
        rebuilt = [Fraction(0)] * len(row)
        for c, rrow in zip(coords, reduced):
            for j, v in enumerate(rrow):
                rebuilt[j] += c * v
        assert rebuilt == [Fraction(x) for x in row]


def test_row_space_coordinates_outside():
    reduced = rref([[Fraction(1), Fraction(0)]])
    assert row_space_coordinates(reduced, [Fraction(0), Fraction(1)]) is None


def test_solve_multiple_columns():
    m = [[Fraction(2), Fraction(0)], [Fraction(0), Fraction(4)]]
    cols = [[Fraction(1), Fraction(0)], [Fraction(0), Fraction(1)]]
    got = solve_exact(m, cols)
    assert got == [[Fraction(1, 2), Fraction(0)], [Fraction(0), Fraction(1, 4)]]
