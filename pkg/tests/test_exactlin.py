from fractions import Fraction as F

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from nilsasaki.exactlin import (
    DimensionMismatch,
    RationalMatrix,
    complement_basis,
    determinant,
    inverse,
    kernel_basis,
    matvec,
    rank,
    rref,
    solve,
)

fractions = st.builds(F, st.integers(-6, 6), st.integers(1, 4))


@st.composite
def matrices(draw, max_rows=5, max_cols=5):
    r = draw(st.integers(1, max_rows))
    c = draw(st.integers(1, max_cols))
    rows = draw(st.lists(st.lists(fractions, min_size=c, max_size=c), min_size=r, max_size=r))
    return RationalMatrix.from_rows(rows, c)


def to_sympy(M):
    return sympy.Matrix([[sympy.Rational(x.numerator, x.denominator) for x in row] for row in M.entries])


def test_rref_identity():
    R, pivots, r = rref(RationalMatrix.identity(2))
    assert R == RationalMatrix.identity(2)
    assert pivots == [0, 1] and r == 2


def test_rref_dependent_rows():
    R, pivots, r = rref(RationalMatrix.from_rows([[1, 2], [2, 4]]))
    assert r == 1 and pivots == [0]
    assert R.row(0) == (1, 2) and R.row(1) == (0, 0)


def test_rref_three_by_two():
    # by hand: swap, subtract, scale -> [[1,0],[0,1],[0,0]]
    R, pivots, r = rref(RationalMatrix.from_rows([[0, 1], [1, 0], [1, 1]]))
    assert r == 2 and pivots == [0, 1]
    assert R.tolist() == [[1, 0], [0, 1], [0, 0]]


def test_kernel_examples():
    assert kernel_basis(RationalMatrix.identity(3)) == []
    zero = RationalMatrix.zeros(2, 3)
    assert kernel_basis(zero) == [(1, 0, 0), (0, 1, 0), (0, 0, 1)]
    M = RationalMatrix.from_rows([[1, 1, 0]])
    K = kernel_basis(M)
    assert len(K) == 2
    assert all(matvec(M, v) == (0,) for v in K)
    assert rank(RationalMatrix.from_rows(K)) == 2


def test_solve_examples():
    assert solve(RationalMatrix.identity(2), [3, F(-1, 2)]) == (3, F(-1, 2))
    assert solve(RationalMatrix.from_rows([[1, 1]]), [5]) == (5, 0)
    assert solve(RationalMatrix.from_rows([[1], [1]]), [0, 1]) is None
    with pytest.raises(DimensionMismatch):
        solve(RationalMatrix.identity(2), [1])


def test_complement_examples():
    assert complement_basis([(1, 0)], 2) == [(0, 1)]
    assert complement_basis([], 3) == [(1, 0, 0), (0, 1, 0), (0, 0, 1)]
    W = [(1, 1)]
    C = complement_basis(W, 2)
    assert C == [(1, 0)]
    assert determinant(RationalMatrix.from_rows(W + C)) != 0
    with pytest.raises(ValueError):
        complement_basis([(1, 1), (2, 2)], 2)
    with pytest.raises(DimensionMismatch):
        complement_basis([(1, 1, 0)], 2)


def test_floats_are_rejected():
    with pytest.raises(TypeError):
        RationalMatrix.from_rows([[0.5]])


@settings(max_examples=80, deadline=None)
@given(matrices())
def test_rref_matches_sympy(M):
    R, pivots, r = rref(M)
    R_ref, piv_ref = to_sympy(M).rref()
    assert list(piv_ref) == pivots
    assert to_sympy(R) == R_ref
    assert r == len(piv_ref)


@settings(max_examples=80, deadline=None)
@given(matrices())
def test_rank_nullity_and_idempotence(M):
    R, _, r = rref(M)
    K = kernel_basis(M)
    assert r + len(K) == M.cols
    assert all(not any(matvec(M, v)) for v in K)
    assert rref(R)[0] == R


@settings(max_examples=60, deadline=None)
@given(matrices(), st.data())
def test_solve_is_exact(M, data):
    x0 = data.draw(st.lists(fractions, min_size=M.cols, max_size=M.cols))
    b = matvec(M, x0)
    x = solve(M, b)
    assert x is not None and matvec(M, x) == b
    assert solve(M, b) == x  # deterministic


@settings(max_examples=60, deadline=None)
@given(matrices(max_rows=4, max_cols=4))
def test_determinant_and_inverse_match_sympy(M):
    if M.rows != M.cols:
        return
    det = determinant(M)
    assert det == to_sympy(M).det()
    if det:
        assert inverse(M) @ M == RationalMatrix.identity(M.rows)
    else:
        with pytest.raises(ValueError):
            inverse(M)


@settings(max_examples=60, deadline=None)
@given(matrices(max_rows=4, max_cols=5))
def test_complement_extends_to_basis(M):
    R, _, r = rref(M)
    W = [R.row(i) for i in range(r)]
    C = complement_basis(W, M.cols)
    assert len(W) + len(C) == M.cols
    assert rank(RationalMatrix.from_rows(W + C, M.cols)) == M.cols
