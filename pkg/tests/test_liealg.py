import random
from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st

from nilsasaki.catalog import catalog, l5
from nilsasaki.exactlin import RationalMatrix, rank
from nilsasaki.liealg import (
    HeisenbergObstruction,
    HeisenbergWitness,
    JacobiError,
    LieAlgebra,
    Subspace,
    abelian,
    center,
    check_jacobi,
    conjugate,
    derived,
    direct_sum,
    heisenberg,
    is_nilpotent,
    lower_central_series,
    random_invertible,
    recognize_heisenberg,
    standard_symplectic,
    symplectic_basis,
)

from .oracles import heisenberg_structure, matrix_commutator_structure, structure_of


def span(*vectors, n):
    return Subspace.span(vectors, n)


def test_jacobi_violation_is_reported():
    brackets = {(0, 1): {0: 1}, (0, 2): {2: 1}}
    with pytest.raises(JacobiError):
        LieAlgebra(3, brackets)
    v = check_jacobi(LieAlgebra(3, brackets, check=False))
    # [[e1,e2],e3] + [[e2,e3],e1] + [[e3,e1],e2] = [e1,e3] = e3
    assert (v.i, v.j, v.k) == (0, 1, 2)
    assert v.residual == (0, 0, 1)


def test_bracket_input_validation():
    with pytest.raises(ValueError):
        LieAlgebra(2, {(0, 0): {1: 1}})
    with pytest.raises(IndexError):
        LieAlgebra(2, {(0, 2): {1: 1}})
    L = LieAlgebra(3, {(1, 0): {2: 1}})
    assert L.bracket_basis(0, 1) == (0, 0, -1)


def test_every_catalog_algebra_satisfies_jacobi():
    for L in catalog().values():
        assert check_jacobi(L) is None


def test_lower_central_series_examples():
    assert [S.dim for S in lower_central_series(abelian(3))] == [3, 0]
    assert [S.dim for S in lower_central_series(heisenberg(2))] == [5, 1, 0]
    assert [S.dim for S in lower_central_series(l5())] == [5, 2, 1, 0]
    assert is_nilpotent(abelian(3)) == (True, 1)
    assert is_nilpotent(heisenberg(1)) == (True, 2)
    assert is_nilpotent(l5()) == (True, 3)
    assert is_nilpotent(catalog()["r3"]) == (False, None)


def test_center_and_derived_examples():
    assert center(heisenberg(1)) == span((0, 0, 1), n=3)
    assert derived(heisenberg(1)) == span((0, 0, 1), n=3)
    assert center(l5()) == span((0, 0, 0, 1, 0), (0, 0, 0, 0, 1), n=5)
    assert derived(l5()) == span((0, 0, 1, 0, 0), (0, 0, 0, 1, 0), n=5)
    assert center(abelian(4)).dim == 4


@pytest.mark.parametrize("m", [1, 2, 3, 4])
def test_heisenberg_matches_matrix_commutators(m):
    assert structure_of(heisenberg(m)) == matrix_commutator_structure(m)
    assert structure_of(heisenberg(m)) == heisenberg_structure(m)


def test_heisenberg_rejects_m_zero():
    with pytest.raises(ValueError):
        heisenberg(0)


def test_direct_sum_brackets():
    S = direct_sum(heisenberg(1), heisenberg(1))
    assert S.bracket_basis(0, 1) == (0, 0, 1, 0, 0, 0)
    assert S.bracket_basis(3, 4) == (0, 0, 0, 0, 0, 1)
    assert S.bracket_basis(0, 3) == (0,) * 6


def test_symplectic_basis_examples():
    B = RationalMatrix.from_rows([[0, 2], [-2, 0]])
    P = symplectic_basis(B)
    assert P.tolist() == [[1, 0], [0, F(1, 2)]]
    assert P.T @ B @ P == standard_symplectic(1)
    with pytest.raises(ValueError):
        symplectic_basis(RationalMatrix.from_rows([[0, 1], [1, 0]]))
    with pytest.raises(ValueError):
        symplectic_basis(RationalMatrix.zeros(2, 2))


@st.composite
def nondegenerate_skew(draw):
    m = draw(st.integers(1, 3))
    n = 2 * m
    rows = [[F(0)] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            c = F(draw(st.integers(-4, 4)), draw(st.integers(1, 3)))
            rows[i][j], rows[j][i] = c, -c
    B = RationalMatrix.from_rows(rows, n)
    if rank(B) != n:
        return None
    return B


@settings(max_examples=60, deadline=None)
@given(nondegenerate_skew())
def test_symplectic_basis_normalizes_random_forms(B):
    if B is None:
        return
    P = symplectic_basis(B)
    assert P.T @ B @ P == standard_symplectic(B.rows // 2)


@pytest.mark.parametrize("m", [1, 2, 3, 4])
def test_recognize_standard_heisenberg_gives_identity(m):
    w = recognize_heisenberg(heisenberg(m))
    assert isinstance(w, HeisenbergWitness)
    assert w.basis_change == RationalMatrix.identity(2 * m + 1)
    assert w.verify(heisenberg(m))


@settings(max_examples=30, deadline=None)
@given(st.integers(1, 3), st.integers(0, 10**6))
def test_recognize_survives_random_basis_changes(m, seed):
    P = random_invertible(2 * m + 1, random.Random(seed))
    L = conjugate(heisenberg(m), P)
    w = recognize_heisenberg(L)
    assert isinstance(w, HeisenbergWitness) and w.verify(L)


@pytest.mark.parametrize(
    "name, obstruction",
    [("h11_a2", "center-dim"), ("h12_a2", "center-dim"), ("n5_2step", "center-dim"),
     ("L5", "center-dim"), ("a5", "center-dim")],
)
def test_recognize_obstructions(name, obstruction):
    result = recognize_heisenberg(catalog()[name])
    assert isinstance(result, HeisenbergObstruction)
    assert result.name == obstruction


def test_recognize_not_two_step():
    # centre is one-dimensional but the derived algebra is larger
    result = recognize_heisenberg(catalog()["n5_filiform2"])
    assert isinstance(result, HeisenbergObstruction)
    assert result.name == "not-2-step"


def test_recognize_rejects_bad_input():
    with pytest.raises(ValueError):
        recognize_heisenberg(abelian(4))
    with pytest.raises(ValueError):
        recognize_heisenberg(catalog()["r3"])


def test_change_basis_round_trip():
    rng = random.Random(7)
    L = catalog()["L5"]
    P = random_invertible(5, rng)
    from nilsasaki.exactlin import inverse

    assert L.change_basis(P).change_basis(inverse(P)) == L
