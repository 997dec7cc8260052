import random
from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st

from nilsasaki.catalog import catalog, l5, nilpotent_catalog
from nilsasaki.cdga import cohomology
from nilsasaki.cechain import (
    NotNilpotentError,
    adapted_basis,
    ce_d,
    chevalley_eilenberg,
    closed_flag,
    first_betti,
)
from nilsasaki.exterior import ExteriorElement, wedge
from nilsasaki.liealg import abelian, conjugate, heisenberg, random_invertible

from .oracles import naive_betti, structure_of


def a(L, i):
    return ExteriorElement.generator(L.dim, i)


def test_ce_differential_examples():
    H = heisenberg(1)
    assert ce_d(H, a(H, 0)).is_zero()
    assert ce_d(H, a(H, 2)) == -wedge(a(H, 0), a(H, 1))
    L = l5()
    assert ce_d(L, a(L, 3)) == -wedge(a(L, 0), a(L, 2))
    A = abelian(3)
    assert all(ce_d(A, a(A, i)).is_zero() for i in range(3))


def test_known_betti_numbers():
    assert chevalley_eilenberg(abelian(3)).betti() == [1, 3, 3, 1]
    assert chevalley_eilenberg(heisenberg(1)).betti() == [1, 2, 2, 1]
    assert chevalley_eilenberg(heisenberg(2)).betti() == [1, 4, 5, 5, 4, 1]
    assert chevalley_eilenberg(l5()).betti()[1] == 3
    assert first_betti(heisenberg(3)) == 6


@pytest.mark.filterwarnings("ignore:.*not nilpotent")
@pytest.mark.parametrize("name", sorted(k for k, L in catalog().items() if L.dim <= 7))
def test_betti_matches_naive_oracle(name):
    L = catalog()[name]
    ours = [h.betti for h in cohomology(chevalley_eilenberg(L))]
    assert ours == naive_betti(structure_of(L), L.dim)


@pytest.mark.parametrize("name", sorted(nilpotent_catalog(9)))
def test_poincare_duality_and_euler_characteristic(name):
    L = catalog()[name]
    b = chevalley_eilenberg(L).betti()
    n = L.dim
    assert b == b[::-1]
    assert b[n] == 1
    assert sum((-1) ** p * x for p, x in enumerate(b)) == 0


def test_top_class_is_the_volume_form():
    L = l5()
    top = cohomology(chevalley_eilenberg(L))[L.dim]
    assert top.betti == 1
    assert top.representatives == ((1,),)


def test_d_squared_vanishes_on_random_forms():
    rng = random.Random(3)
    L = conjugate(l5(), random_invertible(5, rng))
    for _ in range(20):
        coeffs = {tuple(sorted(rng.sample(range(5), rng.randint(0, 4)))): rng.randint(-3, 3) for _ in range(4)}
        x = ExteriorElement(5, coeffs)
        assert ce_d(L, ce_d(L, x)).is_zero()


def test_adapted_basis_heisenberg():
    B = adapted_basis(heisenberg(1))
    assert B.k == 3
    assert B.gamma == {(2, 0, 1): 1}
    assert B.violations(heisenberg(1), 2) == []


def test_adapted_basis_l5():
    B = adapted_basis(l5())
    # closed forms a1, a2, a5 first, then a3, a4
    assert B.k == 4
    assert [f.index(1) for f in B.forms] == [0, 1, 4, 2, 3]
    assert B.gamma == {(3, 0, 1): 1, (4, 0, 3): 1}
    assert B.flag_dims == (3, 4, 5)


@pytest.mark.parametrize("name", sorted(nilpotent_catalog(9)))
def test_adapted_basis_contract(name):
    L = catalog()[name]
    B = adapted_basis(L)
    assert B.violations(L, first_betti(L)) == []


@settings(max_examples=20, deadline=None)
@given(st.sampled_from(["h12", "L5", "n5_filiform2", "filiform6"]), st.integers(0, 10**6))
def test_adapted_basis_contract_after_basis_change(name, seed):
    L0 = catalog()[name]
    L = conjugate(L0, random_invertible(L0.dim, random.Random(seed)))
    B = adapted_basis(L)
    assert B.violations(L, first_betti(L)) == []


def test_adapted_basis_requires_nilpotent():
    with pytest.raises(NotNilpotentError):
        closed_flag(catalog()["r3"])
    with pytest.raises(NotNilpotentError):
        adapted_basis(catalog()["r3"])


def test_violations_detects_tampering():
    L = l5()
    B = adapted_basis(L)
    bad = type(B)(B.forms, B.k, {**B.gamma, (0, 1, 2): F(1)}, B.flag_dims)
    assert bad.violations(L)
