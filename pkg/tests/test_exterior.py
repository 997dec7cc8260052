from fractions import Fraction as F

from hypothesis import given, settings, strategies as st

from nilsasaki.exterior import (
    ExteriorElement,
    format_element,
    interior,
    merge_sign,
    two_form_matrix,
    wedge,
)

from .oracles import perm_sign

N = 5


def gen(i, n=N):
    return ExteriorElement.generator(n, i)


@st.composite
def elements(draw, n=N, max_terms=4):
    monos = draw(st.lists(st.sets(st.integers(0, n - 1), max_size=n), max_size=max_terms))
    coeffs = draw(st.lists(st.integers(-3, 3), min_size=len(monos), max_size=len(monos)))
    terms = {}
    for S, c in zip(monos, coeffs):
        key = tuple(sorted(S))
        terms[key] = terms.get(key, 0) + c
    return ExteriorElement(n, terms)


@st.composite
def homogeneous(draw, n=N):
    p = draw(st.integers(0, n))
    x = draw(elements(n))
    return p, x.degree_part(p)


def test_merge_sign_matches_permutation_sign():
    for S, T in [((0,), (1,)), ((1,), (0,)), ((0, 2), (1,)), ((1, 3), (0, 2))]:
        assert merge_sign(S, T) == perm_sign(list(S) + list(T))


def test_generators_anticommute_and_square_to_zero():
    a, b = gen(0), gen(1)
    assert wedge(a, b) == -wedge(b, a)
    assert wedge(a, a).is_zero()
    assert wedge(b, a).coefficient((0, 1)) == -1


def test_interior_of_two_form():
    x = wedge(gen(0), gen(1))
    assert interior((1, 0, 0, 0, 0), x) == gen(1)
    assert interior((0, 1, 0, 0, 0), x) == -gen(0)
    assert two_form_matrix(x)[0][1] == 1 and two_form_matrix(x)[1][0] == -1


def test_format():
    x = ExteriorElement(N, {(0, 2): 1, (1,): F(-1, 2)})
    assert format_element(x) == "-1/2*a2 + a1^a3"


@settings(max_examples=100, deadline=None)
@given(elements(), elements(), elements())
def test_wedge_is_associative_and_bilinear(x, y, z):
    assert wedge(wedge(x, y), z) == wedge(x, wedge(y, z))
    assert wedge(x, y + z) == wedge(x, y) + wedge(x, z)


@settings(max_examples=100, deadline=None)
@given(homogeneous(), homogeneous())
def test_graded_commutativity(xp, yq):
    (p, x), (q, y) = xp, yq
    assert wedge(x, y) == (-1) ** (p * q) * wedge(y, x)


@settings(max_examples=100, deadline=None)
@given(st.lists(st.integers(-2, 2), min_size=N, max_size=N), homogeneous(), elements())
def test_interior_is_an_antiderivation(v, xp, y):
    p, x = xp
    lhs = interior(v, wedge(x, y))
    rhs = wedge(interior(v, x), y) + (-1) ** p * wedge(x, interior(v, y))
    assert lhs == rhs
