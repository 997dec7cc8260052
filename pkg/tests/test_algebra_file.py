import json
import random
from fractions import Fraction as F
from pathlib import Path

import pytest
from hypothesis import given, settings, strategies as st

from nilsasaki.algebra_file import AlgebraFileError, parse_algebra, print_algebra
from nilsasaki.catalog import catalog, l5, twisted_heisenberg
from nilsasaki.liealg import LieAlgebra, conjugate, heisenberg, random_invertible

CORPUS = Path(__file__).parent / "corpus"
EXPECTED = json.loads((CORPUS / "expected.json").read_text())


def test_corpus_is_complete():
    files = {p.name for p in CORPUS.glob("*.lie")}
    assert files == set(EXPECTED)
    assert len(files) >= 20
    kinds = {e.get("error") for e in EXPECTED.values()}
    assert {"lexical", "syntax", "semantic", "jacobi", None} <= kinds


@pytest.mark.parametrize("name", sorted(EXPECTED))
def test_corpus_file(name):
    text = (CORPUS / name).read_text()
    expected = EXPECTED[name]
    if "error" in expected:
        with pytest.raises(AlgebraFileError) as info:
            parse_algebra(text)
        err = info.value
        assert (err.kind, err.line, err.column) == (expected["error"], expected["line"], expected["column"])
        assert str(err).startswith(f"{err.line}:{err.column}: {err.kind} error")
    else:
        L = parse_algebra(text)
        assert (L.name, L.dim) == (expected["name"], expected["dim"])


def test_parsed_files_match_constructed_algebras():
    read = lambda n: parse_algebra((CORPUS / n).read_text())
    assert read("ok_h11.lie") == heisenberg(1)
    assert read("ok_h12_comments.lie") == LieAlgebra(5, {(0, 1): {4: 1}, (2, 3): {4: 1}})
    assert read("ok_l5.lie") == l5()
    assert read("ok_twisted.lie") == twisted_heisenberg()
    assert read("ok_reversed_pair.lie").bracket_basis(0, 1) == (0, 0, -1)
    frac = read("ok_fractions.lie")
    assert frac.bracket_basis(0, 2) == (0, 0, 0, 0, F(1, 2))
    assert frac.bracket_basis(1, 3) == (0, 0, 0, 0, F(-3, 4))


def test_print_format():
    assert print_algebra(heisenberg(1), "h11") == "algebra h11\ndim 3\n[e1,e2] = e3\n"
    L = LieAlgebra(3, {(0, 1): {2: F(-1, 2)}})
    assert print_algebra(L, "x").splitlines()[-1] == "[e1,e2] = -1/2 e3"


@pytest.mark.parametrize("name", sorted(catalog()))
def test_round_trip_catalog(name):
    L = catalog()[name]
    assert parse_algebra(print_algebra(L)) == L


@settings(max_examples=30, deadline=None)
@given(st.sampled_from(["h11", "h12", "L5", "n5_filiform2"]), st.integers(0, 10**6))
def test_round_trip_after_basis_change(name, seed):
    L0 = catalog()[name]
    L = conjugate(L0, random_invertible(L0.dim, random.Random(seed)))
    assert parse_algebra(print_algebra(L)) == L
