from fractions import Fraction as Fr

import pytest
from hypothesis import given, settings, strategies as st

from trirep.code import (
    BudgetExceeded, CodeError, LinearCode, degree, double_code, enumerate_codewords,
    is_representable_basis, minimal_codewords, puncture, systematic_form, weight,
)
from trirep.enumerator import weight_enumerator
from trirep.field import FieldSpec
from trirep.linalg import express, rank

from conftest import GF2, GF3, GF5, Q, brute_minimal, dense_rank, span_mod_p


def test_weight():
    assert weight((1, 0, 2, 0)) == 2
    assert weight((0, 0)) == 0
    assert weight((Fr(1, 2), Fr(-1, 2))) == 2


def test_enumerate_small():
    c = LinearCode(GF2, 3, ((1, 1, 0),))
    assert {w.coords for w in enumerate_codewords(c)} == {(0, 0, 0), (1, 1, 0)}
    full = LinearCode(GF3, 2, ((1, 0), (0, 1)))
    assert len(list(enumerate_codewords(full))) == 9


def test_enumerate_budget():
    basis = tuple(tuple(int(i == j) for j in range(30)) for i in range(30))
    with pytest.raises(BudgetExceeded):
        next(enumerate_codewords(LinearCode(GF2, 30, basis)))
    with pytest.raises(CodeError):
        next(enumerate_codewords(LinearCode(Q, 1, ((1,),))))


def test_puncture():
    c = LinearCode(GF3, 3, ((1, 2, 0),))
    assert puncture(c, {2}).same_code(LinearCode(GF3, 2, ((1, 2),)))
    assert puncture(c, set()).same_code(c)
    p = puncture(LinearCode(GF2, 2, ((1, 0), (0, 1))), {1})
    assert p.dimension == 1 and p.length == 1


def test_minimal_codewords():
    c = LinearCode(GF2, 3, ((1, 1, 0), (0, 0, 1)))
    assert {w.coords for w in minimal_codewords(c)} == {(1, 1, 0), (0, 0, 1)}
    c = LinearCode(GF3, 2, ((1, 1),))
    assert {w.coords for w in minimal_codewords(c)} == {(1, 1), (2, 2)}
    assert minimal_codewords(LinearCode(GF2, 3, ())) == []


def test_degree():
    c = LinearCode(GF3, 3, ((1, 0, 1), (0, 1, 1)))
    assert degree((1, 1, 2), c) == 2
    assert degree((0, 0, 0), c) == 0
    assert degree((2, 0, 2), c) == 1
    with pytest.raises(CodeError):
        degree((1, 0, 0), c)


def test_double_code():
    assert double_code(LinearCode(GF3, 2, ((1, 2),))).basis == ((1, 2, 1, 2),)
    z = double_code(LinearCode(GF2, 3, ()))
    assert z.length == 6 and z.dimension == 0
    c = LinearCode(GF2, 2, ((1, 0),))
    assert str(weight_enumerator(c)) == "x + 1"
    assert str(weight_enumerator(double_code(c))) == "x^2 + 1"


def test_representable():
    ok, w = is_representable_basis(LinearCode(GF5, 2, ((1, 3),)))
    assert ok and w.basis == ((1, 3),)
    ok, w = is_representable_basis(LinearCode(Q, 2, ((Fr(1, 2), Fr(1, 3)),)))
    assert ok and w.basis == ((3, 2),)
    assert is_representable_basis(LinearCode(Q, 2, ()))[0]


def test_dependent_basis_rejected():
    with pytest.raises(CodeError):
        LinearCode(GF2, 2, ((1, 1), (1, 1)))
    assert LinearCode.spanned_by(GF2, 2, [(1, 1), (1, 1), (0, 1)]).dimension == 2


def test_systematic_form_same_code():
    c = LinearCode(GF5, 4, ((1, 2, 3, 4), (2, 2, 0, 1)))
    s = systematic_form(c)
    assert s.same_code(c)
    assert s.basis[0][0] == 1 and s.basis[1][0] == 0


@st.composite
def small_codes(draw):
    p = draw(st.sampled_from([2, 3, 5]))
    n = draw(st.integers(1, 5))
    d = draw(st.integers(0, 3))
    vecs = [tuple(draw(st.integers(0, p - 1)) for _ in range(n)) for _ in range(d)]
    return p, n, vecs


@settings(max_examples=60, deadline=None)
@given(small_codes())
def test_span_matches_oracle(case):
    p, n, vecs = case
    code = LinearCode.spanned_by(FieldSpec.gf(p), n, vecs)
    assert code.dimension == (dense_rank(vecs, p) if vecs else 0)
    words = {w.coords for w in enumerate_codewords(code)}
    assert words == span_mod_p(p, vecs, n)
    mins = {w.coords for w in minimal_codewords(code)}
    assert mins == brute_minimal(words)


@settings(max_examples=60, deadline=None)
@given(small_codes())
def test_double_code_weight_law(case):
    p, n, vecs = case
    code = LinearCode.spanned_by(FieldSpec.gf(p), n, vecs)
    w1 = weight_enumerator(code)
    w2 = weight_enumerator(double_code(code))
    assert w2 == w1.map_exponents(lambda e: (2 * e[0],))


@settings(max_examples=60, deadline=None)
@given(st.lists(st.lists(st.integers(-3, 3), min_size=4, max_size=4), max_size=5))
def test_rank_over_q_matches_oracle(rows):
    assert rank(Q, rows) == dense_rank(rows)


def test_express():
    basis = [(1, 0, 2), (0, 1, 1)]
    assert express(GF3, basis, (2, 1, 2)) == [2, 1]
    assert express(GF3, basis, (0, 0, 1)) is None
