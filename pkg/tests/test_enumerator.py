import json

import pytest
from hypothesis import given, settings, strategies as st

from trirep.code import LinearCode
from trirep.complex import KernelBasis, kernel
from trirep.enumerator import (
    EnumeratorError, LaurentPolynomial as LP, extended_weight_enumerator,
    kernel_extended_weight_enumerator, kernel_multivariate_enumerator,
    kernel_weight_enumerator, multivariate_weight_enumerator, recover_code_enumerator,
    recover_multivariate, representation_assignment, weight_enumerator,
)
from trirep.field import FieldSpec
from trirep.gadgets import octahedron

from conftest import (
    FINITE_TOY_CODES, GF2, GF3, brute_multivariate_counts, brute_weight_counts, make_code,
)


def uni(d):
    return LP(1, {(k,): v for k, v in d.items()})


def test_code_enumerators():
    assert weight_enumerator(LinearCode(GF2, 3, ((1, 1, 0),))) == uni({0: 1, 2: 1})
    assert weight_enumerator(LinearCode(GF3, 2, ((1, 1),))) == uni({0: 1, 2: 2})
    assert weight_enumerator(LinearCode(GF2, 3, ())) == LP.one()


def test_kernel_enumerators():
    assert kernel_weight_enumerator(KernelBasis(GF2, (), ())) == LP.one()
    assert kernel_weight_enumerator(kernel(octahedron(), GF2)) == uni({0: 1, 8: 1})
    assert kernel_weight_enumerator(kernel(octahedron(), GF3)) == uni({0: 1, 8: 2})


def test_extended():
    c = make_code(GF2, 3, [(1, 1, 0), (0, 1, 1)])
    assert extended_weight_enumerator(c, 0) == LP.one()
    assert extended_weight_enumerator(c, 2) == uni({2: 1})
    total = extended_weight_enumerator(c, 0)
    for k in (1, 2):
        total = total + extended_weight_enumerator(c, k)
    assert total == weight_enumerator(c)


def test_recover_examples():
    e = 7
    assert recover_code_enumerator(uni({0: 1, e: 3}), e, halve=False) == uni({0: 4})
    p = uni({0: 1, 3: 2, 5: 1})
    assert recover_code_enumerator(p, 10, halve=False) == p
    with pytest.raises(EnumeratorError):
        recover_code_enumerator(uni({3: 1}), 10, halve=True)
    with pytest.raises(EnumeratorError):
        recover_code_enumerator(p, 0)


def test_recover_pipeline_gf2(rep_of):
    rep = rep_of(*FINITE_TOY_CODES[0])
    kp = kernel_weight_enumerator(rep.kernel)
    assert recover_code_enumerator(kp, rep.e) == uni({0: 1, 2: 3})


@pytest.mark.parametrize("case", FINITE_TOY_CODES[:4], ids=lambda c: c[0])
def test_shift_law_and_bands(case, rep_of):
    rep = rep_of(*case)
    n = case[2]
    code = rep.code
    for k in range(code.dimension + 1):
        wk = extended_weight_enumerator(rep.doubled, k)
        kk = kernel_extended_weight_enumerator(rep, k)
        assert kk == wk * LP.monomial((k * rep.e,))
        for (i,) in kk.terms:
            assert k * rep.e <= i <= k * rep.e + 2 * n


def test_multivariate_small():
    c = LinearCode(GF2, 2, ((1, 1),))
    assert multivariate_weight_enumerator(c, [1, 2]) == LP(2, {(0, 0): 1, (1, 1): 1})
    c3 = make_code(GF3, 4, [(1, 0, 1, 2), (0, 1, 2, 2)])
    assert multivariate_weight_enumerator(c3, [1, 1, 1, 1], 1) == weight_enumerator(c3)
    with pytest.raises(EnumeratorError):
        multivariate_weight_enumerator(c, [1])
    with pytest.raises(EnumeratorError):
        multivariate_weight_enumerator(c, [1, 3], 2)


def test_multivariate_pipeline_matches_brute_force(rep_of):
    case = FINITE_TOY_CODES[3]
    rep = rep_of(*case)
    _, _, n, basis = case
    lam, k = [1, 2, 3, 1], 3
    assign = representation_assignment(rep, lam, k)
    kp = kernel_multivariate_enumerator(rep.kernel, assign, k)
    got = recover_multivariate(kp, rep.e, reserved=k)
    want = LP(k, brute_multivariate_counts(3, basis, n, lam, k).items())
    assert got == want
    assert got.marginal() == LP(1, brute_weight_counts(3, basis, n).items())


def test_kernel_multivariate_requires_total_assignment(rep_of):
    rep = rep_of(*FINITE_TOY_CODES[0])
    assign = representation_assignment(rep, [1, 1, 2], 2)
    assign.pop(rep.triangles[0])
    with pytest.raises(EnumeratorError):
        kernel_multivariate_enumerator(rep.kernel, assign, 2)


def test_polynomial_json_and_str():
    p = LP(2, {(1, 0): 3, (0, -2): 1, (0, 0): 0})
    data = p.to_json()
    assert data == {"vars": 2, "terms": [{"exps": [0, -2], "coeff": 1},
                                         {"exps": [1, 0], "coeff": 3}]}
    assert LP.from_json(json.loads(json.dumps(data))) == p
    assert uni({0: 1}).to_json() == {"vars": 1, "terms": [{"exps": [0], "coeff": 1}]}
    assert str(uni({3: 3, 1: 18, 0: 6})) == "3x^3 + 18x + 6"
    assert str(p) == "3*x1 + x2^-2"
    assert str(LP(1)) == "0"
    with pytest.raises(EnumeratorError):
        LP.from_json({"terms": []})


def test_polynomial_arithmetic():
    x = LP.monomial((1,))
    assert (x + LP.one()) * (x - LP.one()) == uni({2: 1, 0: -1})
    assert (2 * x).evaluate(3) == 6
    assert LP.monomial((-1,)).evaluate(2) == 0.5
    assert LP(2, {(1, 2): 1}).substitute([-1, 3]) == uni({5: 1})


@st.composite
def small_codes(draw):
    p = draw(st.sampled_from([2, 3, 5]))
    n = draw(st.integers(1, 5))
    vecs = [tuple(draw(st.integers(0, p - 1)) for _ in range(n)) for _ in range(draw(st.integers(0, 3)))]
    k = draw(st.integers(1, 3))
    lam = [draw(st.integers(1, k)) for _ in range(n)]
    return p, n, vecs, lam, k


@settings(max_examples=60, deadline=None)
@given(small_codes())
def test_enumerators_match_oracle(case):
    p, n, vecs, lam, k = case
    code = LinearCode.spanned_by(FieldSpec.gf(p), n, vecs)
    w = weight_enumerator(code)
    assert w == LP(1, brute_weight_counts(p, vecs, n).items())
    assert w.evaluate(1) == p ** code.dimension
    mv = multivariate_weight_enumerator(code, lam, k)
    assert mv == LP(k, brute_multivariate_counts(p, vecs, n, lam, k).items())
    assert mv.marginal() == w
