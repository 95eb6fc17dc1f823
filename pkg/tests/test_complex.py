import itertools

import pytest
from hypothesis import given, settings, strategies as st

from trirep.complex import (
    ComplexError, TriangularConfiguration, difference, edge_degree, empty_triangles,
    incidence_matrix, in_kernel, kernel, relabel, restricted_kernel, union,
)
from trirep.gadgets import build_Bn, build_tunnel, octahedron

from conftest import GF2, GF3, GF5, Q, incidence_ok, kernel_dim_oracle

TC = TriangularConfiguration


def test_union_and_difference():
    d = TC.build([("a", "b", "c")])
    assert union(d, d) == d
    two = union(TC.build([("a", "b", "c")]), TC.build([("d", "e", "f")]))
    assert (len(two.triangles), len(two.edges), len(two.vertices)) == (2, 6, 6)
    share = TC.build([("a", "b", "c"), ("a", "b", "d")])
    assert (len(share.triangles), len(share.edges), len(share.vertices)) == (2, 5, 4)
    assert difference(d, d) == TC.empty()
    padded = TC.build([("a", "b", "c")], edges=[("c", "x")])
    assert difference(padded, TC.empty()) == d
    one = difference(share, TC.build([("a", "b", "d")]))
    assert one == d


def test_incidence_shapes():
    assert incidence_matrix(TC.build([("a", "b", "c")]), GF2).to_dense() == [[1], [1], [1]]
    bn, _ = build_Bn(2)
    A = incidence_matrix(bn, GF3)
    assert A.shape == (6, 2)
    assert sorted(map(tuple, A.to_dense())) == [(0, 1)] * 3 + [(1, 0)] * 3
    assert incidence_matrix(TC.build(edges=[("a", "b")]), GF2).shape == (1, 0)


def test_small_kernels():
    assert kernel(TC.build([("a", "b", "c")]), GF5).dimension == 0
    for n in (1, 3, 5):
        assert kernel(build_Bn(n)[0], GF5).dimension == 0


@pytest.mark.parametrize("F", [GF2, GF3, GF5, Q])
def test_octahedron_kernel(F):
    oct_ = octahedron()
    K = kernel(oct_, F)
    assert K.dimension == 1
    v = K.as_dict(0)
    a = v[oct_.plus[0]]
    assert all(v[t] == a for t in oct_.plus)
    assert all(v[t] == F.neg(a) for t in oct_.minus)


def test_degrees_and_empty_triangles():
    oct_ = octahedron()
    assert all(edge_degree(oct_, e) == 2 for e in oct_.base.edges)
    assert edge_degree(TC.build([("a", "b", "c")]), ("a", "b")) == 1
    tg = build_tunnel()
    assert set(empty_triangles(tg.complex)) == {tg.positive_end, tg.negative_end}


def test_restricted_kernel_extremes():
    oct_ = octahedron()
    assert restricted_kernel(oct_, oct_.base.edges, GF3).dimension == 1
    assert restricted_kernel(oct_, [], GF3).dimension == 8


def test_unknown_edge():
    with pytest.raises(ComplexError):
        TC.build([("a", "b", "c")]).triangles_at(("a", "z"))
    with pytest.raises(ComplexError):
        TC.build([("a", "a", "c")])


# random complexes on few vertices: solver agrees with the dense-rank oracle
@st.composite
def random_complexes(draw):
    nv = draw(st.integers(3, 7))
    allt = list(itertools.combinations([f"v{i}" for i in range(nv)], 3))
    ts = draw(st.lists(st.sampled_from(allt), unique=True, max_size=12))
    return TC.build(ts)


@settings(max_examples=80, deadline=None)
@given(random_complexes(), st.sampled_from([2, 3, 5, None]))
def test_kernel_matches_oracle(cfg, p):
    F = Q if p is None else {2: GF2, 3: GF3, 5: GF5}[p]
    K = kernel(cfg, F)
    assert K.dimension == kernel_dim_oracle(cfg, p)
    for v in K.vectors:
        assert incidence_ok(K.triangles, v, p)


@settings(max_examples=40, deadline=None)
@given(random_complexes(), st.randoms(use_true_random=False))
def test_relabel_invariance(cfg, rnd):
    names = sorted(cfg.vertices)
    perm = names[:]
    rnd.shuffle(perm)
    mapping = {a: "w" + b for a, b in zip(names, perm)}
    assert kernel(relabel(cfg, mapping), GF3).dimension == kernel(cfg, GF3).dimension


def test_octahedron_kernel_brute_force():
    # all 3^8 vectors: exactly the 3 multiples of the alternating vector
    oct_ = octahedron()
    T = oct_.base.sorted_triangles
    sols = [v for v in itertools.product(range(3), repeat=8) if incidence_ok(T, v, 3)]
    assert len(sols) == 3
    vals = {t: x for t, x in zip(T, sols[1])}
    assert in_kernel(oct_, GF3, vals)
