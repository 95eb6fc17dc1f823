"""Shared fixtures and brute-force oracles.

The oracles use plain integers / Fractions and never call the library's
elimination or enumeration code, so agreement is evidence, not tautology.
"""

import itertools
from collections import Counter
from fractions import Fraction as Fr

import pytest

from trirep.code import LinearCode
from trirep.field import FieldSpec

GF2, GF3, GF5, Q = FieldSpec.gf(2), FieldSpec.gf(3), FieldSpec.gf(5), FieldSpec.rationals()

# (name, field, length, basis) used by the representation and acceptance tests
FINITE_TOY_CODES = [
    ("gf2-a", GF2, 3, [(1, 1, 0), (0, 1, 1)]),
    ("gf2-b", GF2, 6, [(1, 0, 0, 1, 1, 0), (0, 1, 0, 1, 0, 1), (0, 0, 1, 0, 1, 1)]),
    ("gf3-a", GF3, 2, [(1, 2)]),
    ("gf3-b", GF3, 4, [(1, 0, 1, 2), (0, 1, 2, 2)]),
    ("gf5-a", GF5, 4, [(1, 2, 3, 4)]),
    ("gf5-b", GF5, 5, [(1, 0, 2, 4, 3), (0, 1, 3, 0, 4)]),
    ("gf5-c", GF5, 5, [(1, 0, 0, 2, 3), (0, 1, 0, 3, 1), (0, 0, 1, 1, 4)]),
]
RATIONAL_TOY_CODES = [
    ("q-a", Q, 3, [(Fr(1, 2), Fr(1, 3), 0), (0, 1, -1)]),
    ("q-b", Q, 4, [(2, -4, 6, 0)]),
]


def make_code(field, n, basis):
    return LinearCode(field, n, tuple(tuple(b) for b in basis))


# -- oracles ------------------------------------------------------------------

def span_mod_p(p, basis, n):
    """Every vector of the span over GF(p), by direct coefficient sums."""
    out = set()
    for coeffs in itertools.product(range(p), repeat=len(basis)):
        v = [0] * n
        for a, b in zip(coeffs, basis):
            for i in range(n):
                v[i] = (v[i] + a * int(b[i])) % p
        out.add(tuple(v))
    return out


def span_with_degree(p, basis, n):
    """(vector, number of nonzero coefficients) for every coefficient choice."""
    for coeffs in itertools.product(range(p), repeat=len(basis)):
        v = [0] * n
        for a, b in zip(coeffs, basis):
            for i in range(n):
                v[i] = (v[i] + a * int(b[i])) % p
        yield tuple(v), sum(1 for a in coeffs if a)


def wt(v):
    return sum(1 for x in v if x)


def brute_weight_counts(p, basis, n):
    return Counter(wt(v) for v in span_mod_p(p, basis, n))


def brute_multivariate_counts(p, basis, n, lam, k):
    out = Counter()
    for v in span_mod_p(p, basis, n):
        ex = [0] * k
        for x, j in zip(v, lam):
            if x:
                ex[j - 1] += 1
        out[tuple(ex)] += 1
    return out


def brute_minimal(vectors):
    """Nonzero vectors whose support strictly contains no other nonzero support."""
    sups = {v: frozenset(i for i, x in enumerate(v) if x) for v in vectors if any(v)}
    return {v for v, s in sups.items() if not any(t < s for t in sups.values())}


def incidence_ok(triangles, values, modulus=None):
    """A.v = 0 computed straight from the triangle list."""
    acc = {}
    for t, x in zip(triangles, values):
        a, b, c = t
        for e in ((a, b), (a, c), (b, c)):
            acc[e] = acc.get(e, 0) + x
    if modulus is None:
        return all(v == 0 for v in acc.values())
    return all(v % modulus == 0 for v in acc.values())


def dense_rank(rows, modulus=None):
    """Rank by forward elimination over GF(modulus) or Q (modulus None).

    Rows are kept as {column: value} dicts; pivot rows are left unreduced.
    """
    def norm(x):
        return Fr(x) if modulus is None else x % modulus

    pivots = {}  # column -> row whose leading column it is
    for r in rows:
        row = {j: norm(x) for j, x in enumerate(r) if norm(x) != 0}
        while row:
            lead = min(row)
            if lead not in pivots:
                pivots[lead] = row
                break
            prow = pivots[lead]
            if modulus is None:
                f = row[lead] / prow[lead]
            else:
                f = row[lead] * pow(prow[lead], modulus - 2, modulus) % modulus
            for j, x in prow.items():
                y = row.get(j, 0) - f * x
                if modulus is not None:
                    y %= modulus
                if y == 0:
                    row.pop(j, None)
                else:
                    row[j] = y
    return len(pivots)


def kernel_dim_oracle(cfg, modulus=None):
    T = cfg.sorted_triangles
    edges = sorted({e for t in T for e in ((t[0], t[1]), (t[0], t[2]), (t[1], t[2]))})
    col = {e: i for i, e in enumerate(edges)}
    rows = [[0] * len(T) for _ in edges]
    for j, t in enumerate(T):
        for e in ((t[0], t[1]), (t[0], t[2]), (t[1], t[2])):
            rows[col[e]][j] = 1
    return len(T) - dense_rank(rows, modulus)


# -- fixtures -----------------------------------------------------------------

_rep_cache = {}


@pytest.fixture(scope="session")
def rep_of():
    """Memoised build_representation keyed by toy code name."""
    from trirep.representation import build_representation

    def get(name, field, n, basis, systematic=True):
        key = (name, systematic)
        if key not in _rep_cache:
            _rep_cache[key] = build_representation(make_code(field, n, basis), systematic=systematic)
        return _rep_cache[key]
    return get


# -- acceptance summary -------------------------------------------------------

_acceptance = {}


def pytest_runtest_logreport(report):
    if "test_acceptance.py::test_criterion_" not in report.nodeid:
        return
    name = report.nodeid.split("::")[-1]
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        _acceptance[name] = "PASS" if report.passed else "FAIL"


def pytest_terminal_summary(terminalreporter):
    if not _acceptance:
        return
    merged = {}  # criterion number -> (short name, all passed)
    for name, verdict in _acceptance.items():
        num = int(name.split("_")[2])
        short = name[len("test_criterion_00_"):].split("[")[0]
        ok = merged.get(num, (short, True))[1] and verdict == "PASS"
        merged[num] = (short, ok)
    terminalreporter.section("acceptance criteria")
    for num in sorted(merged):
        short, ok = merged[num]
        terminalreporter.write_line(f"criterion {num:2d} {short}: {'PASS' if ok else 'FAIL'}")
