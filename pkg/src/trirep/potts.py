"""q-Potts partition function: direct spin sums and the cut-space route."""

from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass

from .code import DEFAULT_CODEWORD_BUDGET, BudgetExceeded, LinearCode
from .enumerator import (
    LaurentPolynomial, kernel_multivariate_enumerator, recover_multivariate,
    representation_assignment,
)
from .field import FieldSpec, is_prime
from .representation import build_representation


class GraphError(ValueError):
    pass


@dataclass(frozen=True)
class WeightedGraph:
    """Vertices 0..n-1; edges (u, v, w) with u != v, kept in input order."""

    n: int
    edges: tuple

    def __post_init__(self):
        if self.n < 1:
            raise GraphError("graph needs at least one vertex")
        out = []
        for e in self.edges:
            u, v, *rest = e
            w = int(rest[0]) if rest else 1
            u, v = int(u), int(v)
            if u == v:
                raise GraphError(f"self-loop at vertex {u}")
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise GraphError(f"edge ({u}, {v}) outside 0..{self.n - 1}")
            out.append((min(u, v), max(u, v), w))
        object.__setattr__(self, "edges", tuple(out))

    @property
    def total_weight(self) -> int:
        return sum(w for _, _, w in self.edges)

    @property
    def connected(self) -> bool:
        seen, stack = {0}, [0]
        adj = {i: [] for i in range(self.n)}
        for u, v, _ in self.edges:
            adj[u].append(v)
            adj[v].append(u)
        while stack:
            for y in adj[stack.pop()]:
                if y not in seen:
                    seen.add(y)
                    stack.append(y)
        return len(seen) == self.n

    def weight_classes(self) -> tuple[list, list]:
        """(distinct weights in order of first use, 1-based class per edge)."""
        ws = list(dict.fromkeys(w for _, _, w in self.edges))
        return ws, [ws.index(w) + 1 for _, _, w in self.edges]


def complete_graph(n: int, w: int = 1) -> WeightedGraph:
    return WeightedGraph(n, tuple((u, v, w) for u, v in itertools.combinations(range(n), 2)))


def cycle_graph(n: int, w: int = 1) -> WeightedGraph:
    return WeightedGraph(n, tuple((i, (i + 1) % n, w) for i in range(n)))


def hamiltonian(G: WeightedGraph, s) -> int:
    return sum(w for u, v, w in G.edges if s[u] == s[v])


def potts_direct(G: WeightedGraph, q: int, budget: int | None = None) -> LaurentPolynomial:
    """Sum of x^H(s) over all q^|V| spin assignments."""
    budget = DEFAULT_CODEWORD_BUDGET if budget is None else budget
    if q < 1:
        raise GraphError("q must be positive")
    if q ** G.n > budget:
        raise BudgetExceeded(f"{q}^{G.n} spin assignments exceeds budget {budget}")
    counts = Counter(hamiltonian(G, s) for s in itertools.product(range(q), repeat=G.n))
    return LaurentPolynomial.from_counter(counts)


def _cut_vector(G: WeightedGraph, F: FieldSpec, z, reverse: bool = False) -> tuple:
    # edge u -> v with u < v gets z_v - z_u
    out = []
    for u, v, _ in G.edges:
        a, b = (v, u) if reverse else (u, v)
        out.append(F.sub(F.coerce(z[b]), F.coerce(z[a])))
    return tuple(out)


def cut_space_code(G: WeightedGraph, q: int, reverse: bool = False) -> LinearCode:
    """Row space of the transposed oriented incidence matrix over GF(q)."""
    if not is_prime(q):
        raise GraphError(f"q = {q} is not prime")
    F = FieldSpec.gf(q)
    rows = []
    for x in range(G.n):
        z = [0] * G.n
        z[x] = 1
        rows.append(_cut_vector(G, F, z, reverse))
    return LinearCode.spanned_by(F, len(G.edges), rows)


def covering_counts(G: WeightedGraph, q: int) -> Counter:
    """How many spin assignments give each cut vector; q each when G is connected."""
    F = FieldSpec.gf(q)
    return Counter(_cut_vector(G, F, s) for s in itertools.product(range(q), repeat=G.n))


@dataclass
class PottsReport:
    polynomial: LaurentPolynomial
    e: int
    edges: int
    triangles: int

    @property
    def ratio(self) -> float:
        return self.e / max(self.edges, 1)


def potts_via_representation(G: WeightedGraph, q: int, budget: int | None = None,
                             report: bool = False):
    """Partition function from the kernel enumerator of the cut-space representation.

    Edges are grouped by weight into variables x_1..x_k; triangles outside the
    image of mu share the last class. After recovery x_j -> x^{-w_j}, and the
    result is multiplied by q x^{sum of weights}.
    """
    if not G.connected:
        raise GraphError("graph must be connected")
    if not G.edges:
        poly = LaurentPolynomial.monomial((0,), q)
        return PottsReport(poly, 0, 0, 0) if report else poly
    code = cut_space_code(G, q)
    ws, lam = G.weight_classes()
    k = len(ws)
    rep = build_representation(code)
    assign = representation_assignment(rep, lam, k)
    kpoly = kernel_multivariate_enumerator(rep.kernel, assign, k, budget)
    wpoly = recover_multivariate(kpoly, rep.e, reserved=k)
    poly = wpoly.substitute([-w for w in ws]) * LaurentPolynomial.monomial((G.total_weight,), q)
    if report:
        return PottsReport(poly, rep.e, len(G.edges), len(rep.triangles))
    return poly


__all__ = [
    "WeightedGraph", "GraphError", "complete_graph", "cycle_graph", "hamiltonian",
    "potts_direct", "cut_space_code", "covering_counts", "potts_via_representation",
    "PottsReport",
]
