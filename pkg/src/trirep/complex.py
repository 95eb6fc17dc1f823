"""Triangular configurations: abstract 2-complexes of triangles and edges.

Vertices are string labels. An edge is a sorted 2-tuple of labels and a
triangle a sorted 3-tuple; canonical order is plain tuple order, which fixes
matrix layout and pivoting everywhere.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Mapping

from .field import FieldSpec
from .linalg import SparseEchelon


class ComplexError(ValueError):
    pass


def edge(u, v) -> tuple:
    if u == v:
        raise ComplexError(f"degenerate edge {u!r}")
    return (u, v) if u < v else (v, u)


def tri(u, v, w) -> tuple:
    t = tuple(sorted((u, v, w)))
    if len(set(t)) != 3:
        raise ComplexError(f"degenerate triangle {t!r}")
    return t


def tri_edges(t) -> tuple:
    a, b, c = t
    return ((a, b), (a, c), (b, c))


def triangle_id(t) -> str:
    return ",".join(t)


def parse_triangle_id(s: str) -> tuple:
    return tri(*s.split(","))


@dataclass(frozen=True)
class TriangularConfiguration:
    vertices: frozenset
    edges: frozenset
    triangles: frozenset

    @classmethod
    def build(cls, triangles: Iterable = (), edges: Iterable = (), vertices: Iterable = ()):
        """Downward-closed complex generated by the given simplices."""
        T = set(tri(*t) for t in triangles)
        E = set(edge(*e) for e in edges)
        for t in T:
            E.update(tri_edges(t))
        V = set(vertices)
        for e in E:
            V.update(e)
        return cls(frozenset(V), frozenset(E), frozenset(T))

    @classmethod
    def empty(cls):
        return cls(frozenset(), frozenset(), frozenset())

    @cached_property
    def sorted_triangles(self) -> tuple:
        return tuple(sorted(self.triangles))

    @cached_property
    def sorted_edges(self) -> tuple:
        return tuple(sorted(self.edges))

    @cached_property
    def triangle_index(self) -> dict:
        return {t: i for i, t in enumerate(self.sorted_triangles)}

    @cached_property
    def _edge_triangles(self) -> dict:
        inc = defaultdict(list)
        for t in self.sorted_triangles:
            for e in tri_edges(t):
                inc[e].append(t)
        return inc

    def triangles_at(self, e) -> list:
        e = edge(*e)
        if e not in self.edges:
            raise ComplexError(f"unknown edge {e!r}")
        return list(self._edge_triangles.get(e, ()))

    @property
    def maximal_edges(self) -> list:
        return [e for e in self.sorted_edges if not self._edge_triangles.get(e)]

    def __len__(self):
        return len(self.triangles)


@dataclass(frozen=True)
class OrientedTriangularConfiguration:
    base: TriangularConfiguration
    sign: Mapping  # triangle -> +1 / -1

    def __post_init__(self):
        missing = self.base.triangles.difference(self.sign)
        if missing:
            raise ComplexError(f"sign map not total: {sorted(missing)[:3]}")
        extra = set(self.sign).difference(self.base.triangles)
        if extra:
            object.__setattr__(self, "sign", {t: s for t, s in self.sign.items()
                                              if t in self.base.triangles})

    @property
    def plus(self) -> list:
        return [t for t in self.base.sorted_triangles if self.sign[t] > 0]

    @property
    def minus(self) -> list:
        return [t for t in self.base.sorted_triangles if self.sign[t] < 0]

    def is_properly_colored(self) -> bool:
        """Every edge of degree 2 sees one '+' and one '-' triangle."""
        for e in self.base.edges:
            ts = self.base.triangles_at(e)
            if len(ts) == 2 and self.sign[ts[0]] == self.sign[ts[1]]:
                return False
        return True


def as_base(cfg) -> TriangularConfiguration:
    return cfg.base if isinstance(cfg, OrientedTriangularConfiguration) else cfg


def union(d1, d2) -> TriangularConfiguration:
    a, b = as_base(d1), as_base(d2)
    return TriangularConfiguration(a.vertices | b.vertices, a.edges | b.edges,
                                   a.triangles | b.triangles)


def difference(d1, d2) -> TriangularConfiguration:
    """Triangles of d1 not in d2, with only the faces those triangles need."""
    a, b = as_base(d1), as_base(d2)
    return TriangularConfiguration.build(a.triangles - b.triangles)


def edge_degree(cfg, e) -> int:
    return len(as_base(cfg).triangles_at(e))


def empty_triangles(cfg) -> list:
    """Vertex triples whose three edges are present but whose triangle is not."""
    base = as_base(cfg)
    nbrs = defaultdict(set)
    for u, v in base.edges:
        nbrs[u].add(v)
        nbrs[v].add(u)
    out = []
    for u, v in base.sorted_edges:
        for w in nbrs[u] & nbrs[v]:
            if w > v and (u, v, w) not in base.triangles:
                out.append((u, v, w))
    return sorted(out)


@dataclass(frozen=True)
class IncidenceMatrix:
    field: FieldSpec
    edges: tuple
    triangles: tuple
    rows: tuple  # one dict {triangle column: 1} per edge

    @property
    def shape(self) -> tuple:
        return (len(self.edges), len(self.triangles))

    def to_dense(self) -> list[list]:
        F = self.field
        return [[row.get(j, F.zero) for j in range(len(self.triangles))] for row in self.rows]

    def apply(self, vector) -> list:
        F = self.field
        out = []
        for row in self.rows:
            acc = F.zero
            for j in row:
                acc = F.add(acc, vector[j])
            out.append(acc)
        return out


def incidence_matrix(cfg, field: FieldSpec, edges=None) -> IncidenceMatrix:
    base = as_base(cfg)
    E = base.sorted_edges if edges is None else tuple(sorted(edge(*e) for e in edges))
    idx = base.triangle_index
    rows = []
    for e in E:
        if e not in base.edges:
            raise ComplexError(f"unknown edge {e!r}")
        rows.append({idx[t]: field.one for t in base._edge_triangles.get(e, ())})
    return IncidenceMatrix(field, E, base.sorted_triangles, tuple(rows))


@dataclass(frozen=True)
class KernelBasis:
    field: FieldSpec
    triangles: tuple
    vectors: tuple  # dense tuples in `triangles` order

    @property
    def dimension(self) -> int:
        return len(self.vectors)

    @cached_property
    def index(self) -> dict:
        return {t: i for i, t in enumerate(self.triangles)}

    def as_dict(self, i: int) -> dict:
        return {t: x for t, x in zip(self.triangles, self.vectors[i]) if x != 0}


def _solve(A: IncidenceMatrix) -> KernelBasis:
    F = A.field
    ech = SparseEchelon(F)
    for row in A.rows:
        if row:
            ech.add_row(row)
    ncols = len(A.triangles)
    vectors = []
    for vec in ech.kernel_basis(ncols):
        dense = [F.zero] * ncols
        for j, x in vec.items():
            dense[j] = x
        vectors.append(tuple(dense))
    for v in vectors:
        if any(x != 0 for x in A.apply(v)):
            raise ArithmeticError("kernel vector failed the A.v = 0 re-check")
    return KernelBasis(F, A.triangles, tuple(vectors))


def kernel(cfg, field: FieldSpec) -> KernelBasis:
    """Exact basis of {x : A x = 0} for the edge/triangle incidence matrix A."""
    return _solve(incidence_matrix(cfg, field))


def restricted_kernel(cfg, edges, field: FieldSpec) -> KernelBasis:
    """Kernel of the incidence rows indexed by the given edges only."""
    return _solve(incidence_matrix(cfg, field, edges=list(edges)))


def incidence_rank(cfg, field: FieldSpec) -> int:
    ech = SparseEchelon(field)
    for row in incidence_matrix(cfg, field).rows:
        if row:
            ech.add_row(row)
    return ech.rank


def in_kernel(cfg, field: FieldSpec, values: Mapping) -> bool:
    """Check A.v = 0 for a vector given as {triangle: value}."""
    base = as_base(cfg)
    for e in base.edges:
        acc = field.zero
        for t in base._edge_triangles.get(e, ()):
            acc = field.add(acc, values.get(t, field.zero))
        if acc != 0:
            return False
    return True


def relabel(cfg, mapping: Mapping):
    """Rename vertices; the mapping must be injective on the vertex set."""
    base = as_base(cfg)
    new = TriangularConfiguration.build(
        (tuple(mapping[v] for v in t) for t in base.triangles),
        (tuple(mapping[v] for v in e) for e in base.edges),
        (mapping[v] for v in base.vertices))
    if isinstance(cfg, OrientedTriangularConfiguration):
        sign = {tri(*(mapping[v] for v in t)): s for t, s in cfg.sign.items()}
        return OrientedTriangularConfiguration(new, sign)
    return new


def connected_by_triangle_paths(cfg) -> bool:
    """Whether every two triangles are joined by a path through shared edges."""
    base = as_base(cfg)
    if not base.triangles:
        return True
    seen = set()
    stack = [base.sorted_triangles[0]]
    while stack:
        t = stack.pop()
        if t in seen:
            continue
        seen.add(t)
        for e in tri_edges(t):
            stack.extend(base._edge_triangles[e])
    return len(seen) == len(base.triangles)


def degree_two_pairs(cfg, allowed=None) -> Iterable[tuple]:
    """(edge, t1, t2) for edges of degree 2, canonical order, optionally
    restricted to pairs with both triangles in `allowed`."""
    base = as_base(cfg)
    for e in base.sorted_edges:
        ts = base._edge_triangles.get(e, ())
        if len(ts) == 2 and (allowed is None or (ts[0] in allowed and ts[1] in allowed)):
            yield e, ts[0], ts[1]


def vertices_of(triangles) -> set:
    return {v for t in triangles for v in t}


__all__ = [
    "ComplexError", "TriangularConfiguration", "OrientedTriangularConfiguration",
    "IncidenceMatrix", "KernelBasis", "union", "difference", "incidence_matrix",
    "kernel", "restricted_kernel", "edge_degree", "empty_triangles", "edge", "tri",
    "tri_edges", "triangle_id", "parse_triangle_id", "relabel", "in_kernel",
    "connected_by_triangle_paths", "degree_two_pairs", "incidence_rank", "as_base",
]

