"""Building blocks: B^n, the oriented tunnel, linking, spheres and multispheres.

Every gadget checks its kernel with the exact solver after construction
rather than trusting the combinatorics that produced it.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field as dc_field
from typing import Sequence

from .complex import (
    ComplexError, OrientedTriangularConfiguration, TriangularConfiguration, as_base,
    connected_by_triangle_paths, edge, kernel, restricted_kernel, tri, tri_edges,
)
from .field import FieldSpec

log = logging.getLogger(__name__)


class GadgetError(ValueError):
    pass


class Namer:
    """Fresh vertex labels drawn from one namespace."""

    def __init__(self, prefix: str):
        self.prefix = prefix
        self.count = 0

    def __call__(self) -> str:
        self.count += 1
        return f"{self.prefix}{self.count}"


def _namer(labels) -> Namer:
    return labels if isinstance(labels, Namer) else Namer(labels)


def _rebuild(cfg, triangles: set, edges: set, sign: dict | None):
    base = TriangularConfiguration.build(triangles, edges)
    if sign is None:
        return base
    return OrientedTriangularConfiguration(base, sign)


def _parts(cfg):
    """Mutable copies of (triangles, maximal edges, sign map or None)."""
    base = as_base(cfg)
    sign = dict(cfg.sign) if isinstance(cfg, OrientedTriangularConfiguration) else None
    return set(base.triangles), set(base.edges), sign


# -- B^n ----------------------------------------------------------------------

def bn_triangle(j: int) -> tuple:
    """The j-th (1-based) triangle of B^n; labels are shared by every part."""
    return tri(f"B{j}_0", f"B{j}_1", f"B{j}_2")


def build_Bn(n: int) -> tuple[TriangularConfiguration, list]:
    if n < 1:
        raise GadgetError("B^n needs n >= 1")
    ts = [bn_triangle(j) for j in range(1, n + 1)]
    return TriangularConfiguration.build(ts), ts


# -- tunnel -------------------------------------------------------------------

# Triangulated prism between top A,B,C and bottom X,Y,Z. The first, third and
# fifth triangles hold a top edge (positive end), the others a bottom edge.
_PRISM = (("A", "B", "X"), ("B", "X", "Y"), ("B", "C", "Y"),
          ("C", "Y", "Z"), ("C", "A", "Z"), ("A", "Z", "X"))
_PRISM_SIGN = (1, -1, 1, -1, 1, -1)


@dataclass(frozen=True)
class TunnelGadget:
    complex: OrientedTriangularConfiguration
    positive_end: tuple
    negative_end: tuple
    inner_edges: tuple

    def end_triangle(self, end_edge) -> tuple:
        """The unique tunnel triangle containing an end edge."""
        ts = self.complex.base.triangles_at(end_edge)
        assert len(ts) == 1
        return ts[0]


def _tunnel(top: Sequence, bottom: Sequence) -> list[tuple[tuple, int]]:
    names = dict(zip("ABC", top)) | dict(zip("XYZ", bottom))
    return [(tri(*(names[v] for v in t)), s) for t, s in zip(_PRISM, _PRISM_SIGN)]


def build_tunnel(prefix: str = "T") -> TunnelGadget:
    top = tuple(f"{prefix}{c}" for c in "ABC")
    bottom = tuple(f"{prefix}{c}" for c in "XYZ")
    tris = _tunnel(top, bottom)
    base = TriangularConfiguration.build(t for t, _ in tris)
    cfg = OrientedTriangularConfiguration(base, {t: s for t, s in tris})
    ends = {edge(*e) for e in tri_edges(tri(*top))} | {edge(*e) for e in tri_edges(tri(*bottom))}
    inner = tuple(e for e in base.sorted_edges if e not in ends)
    return TunnelGadget(cfg, tri(*top), tri(*bottom), inner)


def tunnel_triangles(t1, t2) -> list[tuple[tuple, int]]:
    """Triangles (with sign) of the tunnel linking t1 (positive) to t2."""
    return _tunnel(tri(*t1), tri(*t2))


def link(cfg, t1, t2):
    """Attach a fresh tunnel with positive end on t1 and negative end on t2.

    t1 and t2 are vertex triples whose edges are present in cfg (filled or
    empty triangles). They must not share a vertex: sharing one would fold a
    tunnel triangle onto itself. Nothing but the end edges may be identified.
    """
    base = as_base(cfg)
    t1, t2 = tri(*t1), tri(*t2)
    for t in (t1, t2):
        for e in tri_edges(t):
            if e not in base.edges:
                raise GadgetError(f"link end {t} is missing edge {e}")
    if set(tri_edges(t1)) & set(tri_edges(t2)):
        raise GadgetError(f"link ends {t1} and {t2} share an edge")
    if set(t1) & set(t2):
        raise GadgetError(f"link ends {t1} and {t2} share a vertex")
    new = tunnel_triangles(t1, t2)
    triangles, edges, sign = _parts(cfg)
    ends = set(tri_edges(t1)) | set(tri_edges(t2))
    for t, s in new:
        if t in triangles:
            raise GadgetError(f"tunnel triangle {t} already present")
        for e in tri_edges(t):
            if e not in ends and e in edges:
                raise GadgetError(f"tunnel edge {e} already present")
    for t, s in new:
        triangles.add(t)
        if sign is not None:
            sign[t] = s
    return _rebuild(cfg, triangles, edges, sign)


def remove_triangles(cfg, ts):
    """Drop filled triangles while keeping all their edges."""
    triangles, edges, sign = _parts(cfg)
    for t in ts:
        t = tri(*t)
        if t not in triangles:
            raise GadgetError(f"unknown triangle {t}")
        triangles.discard(t)
        if sign is not None:
            del sign[t]
    return _rebuild(cfg, triangles, edges, sign)


# -- subdivisions ---------------------------------------------------------------

def subdivide_A(cfg, t, labels="sa") :
    """Replace one triangle by seven: an inner triangle a'b'c' and a ring of six.

    The boundary edges of t each stay in exactly one patch triangle, which
    carries t's value in every kernel vector, so the kernel is unchanged up to
    the new coordinates. Adds 6 triangles.
    """
    namer = _namer(labels)
    triangles, edges, sign = _parts(cfg)
    t = tri(*t)
    if t not in triangles:
        raise GadgetError(f"unknown triangle {t}")
    A, B, C = t
    a, b, c = namer(), namer(), namer()
    if {a, b, c} & as_base(cfg).vertices:
        raise GadgetError("subdivision labels are not fresh")
    patch = [((A, B, c), 1), ((B, c, a), -1), ((B, C, a), 1), ((C, a, b), -1),
             ((C, A, b), 1), ((A, b, c), -1), ((a, b, c), 1)]
    triangles.discard(t)
    s = None
    if sign is not None:
        s = sign.pop(t)
    for p, rel in patch:
        p = tri(*p)
        triangles.add(p)
        if sign is not None:
            sign[p] = s * rel
    return _rebuild(cfg, triangles, edges, sign)


def subdivide_B(cfg, t1, t2, labels="sb"):
    """Split the degree-2 edge shared by t1, t2 at two new points; adds 4 triangles."""
    namer = _namer(labels)
    base = as_base(cfg)
    t1, t2 = tri(*t1), tri(*t2)
    shared = set(t1) & set(t2)
    if t1 not in base.triangles or t2 not in base.triangles or len(shared) != 2:
        raise GadgetError(f"{t1} and {t2} are not two triangles sharing an edge")
    e = edge(*shared)
    if len(base.triangles_at(e)) != 2:
        raise GadgetError(f"shared edge {e} does not have degree 2")
    A, B = e
    (C,) = set(t1) - shared
    (D,) = set(t2) - shared
    p, q = namer(), namer()
    if {p, q} & base.vertices:
        raise GadgetError("subdivision labels are not fresh")
    triangles, edges, sign = _parts(cfg)
    triangles -= {t1, t2}
    edges.discard(e)
    s1 = s2 = None
    if sign is not None:
        s1, s2 = sign.pop(t1), sign.pop(t2)
    patch = [((A, p, C), s1, 1), ((p, q, C), s1, -1), ((q, B, C), s1, 1),
             ((A, p, D), s2, 1), ((p, q, D), s2, -1), ((q, B, D), s2, 1)]
    for tt, s, rel in patch:
        tt = tri(*tt)
        triangles.add(tt)
        if sign is not None:
            sign[tt] = s * rel
    return _rebuild(cfg, triangles, edges, sign)


# -- spheres ------------------------------------------------------------------

def sphere_plan(m: int) -> tuple[int, int]:
    """(l, k) with m = 8 + 6l + 4k, preferring the most A-subdivisions."""
    r = m - 8
    if r < 0 or r % 2:
        raise GadgetError(f"no oriented sphere with {m} triangles")
    for l in range(r // 6, -1, -1):
        if (r - 6 * l) % 4 == 0:
            return l, (r - 6 * l) // 4
    raise GadgetError(f"no oriented sphere with {m} triangles")


def representable_sphere_size(m: int) -> int:
    """Smallest sphere size >= m of the form 8 + 6l + 4k."""
    m = max(m, 8)
    m += m % 2
    return 12 if m == 10 else m


def octahedron(prefix: str = "S") -> OrientedTriangularConfiguration:
    n, s = f"{prefix}n", f"{prefix}s"
    eq = [f"{prefix}e{i}" for i in range(4)]
    sign = {}
    for i in range(4):
        u, v = eq[i], eq[(i + 1) % 4]
        sgn = 1 if i % 2 == 0 else -1
        sign[tri(n, u, v)] = sgn
        sign[tri(s, u, v)] = -sgn
    base = TriangularConfiguration.build(sign)
    return OrientedTriangularConfiguration(base, sign)


@dataclass(frozen=True)
class SphereGadget:
    complex: OrientedTriangularConfiguration
    m: int


def _vertex_degrees(base: TriangularConfiguration) -> dict:
    deg = {}
    for t in base.triangles:
        for v in t:
            deg[v] = deg.get(v, 0) + 1
    return deg


def check_sphere(cfg: OrientedTriangularConfiguration):
    base = cfg.base
    for e in base.edges:
        if len(base.triangles_at(e)) != 2:
            raise GadgetError(f"sphere edge {e} does not have degree 2")
    if not cfg.is_properly_colored():
        raise GadgetError("sphere is not properly 2-coloured")
    if len(base.vertices) - len(base.edges) + len(base.triangles) != 2:
        raise GadgetError("Euler characteristic is not 2")
    if not connected_by_triangle_paths(base):
        raise GadgetError("sphere is disconnected")


def build_sphere(m: int, prefix: str = "S", field: FieldSpec | None = None) -> SphereGadget:
    """Octahedron followed by l A-subdivisions and k B-subdivisions."""
    l, k = sphere_plan(m)
    cfg = octahedron(prefix)
    namer = Namer(f"{prefix}v")
    for step in range(l):
        # spread the patches: alternate colours, prefer low-degree regions
        want = 1 if step % 2 == 0 else -1
        deg = _vertex_degrees(cfg.base)
        cands = [t for t in cfg.base.sorted_triangles if cfg.sign[t] == want]
        t = min(cands, key=lambda t: (sum(deg[v] for v in t), t))
        cfg = subdivide_A(cfg, t, namer)
    for _ in range(k):
        _, t1, t2 = next(_degree_two_pairs(cfg.base))
        cfg = subdivide_B(cfg, t1, t2, namer)
    if len(cfg.base.triangles) != m:
        raise GadgetError(f"sphere has {len(cfg.base.triangles)} triangles, wanted {m}")
    check_sphere(cfg)
    if field is not None:
        K = kernel(cfg, field)
        if K.dimension != 1:
            raise GadgetError(f"sphere kernel has dimension {K.dimension}")
    return SphereGadget(cfg, m)


def _degree_two_pairs(base: TriangularConfiguration, allowed=None):
    for e in base.sorted_edges:
        ts = base._edge_triangles.get(e, ())
        if len(ts) == 2 and (allowed is None or (ts[0] in allowed and ts[1] in allowed)):
            yield e, ts[0], ts[1]


# -- multisphere ----------------------------------------------------------------

@dataclass
class MultisphereGadget:
    complex: OrientedTriangularConfiguration
    field: FieldSpec
    n_list: tuple
    M: int
    g: object
    values: tuple  # a_i = n_i x g, raw field values
    class_plus: list  # per sphere: triangles carrying +a_i
    class_minus: list
    surface_plus: list  # per sphere: surviving sphere triangles (linkable)
    surface_minus: list
    sphere_size: int
    junctions: list = dc_field(default_factory=list)  # (t, t') empty triangles
    generator: dict = dc_field(default_factory=dict)

    @property
    def k(self) -> int:
        return len(self.n_list)



class _Picker:
    """Greedy choice of sphere triangles honouring the disjointness rules.

    All picks on one sphere are pairwise edge-disjoint; picks that will be
    linked to the same empty triangle are also vertex-disjoint, otherwise two
    tunnels would share an inner edge.
    """

    def __init__(self):
        self.used_edges: set = set()
        self.used: set = set()

    def pick(self, candidates, count: int, group_vertices: set | None = None) -> list | None:
        out = []
        for t in candidates:
            if len(out) == count:
                break
            if t in self.used:
                continue
            es = tri_edges(t)
            if any(e in self.used_edges for e in es):
                continue
            if group_vertices is not None and group_vertices & set(t):
                continue
            out.append(t)
            self.used.add(t)
            self.used_edges.update(es)
            if group_vertices is not None:
                group_vertices.update(t)
        return out if len(out) == count else None


def multisphere_size(n_list: Sequence[int], M: int) -> int:
    n = list(n_list) + [0]
    need = max((2 * n[i] + 2 * n[i + 1] for i in range(len(n_list))), default=0)
    m = max(2 * (need + M), 4 * max(n_list) + 2, 2 * M + 2, 8)
    return representable_sphere_size(m)


def _try_multisphere(n_list, M, field, prefix, m):
    k = len(n_list)
    spheres = [build_sphere(m, f"{prefix}s{i + 1}_") for i in range(k)]
    triangles, edges, sign = set(), set(), {}
    for s in spheres:
        triangles |= s.complex.base.triangles
        edges |= s.complex.base.edges
        sign.update(s.complex.sign)
    junctions = []
    for i in range(k - 1):
        pair = []
        for r in ("t", "u"):
            et = tri(*(f"{prefix}{r}{i + 1}_{x}" for x in range(3)))
            edges.update(tri_edges(et))
            pair.append(et)
        junctions.append(tuple(pair))
    cfg = OrientedTriangularConfiguration(TriangularConfiguration.build(triangles, edges), sign)
    pickers = [_Picker() for _ in range(k)]
    tunnels_of = [[] for _ in range(k)]  # tunnel triangles attached to sphere i
    doomed = []
    for rnd in range(2):  # the two rounds of links: t_{i,i+1}, then t'_{i,i+1}
        for i in range(k - 1):
            et = junctions[i][rnd]
            minus = pickers[i].pick(spheres[i].complex.minus, n_list[i + 1], set())
            plus = pickers[i + 1].pick(spheres[i + 1].complex.plus, n_list[i], set())
            if minus is None or plus is None:
                return None
            for d in minus:
                cfg = link(cfg, et, d)
                tunnels_of[i].extend(tunnel_triangles(et, d))
            for d in plus:
                cfg = link(cfg, d, et)
                tunnels_of[i + 1].extend(tunnel_triangles(d, et))
            doomed.extend(minus + plus)
    cfg = remove_triangles(cfg, doomed)
    doomed = set(doomed)
    class_plus, class_minus, surf_plus, surf_minus = [], [], [], []
    for i, s in enumerate(spheres):
        sp = [t for t in s.complex.plus if t not in doomed]
        sm = [t for t in s.complex.minus if t not in doomed]
        surf_plus.append(sp)
        surf_minus.append(sm)
        class_plus.append(sorted(sp + [t for t, sg in tunnels_of[i] if sg > 0]))
        class_minus.append(sorted(sm + [t for t, sg in tunnels_of[i] if sg < 0]))
    return cfg, junctions, class_plus, class_minus, surf_plus, surf_minus


def build_multisphere(n_list: Sequence[int], M: int, g, field: FieldSpec,
                      prefix: str = "M", min_sphere: int = 0) -> MultisphereGadget:
    """Chain of oriented spheres whose kernel is spanned by a_i = n_i x g on sphere i.

    Each junction between spheres i and i+1 is a pair of empty triangles
    joined to n_{i+1} '-' triangles of sphere i and n_i '+' triangles of
    sphere i+1 by tunnels; the linked sphere triangles are deleted.
    """
    n_list = tuple(int(n) for n in n_list)
    if not n_list or any(n < 1 for n in n_list):
        raise GadgetError("multisphere needs positive integers n_i")
    if len(set(n_list)) != len(n_list):
        raise GadgetError("multisphere needs distinct n_i")
    if field.is_finite and any(n % field.modulus == 0 for n in n_list):
        raise GadgetError(f"n_i divisible by the characteristic {field.modulus}")
    g = field.coerce(g)
    if g == 0:
        raise GadgetError("generator must be nonzero")
    values = tuple(field.mul(field.coerce(n), g) for n in n_list)
    m = representable_sphere_size(max(multisphere_size(n_list, M), min_sphere))
    for _ in range(200):
        built = _try_multisphere(n_list, M, field, prefix, m)
        if built is not None:
            break
        m = representable_sphere_size(m + 2)
    else:
        raise GadgetError(f"no feasible sphere size for n={n_list}, M={M}")
    cfg, junctions, cp, cm, sp, sm = built
    gadget = MultisphereGadget(cfg, field, n_list, M, g, values, cp, cm, sp, sm, m, junctions)
    gadget.generator = verify_multisphere(gadget)
    return gadget


def verify_multisphere(gadget: MultisphereGadget) -> dict:
    """Kernel check: dimension 1, value a_i on class +i and -a_i on class -i."""
    F = gadget.field
    cfg = gadget.complex
    if len(cfg.base.triangles) % 2:
        raise GadgetError("multisphere has an odd number of triangles")
    for i in range(gadget.k):
        if len(gadget.class_plus[i]) < gadget.M or len(gadget.class_minus[i]) < gadget.M:
            raise GadgetError(f"sphere {i + 1} classes smaller than M={gadget.M}")
    covered = set()
    for i in range(gadget.k):
        covered.update(gadget.class_plus[i], gadget.class_minus[i])
    if covered != set(cfg.base.triangles):
        raise GadgetError("sign classes do not partition the triangles")
    K = kernel(cfg, F)
    if K.dimension != 1:
        raise GadgetError(f"multisphere kernel has dimension {K.dimension}")
    vec = K.as_dict(0)
    t0 = gadget.class_plus[0][0]
    scale = F.div(gadget.values[0], vec[t0])
    gen = {t: F.mul(scale, x) for t, x in vec.items()}
    for i, a in enumerate(gadget.values):
        for t in gadget.class_plus[i]:
            if gen.get(t) != a:
                raise GadgetError(f"generator is not a_{i + 1} on class +{i + 1}")
        for t in gadget.class_minus[i]:
            if gen.get(t) != F.neg(a):
                raise GadgetError(f"generator is not -a_{i + 1} on class -{i + 1}")
    return gen


def tunnel_kernel(field: FieldSpec, prefix: str = "T"):
    """Restricted kernel of a bare tunnel on its inner edges."""
    tg = build_tunnel(prefix)
    return tg, restricted_kernel(tg.complex, tg.inner_edges, field)


__all__ = [
    "GadgetError", "Namer", "build_Bn", "bn_triangle", "build_tunnel", "TunnelGadget",
    "tunnel_triangles", "link", "remove_triangles", "subdivide_A", "subdivide_B",
    "sphere_plan", "representable_sphere_size", "octahedron", "SphereGadget", "build_sphere",
    "check_sphere", "MultisphereGadget", "build_multisphere", "verify_multisphere",
    "multisphere_size", "tunnel_kernel", "ComplexError",
]
