"""Triangular representation of a linear code.

Pipeline: double the code, build one part per doubled basis vector (a
multisphere tunnelled onto the shared triangles B^{2n}), balance the parts so
each carries the same number e of private triangles, and take the union.
The map f sends a codeword of the double code to the matching kernel vector.
"""

from __future__ import annotations

import logging
import os
from dataclasses import dataclass, field as dc_field
from typing import Sequence

from .code import (
    BudgetExceeded, Codeword, LinearCode, double_code, enumerate_codewords,
    is_representable_basis, minimal_supports, systematic_form, weight,
)
from .complex import TriangularConfiguration, kernel, KernelBasis, tri_edges
from .enumerator import kernel_codewords
from .field import FieldSpec, cyclic_decompose_raw
from .gadgets import (
    Namer, bn_triangle, build_multisphere, link, remove_triangles,
    subdivide_A, subdivide_B, _degree_two_pairs,
)
from .linalg import same_row_space

log = logging.getLogger(__name__)

DEFAULT_TRIANGLE_BUDGET = int(os.environ.get("TRIREP_BUDGET_TRIANGLES", 10**6))


class RepresentationError(ValueError):
    pass


@dataclass
class Part:
    """The configuration built for one doubled basis vector b."""

    index: int
    vector: tuple
    field: FieldSpec
    complex: TriangularConfiguration  # includes every triangle of B^{n2}
    bn: tuple
    namer: Namer
    generator: dict = dc_field(default_factory=dict)  # u(b), triangle -> value

    @property
    def private(self) -> list:
        bn = set(self.bn)
        return [t for t in self.complex.sorted_triangles if t not in bn]

    @property
    def surplus(self) -> int:
        """|T(part)| - w(b), counting only the B-triangles the part links to."""
        return len(self.complex.triangles) - len(self.bn)

    @property
    def triangle_count(self) -> int:
        return self.surplus + weight(self.vector)

    def _free(self):
        bverts = {v for t in self.bn for v in t}
        return [t for t in self.private if not bverts & set(t)]

    def step_A(self):
        self.complex = subdivide_A(self.complex, self._free()[0], self.namer)

    def can_step_B(self) -> bool:
        return self._pair_B() is not None

    def _pair_B(self):
        free = set(self._free())
        return next(_degree_two_pairs(self.complex, free), None)

    def step_B(self):
        pair = self._pair_B()
        if pair is None:
            raise RepresentationError(f"part {self.index} has no degree-2 edge for step B")
        _, t1, t2 = pair
        self.complex = subdivide_B(self.complex, t1, t2, self.namer)


def build_delta_b(b: Sequence, field: FieldSpec, index: int = 0, M: int | None = None) -> Part:
    """Multisphere for the distinct entry magnitudes of b, tunnelled onto B^{n2}."""
    n2 = len(b)
    M = n2 if M is None else M
    J = [j for j, x in enumerate(b) if x != 0]
    if not J:
        raise RepresentationError("zero basis vector")
    g, mults, signs = cyclic_decompose_raw(field, [b[j] for j in J])
    n_list = sorted(set(mults))
    sphere = {n: i for i, n in enumerate(n_list)}
    prefix = f"P{index + 1}_"
    bn = tuple(bn_triangle(j + 1) for j in range(n2))
    min_sphere = 0
    for _ in range(100):
        ms = build_multisphere(n_list, M, g, field, prefix=prefix, min_sphere=min_sphere)
        picks = _pick_targets(ms, [(sphere[n], s) for n, s in zip(mults, signs)])
        if picks is not None:
            break
        min_sphere = ms.sphere_size + 2
    else:
        raise RepresentationError(f"cannot place {len(J)} tunnels on a multisphere")
    triangles, edges = set(ms.complex.base.triangles) | set(bn), set(ms.complex.base.edges)
    cfg = TriangularConfiguration.build(triangles, edges)
    for j, t in zip(J, picks):
        cfg = link(cfg, t, bn[j])
    cfg = remove_triangles(cfg, picks)
    part = Part(index, tuple(b), field, cfg, bn, Namer(f"{prefix}x"))
    part.generator = part_generator(part)
    return part


def _pick_targets(ms, wants) -> list | None:
    """One surviving sphere triangle per wanted (sphere, sign), edge-disjoint."""
    used_edges, out = set(), []
    for i, s in wants:
        pool = ms.surface_plus[i] if s > 0 else ms.surface_minus[i]
        for t in pool:
            if t in out or any(e in used_edges for e in tri_edges(t)):
                continue
            out.append(t)
            used_edges.update(tri_edges(t))
            break
        else:
            return None
    return out


def part_generator(part: Part) -> dict:
    """u(b): the kernel generator of the part with u(b) on B_j equal to b_j."""
    F = part.field
    K = kernel(part.complex, F)
    if K.dimension != 1:
        raise RepresentationError(f"part {part.index} kernel has dimension {K.dimension}")
    vec = K.as_dict(0)
    j0 = next(j for j, x in enumerate(part.vector) if x != 0)
    t0 = part.bn[j0]
    if t0 not in vec:
        raise RepresentationError("part generator vanishes on a linked B-triangle")
    scale = F.div(part.vector[j0], vec[t0])
    gen = {t: F.mul(scale, x) for t, x in vec.items()}
    for j, t in enumerate(part.bn):
        if gen.get(t, F.zero) != part.vector[j]:
            raise RepresentationError(f"u(b) on B_{j + 1} differs from b_{j + 1}")
    bn = set(part.bn)
    if any(gen.get(t, 0) == 0 for t in part.complex.triangles if t not in bn):
        raise RepresentationError("u(b) vanishes on a private triangle")
    return gen


# -- balancing ------------------------------------------------------------------

def balance(parts: Sequence, threshold: int, log_steps: list | None = None):
    """Equalise part surpluses with A (+6) and B (+4) steps, then exceed threshold.

    `parts` need `surplus`, `step_A()`, `step_B()` and `can_step_B()`. Parts are
    processed in decreasing surplus; each later part is raised with A while
    at least 6 behind, then a gap of 4 takes one B and a gap of 2 takes a B
    on every balanced part plus an A on the current one. Surpluses must be even.
    """
    steps = [] if log_steps is None else log_steps
    if any(p.surplus % 2 for p in parts):
        raise RepresentationError("part surpluses must be even (use the double code)")

    def do(p, kind):
        if kind == "B" and not p.can_step_B():
            for q in parts:
                q.step_A()
                steps.append((q.index, "A"))
        (p.step_A if kind == "A" else p.step_B)()
        steps.append((p.index, kind))

    order = sorted(parts, key=lambda p: -p.surplus)
    done = order[:1]
    for p in order[1:]:
        target = done[-1].surplus
        while p.surplus <= target - 6:
            do(p, "A")
        gap = target - p.surplus
        if gap == 4:
            do(p, "B")
        elif gap == 2:
            for q in done:
                do(q, "B")
            do(p, "A")
        elif gap != 0:
            raise RepresentationError(f"unexpected surplus gap {gap}")
        done.append(p)
    while parts and parts[0].surplus <= threshold:
        for p in parts:
            do(p, "A")
    if len({p.surplus for p in parts}) > 1:
        raise RepresentationError("balancing failed")
    return steps


# -- representation -------------------------------------------------------------

@dataclass
class Representation:
    code: LinearCode  # C with the basis actually used
    doubled: LinearCode
    delta: TriangularConfiguration
    parts: list
    bn: tuple  # mu(i) = bn[i], 0-based coordinates of the double code
    e: int
    generators: list  # dense <Delta_b> vectors over delta.sorted_triangles
    kernel: KernelBasis
    input_code: LinearCode | None = None
    balance_steps: list = dc_field(default_factory=list)

    @property
    def field(self) -> FieldSpec:
        return self.code.field

    @property
    def n(self) -> int:
        return self.code.length

    @property
    def triangles(self) -> tuple:
        return self.delta.sorted_triangles

    @property
    def index(self) -> dict:
        return self.delta.triangle_index

    @property
    def mu(self) -> tuple:
        return self.bn

    @property
    def S(self) -> list:
        """Puncturing set: everything but mu(0..n-1), in canonical order."""
        keep = set(self.bn[: self.n])
        return [t for t in self.triangles if t not in keep]

    def map_f(self, c) -> tuple:
        """Kernel vector of a double-code codeword (or of its coefficient vector)."""
        F = self.field
        coeffs = self._coeffs(c)
        out = [F.zero] * len(self.triangles)
        for a, gvec in zip(coeffs, self.generators):
            if a == 0:
                continue
            for i, x in enumerate(gvec):
                if x != 0:
                    out[i] = F.add(out[i], F.mul(a, x))
        return tuple(out)

    def _coeffs(self, c):
        if isinstance(c, Codeword):
            if c.coeffs is not None:
                return c.coeffs
            c = c.coords
        c = tuple(self.field.coerce(x) for x in c)
        if len(c) == self.code.length:
            c = c + c
        coeffs = self.doubled.coefficients(c)
        if coeffs is None:
            raise RepresentationError("vector is not a codeword of the double code")
        return coeffs

    def inverse_f(self, v) -> Codeword:
        """Codeword c of the double code with f(c) = v."""
        F = self.field
        v = list(v)
        coeffs = []
        for p, gvec in zip(self.parts, self.generators):
            t = self.index[p.private[0]]
            gamma = F.div(v[t], gvec[t])
            coeffs.append(gamma)
            if gamma != 0:
                for i, x in enumerate(gvec):
                    if x != 0:
                        v[i] = F.sub(v[i], F.mul(gamma, x))
        if any(x != 0 for x in v):
            raise RepresentationError("vector is not in the span of the part generators")
        return Codeword(self.doubled.combine(coeffs), tuple(coeffs))

    def project(self, v) -> tuple:
        """Puncture a kernel vector down to the n coordinates of C."""
        return tuple(v[self.index[t]] for t in self.bn[: self.n])


def build_representation(code: LinearCode, systematic: bool = True,
                         triangle_budget: int | None = None) -> Representation:
    """Balanced triangular representation of `code` through its double code.

    With `systematic` the basis is first brought to reduced echelon form; a
    basis vector then owns a coordinate no other one touches, which makes f
    reflect minimality in both directions.
    """
    budget = DEFAULT_TRIANGLE_BUDGET if triangle_budget is None else triangle_budget
    F = code.field
    work = systematic_form(code) if systematic and code.dimension else code
    ok, work = is_representable_basis(work)
    if not ok:
        raise RepresentationError("basis is not representable")
    dbl = double_code(work)
    n2 = dbl.length
    parts = []
    for i, b in enumerate(dbl.basis):
        parts.append(build_delta_b(b, F, index=i, M=n2))
        _check_budget(parts, budget)
    steps = balance(parts, threshold=n2)
    _check_budget(parts, budget)
    for p in parts:
        p.generator = part_generator(p)
    bn = tuple(bn_triangle(j + 1) for j in range(n2)) if n2 else ()
    triangles = set(bn)
    edges = set()
    for p in parts:
        triangles |= p.complex.triangles
        edges |= p.complex.edges
    delta = TriangularConfiguration.build(triangles, edges)
    K = kernel(delta, F)
    idx = delta.triangle_index
    gens = []
    for p in parts:
        vec = [F.zero] * len(idx)
        for t, x in p.generator.items():
            vec[idx[t]] = x
        gens.append(tuple(vec))
    e = parts[0].surplus if parts else n2 + 1
    rep = Representation(work, dbl, delta, parts, bn, e, gens, K, input_code=code,
                         balance_steps=steps)
    failures = [name for name, ok in check_structure(rep).items() if not ok]
    if failures:
        raise RepresentationError(f"representation invariants failed: {failures}")
    return rep


def _check_budget(parts, budget):
    total = sum(p.surplus for p in parts)
    if total > budget:
        raise BudgetExceeded(f"{total} triangles exceeds budget {budget}")


# -- invariant checks -----------------------------------------------------------

def check_structure(rep: Representation) -> dict:
    """Field-independent checks that need no codeword enumeration."""
    F = rep.field
    d, n = rep.code.dimension, rep.n
    res = {}
    res["kernel dimension equals dim C"] = rep.kernel.dimension == d
    res["generators lie in ker Delta"] = all(
        _in_kernel(rep, g) for g in rep.generators)
    res["balanced"] = len({p.surplus for p in rep.parts}) <= 1
    res["e exceeds 2n"] = rep.e > 2 * n
    res["e = (|S| - n)/dim C"] = d == 0 or rep.e * d == len(rep.S) - n
    bn = set(rep.bn)
    bverts = {v for t in bn for v in t}
    shared_ok = True
    for i, p in enumerate(rep.parts):
        for q in rep.parts[i + 1:]:
            if (p.complex.triangles & q.complex.triangles) - bn:
                shared_ok = False
            if (p.complex.vertices & q.complex.vertices) - bverts:
                shared_ok = False
    res["parts share only B^{2n}"] = shared_ok
    proj_ok = True
    for b, gvec in zip(rep.doubled.basis, rep.generators):
        if tuple(gvec[rep.index[t]] for t in rep.bn) != tuple(b):
            proj_ok = False
    res["f(b) restricted to mu equals b"] = proj_ok
    punctured = [rep.project(v) for v in rep.kernel.vectors]
    res["C = ker Delta / S"] = (
        same_row_space(F, punctured, rep.code.basis) if d else not any(
            any(x != 0 for x in v) for v in punctured))
    return res


def _in_kernel(rep, vec) -> bool:
    F = rep.field
    idx = rep.index
    for e in rep.delta.edges:
        acc = F.zero
        for t in rep.delta._edge_triangles.get(e, ()):
            acc = F.add(acc, vec[idx[t]])
        if acc != 0:
            return False
    return True


@dataclass
class MinimalityReport:
    forward: list  # c minimal in C^2 but f(c) not minimal in ker Delta
    reverse: list  # f(c) minimal but c not minimal
    checked: int

    @property
    def ok(self) -> bool:
        return not self.forward and not self.reverse


def _mask(v) -> int:
    m = 0
    for i, x in enumerate(v):
        if x != 0:
            m |= 1 << i
    return m


def verify_minimal_preservation(rep: Representation, budget: int | None = None) -> MinimalityReport:
    """Brute force: c is minimal in C^2 exactly when f(c) is minimal in ker Delta."""
    words = list(enumerate_codewords(rep.doubled, budget))
    images = [rep.map_f(c) for c in words]
    code_masks = [w.mask for w in words]
    ker_masks = [_mask(v) for v in images]
    min_code = minimal_supports(code_masks)
    min_ker = minimal_supports(ker_masks)
    fwd, rev = [], []
    for w, cm, km in zip(words, code_masks, ker_masks):
        a, b = cm in min_code, km in min_ker
        if a and not b:
            fwd.append(w)
        if b and not a:
            rev.append(w)
    return MinimalityReport(fwd, rev, len(words))


def verify_representation(rep: Representation, budget: int | None = None) -> dict:
    """The full invariant suite; enumeration-based checks run over finite fields."""
    res = check_structure(rep)
    F = rep.field
    e, n = rep.e, rep.n
    if F.is_finite:
        words = list(enumerate_codewords(rep.doubled, budget))
        law = band = roundtrip = True
        for c in words:
            v = rep.map_f(c)
            k = sum(1 for a in c.coeffs if a != 0)
            wv = weight(v)
            law &= wv == weight(c) + k * e
            band &= k * e <= wv <= k * e + 2 * n
            roundtrip &= rep.inverse_f(v).coords == c.coords
        res["weight law w(f(c)) = w(c) + deg(c) e"] = law
        res["degree bands [k e, k e + 2n]"] = band
        res["inverse_f(f(c)) = c"] = roundtrip
        kv_ok = True
        for v in kernel_codewords(rep.kernel, budget):
            kv_ok &= rep.map_f(rep.inverse_f(v)) == tuple(v)
        res["f(inverse_f(v)) = v"] = kv_ok
        res["minimal codewords preserved"] = verify_minimal_preservation(rep, budget).ok
    return res


__all__ = [
    "Part", "Representation", "RepresentationError", "build_delta_b", "part_generator",
    "balance", "build_representation", "check_structure", "verify_representation",
    "verify_minimal_preservation", "MinimalityReport",
]

