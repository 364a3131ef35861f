"""Projective resolutions, Ext, homological dimensions and complexity.

Long syzygy sequences are tracked through a :class:`SyzygyGraph`: each
indecomposable non-projective summand that occurs is stored once, its
syzygy is computed and decomposed once, and Omega^n of a module becomes an
integer multiplicity vector.  This is exact (Omega is additive) and keeps
the cost independent of how fast the resolution grows.
"""
from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass, field as dc_field
from typing import Sequence

import networkx as nx

from .errors import CapExceeded, NotRadicalSquareZero
from .exact_linalg import Echelon, Matrix
from .quiver_algebra import BoundQuiverAlgebra, opposite
from .representations import (
    Morphism,
    Representation,
    decompose,
    dual,
    dual_morphism,
    dual_regular_module,
    find_isomorphism,
    hom_basis,
    hom_dim,
    indec_injective,
    indec_projective,
    kernel,
    morphism_from_generators,
    projective_cover,
    radical_bases,
    regular_module,
    simple,
    top,
)
from .representations.decompose import _cached_local, _iso_local, local_info, standard_candidates
from .representations.module import _cache, generator_blocks, zero_module

DEFAULT_WINDOW = 40
DEFAULT_CAP = 40
DEFAULT_CLASS_CAP = 200


# ----------------------------------------------------------------------------
# result types
# ----------------------------------------------------------------------------

@dataclass(frozen=True)
class SyzygyWitness:
    """``module`` is an indecomposable summand of both Omega^a and Omega^b (a < b)
    and recurs as a summand of its own (b - a)-th syzygy."""

    a: int
    b: int
    module: Representation = dc_field(compare=False)


@dataclass(frozen=True)
class HomDimension:
    kind: str  # "finite" | "infinite" | "at_least"
    value: int | None = None
    witness: SyzygyWitness | None = dc_field(default=None, compare=False)

    @classmethod
    def finite(cls, d):
        return cls("finite", d)

    @classmethod
    def infinite(cls, witness):
        return cls("infinite", None, witness)

    @classmethod
    def at_least(cls, cap):
        return cls("at_least", cap)

    @property
    def is_finite(self):
        return self.kind == "finite"

    @property
    def is_infinite(self):
        return self.kind == "infinite"

    def __str__(self):
        if self.kind == "finite":
            return f"Finite({self.value})"
        if self.kind == "infinite":
            w = self.witness
            return f"InfiniteCertified(a={w.a}, b={w.b})" if w else "InfiniteCertified"
        return f"AtLeast({self.value})"

    def to_json(self):
        out = {"kind": self.kind, "value": self.value}
        if self.witness is not None:
            out["witness"] = {"a": self.witness.a, "b": self.witness.b,
                              "module_dims": list(self.witness.module.dims)}
        return out


@dataclass
class ComplexityVerdict:
    """Certified growth class of a minimal projective resolution.

    kind is one of ``zero``, ``one_certified``, ``infinite_certified``,
    ``polynomial_estimate`` (never certified) or ``inconclusive``.
    """

    kind: str
    term_dims: list
    a: int | None = None
    p: int | None = None
    m: int | None = None
    degree: int | None = None
    window: int = 0
    projective_dimension: int | None = None
    lower_bound_verified: bool | None = None

    def __str__(self):
        if self.kind == "zero":
            return f"Zero(pd={self.projective_dimension})"
        if self.kind == "one_certified":
            return f"OneCertified(a={self.a}, p={self.p})"
        if self.kind == "infinite_certified":
            return f"InfiniteCertified(a={self.a}, p={self.p}, m={self.m})"
        if self.kind == "polynomial_estimate":
            return f"PolynomialEstimate(degree={self.degree}, window={self.window}, uncertified)"
        return f"Inconclusive(window={self.window})"

    @property
    def complexity(self):
        """cx as far as certified: 0, 1, math.inf, or None."""
        return {"zero": 0, "one_certified": 1, "infinite_certified": math.inf}.get(self.kind)

    def to_json(self):
        return {
            "kind": self.kind,
            "a": self.a,
            "p": self.p,
            "m": self.m,
            "degree": self.degree,
            "window": self.window,
            "projective_dimension": self.projective_dimension,
            "term_dims": list(self.term_dims),
            "lower_bound_verified": self.lower_bound_verified,
        }


# ----------------------------------------------------------------------------
# resolutions
# ----------------------------------------------------------------------------

@dataclass
class ProjectiveResolution:
    """Minimal projective resolution ... -> P_1 -> P_0 -> target.

    ``covers[n]`` is P_n -> Omega^n, ``inclusions[n]`` is Omega^(n+1) -> P_n,
    ``differentials[n-1]`` is d_n: P_n -> P_(n-1) for n >= 1.
    """

    target: Representation
    terms: list
    covers: list
    syzygies: list
    inclusions: list
    differentials: list

    @property
    def length(self) -> int:
        return len(self.terms) - 1

    def term_dims(self) -> list[int]:
        return [p.dim for p in self.terms]

    def term_summands(self, n: int) -> Counter:
        """Multiplicity of each P_v in P_n."""
        return Counter(self.terms[n].generators)

    def check(self) -> list[str]:
        """Violated invariants (empty when the resolution is exact and minimal)."""
        problems = []
        f = self.target.field
        # augmentation onto the target
        if self.terms and self.covers[0].rank() != self.target.dim:
            problems.append("P_0 -> M is not onto")
        for n, d in enumerate(self.differentials, start=1):
            if n >= 2 and not (self.differentials[n - 2] @ d).is_zero():
                problems.append(f"d_{n - 1} d_{n} != 0")
            if n == 1 and not (self.covers[0] @ d).is_zero():
                problems.append("augmentation d_1 != 0")
            # exactness at P_(n-1): ker d_(n-1) = im d_n
            prev = self.covers[0] if n == 1 else self.differentials[n - 2]
            ker_dim = sum(b.ncols - b.rank() for b in prev.blocks)
            if d.rank() != ker_dim:
                problems.append(f"not exact at P_{n - 1}")
            # minimality: im d_n inside rad P_(n-1)
            rad = radical_bases(self.terms[n - 1])
            for v, blk in enumerate(d.blocks):
                if blk.ncols == 0:
                    continue
                ech = Echelon(f)
                for col in rad[v].columns():
                    ech.add({j: x for j, x in enumerate(col) if x})
                if any(not ech.contains({j: x for j, x in enumerate(col) if x}) for col in blk.columns()):
                    problems.append(f"image of d_{n} not in rad P_{n - 1}")
                    break
        return problems


def min_proj_resolution(m: Representation, steps: int) -> ProjectiveResolution:
    """Iterated projective covers P_0, ..., P_steps."""
    if steps < 0:
        raise ValueError("steps must be >= 0")
    terms, covers, syz, incs, diffs = [], [], [m], [], []
    cur = m
    for n in range(steps + 1):
        p, pi = projective_cover(cur)
        k, inc = kernel(pi)
        terms.append(p)
        covers.append(pi)
        incs.append(inc)
        syz.append(k)
        if n >= 1:
            diffs.append(incs[n - 1] @ pi)
        cur = k
    return ProjectiveResolution(m, terms, covers, syz, incs, diffs)


# ----------------------------------------------------------------------------
# Ext
# ----------------------------------------------------------------------------

def _hom_from_projective(p: Representation, n: Representation) -> list[Morphism]:
    """Basis of Hom(P, n) for a canonical projective P: one generator sent to one basis vector."""
    f = n.field
    out = []
    zeros = [[f.zero] * n.dims[g - 1] for g in p.generators]
    for k, g in enumerate(p.generators):
        for j in range(n.dims[g - 1]):
            images = [list(z) for z in zeros]
            images[k][j] = f.one
            out.append(morphism_from_generators(p, n, images))
    return out


@dataclass
class Ext1Data:
    """Ext^1(m, n) as Hom(Omega m, n) modulo maps extending to the cover P_0."""

    syzygy: Representation
    inclusion: Morphism
    cover: Morphism
    representatives: list
    boundaries: list
    hom: list

    @property
    def dim(self):
        return len(self.representatives)


def ext_data(i: int, m: Representation, n: Representation) -> Ext1Data:
    """Ext^i(m, n) = Ext^1(Omega^(i-1) m, n) with explicit cocycle representatives."""
    if i < 1:
        raise ValueError("Ext degree must be >= 1")
    from .representations.module import _same_algebra
    _same_algebra(m, n)
    cur = m
    for _ in range(i - 1):
        _, pi = projective_cover(cur)
        cur, _ = kernel(pi)
    p, pi = projective_cover(cur)
    omega, inc = kernel(pi)
    f = m.field
    hom = hom_basis(omega, n)
    if not hom:
        return Ext1Data(omega, inc, pi, [], [], [])
    ech = Echelon(f)
    boundaries = []
    for phi in _hom_from_projective(p, n):
        r = phi @ inc
        if ech.add({j: x for j, x in enumerate(r.flat()) if x}):
            boundaries.append(r)
    reps = []
    for h in hom:
        if ech.add({j: x for j, x in enumerate(h.flat()) if x}):
            reps.append(h)
    return Ext1Data(omega, inc, pi, reps, boundaries, hom)


def ext_dim(i: int, m: Representation, n: Representation) -> int:
    return ext_data(i, m, n).dim


def ext_dim_via_complex(i: int, m: Representation, n: Representation) -> int:
    """Ext^i as cohomology of Hom(P_*, n); an independent cross-check of :func:`ext_dim`."""
    res = min_proj_resolution(m, i + 1)
    f = m.field

    def cochain_dim(k):
        return sum(n.dims[g - 1] for g in res.terms[k].generators)

    def coboundary_rank(k):
        # d^*: Hom(P_(k-1), n) -> Hom(P_k, n), phi -> phi d_k
        if k == 0:
            return 0
        d = res.differentials[k - 1]
        pk = res.terms[k]
        gens = pk.generators
        blocks_at = {w: generator_blocks(pk, w) for w in set(gens)}
        ech = Echelon(f)
        for phi in _hom_from_projective(res.terms[k - 1], n):
            comp = phi @ d
            vec = []
            for idx, g in enumerate(gens):
                off, size, basis = blocks_at[g][idx]
                e = [f.zero] * pk.dims[g - 1]
                triv = basis.index(pk.algebra.index[_triv(g)])
                e[off + triv] = f.one
                vec.extend(comp.blocks[g - 1].apply(e))
            ech.add({j: x for j, x in enumerate(vec) if x})
        return len(ech)

    return cochain_dim(i) - coboundary_rank(i + 1) - coboundary_rank(i)


def _triv(v):
    from .quiver_algebra import trivial_path
    return trivial_path(v)


# ----------------------------------------------------------------------------
# syzygy class graph
# ----------------------------------------------------------------------------

class SyzygyGraph:
    """Isomorphism classes of indecomposables met along syzygy sequences over one algebra."""

    def __init__(self, algebra: BoundQuiverAlgebra, class_cap: int = DEFAULT_CLASS_CAP):
        self.algebra = algebra
        self.class_cap = class_cap
        self.classes: list[Representation] = []
        self.infos = []
        self.projective: list[bool] = []
        self.cover_dims: list[int] = []
        self.top_dims: list[tuple] = []
        self._omega: dict[int, Counter] = {}
        self._extra: list[Representation] = []
        self._std = {id(x) for x, _ in standard_candidates(algebra)}
        self._proj_tags = {}
        for v in algebra.vertices:
            self._index(indec_projective(algebra, v), projective=True)

    @classmethod
    def for_algebra(cls, a: BoundQuiverAlgebra) -> "SyzygyGraph":
        c = _cache(a)
        g = c.get("syzygy-graph")
        if g is None:
            g = cls(a)
            c["syzygy-graph"] = g
        return g

    def _index(self, x: Representation, projective: bool | None = None) -> int:
        for i, y in enumerate(self.classes):
            if y.dims == x.dims and _iso_local(y, x, self.infos[i]) is not None:
                return i
        if len(self.classes) >= self.class_cap:
            raise CapExceeded(f"more than {self.class_cap} indecomposable classes")
        info = local_info(x)
        self.classes.append(x)
        self.infos.append(info)
        if projective is None:
            projective = any(
                indec_projective(self.algebra, v).dims == x.dims
                and _iso_local(x, indec_projective(self.algebra, v), info) is not None
                for v in self.algebra.vertices
            )
        self.projective.append(projective)
        t, _ = top(x)
        self.top_dims.append(t.dims)
        self.cover_dims.append(sum(d * indec_projective(self.algebra, v).dim for v, d in zip(self.algebra.vertices, t.dims)))
        if id(x) not in self._std:
            self._extra.append(x)
        return len(self.classes) - 1

    def classify(self, m: Representation) -> Counter:
        """Multiplicity vector of m over the known classes (new classes are added)."""
        if m.is_zero():
            return Counter()
        d = decompose(m, candidates=self._extra)
        out = Counter()
        for s in d.summands:
            out[self._index(s.module)] += s.multiplicity
        return out

    def omega(self, i: int) -> Counter:
        if i not in self._omega:
            if self.projective[i]:
                self._omega[i] = Counter()
            else:
                _, pi = projective_cover(self.classes[i])
                k, _ = kernel(pi)
                self._omega[i] = self.classify(k)
        return self._omega[i]

    def step(self, vec: Counter) -> Counter:
        out = Counter()
        for i, mult in vec.items():
            for j, k in self.omega(i).items():
                out[j] += mult * k
        return out

    def strip(self, vec: Counter) -> Counter:
        return Counter({i: k for i, k in vec.items() if not self.projective[i]})

    def cover_dim(self, vec: Counter) -> int:
        return sum(k * self.cover_dims[i] for i, k in vec.items())

    def top_vector(self, vec: Counter) -> tuple:
        n = self.algebra.n
        return tuple(sum(k * self.top_dims[i][v] for i, k in vec.items()) for v in range(n))

    def module_of(self, vec: Counter) -> list[tuple[Representation, int]]:
        return [(self.classes[i], k) for i, k in sorted(vec.items())]

    def sequence(self, m: Representation, window: int):
        """Omega^0..Omega^window as multiplicity vectors (Omega^0 stripped of projectives),
        plus the full class vector of m.  Stops early at zero or at the class cap."""
        full = self.classify(m)
        vecs = [self.strip(full)]
        try:
            for _ in range(window):
                if not vecs[-1]:
                    vecs.append(Counter())
                    continue
                vecs.append(self.step(vecs[-1]))
        except CapExceeded:
            pass
        return full, vecs

    def to_networkx(self) -> nx.MultiDiGraph:
        g = nx.MultiDiGraph()
        for i in range(len(self.classes)):
            g.add_node(i)
        for i, vec in self._omega.items():
            for j, k in vec.items():
                g.add_edge(i, j, weight=k)
        return g


def syzygy_graph(a: BoundQuiverAlgebra) -> SyzygyGraph:
    return SyzygyGraph.for_algebra(a)


# ----------------------------------------------------------------------------
# dimensions
# ----------------------------------------------------------------------------

def proj_dim(m: Representation, cap: int = DEFAULT_CAP) -> HomDimension:
    """Projective dimension, certified infinite via a recurring syzygy summand."""
    g = syzygy_graph(m.algebra)
    try:
        start = g.strip(g.classify(m))
    except CapExceeded:
        return HomDimension.at_least(0)
    if not start:
        return HomDimension.finite(0)
    depth = {i: 0 for i in start}
    frontier = list(start)
    edges = {}
    level = 0
    while frontier:
        if level >= cap:
            break
        nxt = []
        for i in frontier:
            try:
                om = g.omega(i)
            except CapExceeded:
                return HomDimension.at_least(level + 1)
            edges[i] = [j for j in om if not g.projective[j]]
            for j in edges[i]:
                if j not in depth:
                    depth[j] = level + 1
                    nxt.append(j)
        frontier = nxt
        level += 1
    # cycle detection on the explored subgraph
    dg = nx.DiGraph()
    dg.add_nodes_from(depth)
    for i, js in edges.items():
        for j in js:
            dg.add_edge(i, j)
    try:
        cycle = nx.find_cycle(dg)
    except nx.NetworkXNoCycle:
        cycle = None
    if cycle is not None:
        node = min((u for u, _ in cycle), key=lambda u: depth[u])
        period = len(cycle)
        # rotate the cycle so it starts at the shallowest node
        return HomDimension.infinite(SyzygyWitness(depth[node], depth[node] + period, g.classes[node]))
    if frontier:
        return HomDimension.at_least(cap)
    longest = {}
    for i in reversed(list(nx.topological_sort(dg))):
        longest[i] = 1 + max((longest[j] for j in dg.successors(i)), default=0)
    return HomDimension.finite(max(longest[i] for i in start))


def global_dimension(a: BoundQuiverAlgebra, cap: int = DEFAULT_CAP) -> HomDimension:
    """Maximum of the projective dimensions of the simple modules."""
    best = HomDimension.finite(0)
    for v in a.vertices:
        d = proj_dim(simple(a, v), cap)
        if d.is_infinite:
            return d
        if d.kind == "at_least":
            best = d if best.kind != "at_least" or d.value > best.value else best
        elif best.is_finite and d.value > best.value:
            best = d
    return best


@dataclass
class InjectiveCoresolution:
    """0 -> target -> I^0 -> I^1 -> ... obtained by dualising a projective resolution over A^op."""

    target: Representation
    terms: list
    differentials: list
    coaugmentation: Morphism
    projective_flags: list
    summand_vertices: list


def injective_projective_vertices(a: BoundQuiverAlgebra) -> set[int]:
    """Vertices v whose indecomposable injective I_v is also projective."""
    c = _cache(a)
    if "inj-proj" not in c:
        out = set()
        for v in a.vertices:
            iv = indec_injective(a, v)
            for u in a.vertices:
                pu = indec_projective(a, u)
                if pu.dims == iv.dims and find_isomorphism(iv, pu) is not None:
                    out.add(v)
                    break
        c["inj-proj"] = out
    return c["inj-proj"]


def min_inj_coresolution(m: Representation, steps: int) -> InjectiveCoresolution:
    res = min_proj_resolution(dual(m), steps)
    terms = [dual(p).renamed("+".join(f"I{v}" for v in p.generators)) for p in res.terms]
    diffs = [dual_morphism(d) for d in res.differentials]
    coaug = dual_morphism(res.covers[0])
    coaug = Morphism(m, terms[0], coaug.blocks)
    good = injective_projective_vertices(m.algebra)
    flags = [all(v in good for v in p.generators) for p in res.terms]
    return InjectiveCoresolution(m, terms, diffs, coaug, flags, [list(p.generators) for p in res.terms])


def dominant_dimension(a: BoundQuiverAlgebra, cap: int = DEFAULT_CAP) -> HomDimension:
    """Index of the first non-projective term in the minimal injective coresolution of A_A."""
    good = injective_projective_vertices(a)
    op = opposite(a)
    g = syzygy_graph(op)
    full, vecs = g.sequence(dual(regular_module(a)), cap)
    for n in range(min(cap, len(vecs))):
        vec = full if n == 0 else vecs[n]
        tops = g.top_vector(vec)
        if any(t and (v + 1) not in good for v, t in enumerate(tops)):
            return HomDimension.finite(n)
    return HomDimension.at_least(cap)


@dataclass
class HigherAuslanderReport:
    result: bool
    gldim: HomDimension
    domdim: HomDimension

    def __bool__(self):
        return self.result


def is_higher_auslander(a: BoundQuiverAlgebra, cap: int = DEFAULT_CAP) -> HigherAuslanderReport:
    gl = global_dimension(a, cap)
    dd = dominant_dimension(a, cap)
    ok = gl.is_finite and dd.is_finite and gl.value == dd.value and gl.value >= 2
    return HigherAuslanderReport(ok, gl, dd)


# ----------------------------------------------------------------------------
# complexity
# ----------------------------------------------------------------------------

def _dominates(big: Counter, small: Counter) -> int:
    """Largest m with big >= m * small componentwise (small nonzero)."""
    return min(big.get(i, 0) // k for i, k in small.items())


def complexity_report(m: Representation, window: int = DEFAULT_WINDOW) -> ComplexityVerdict:
    """Term dimensions of the minimal resolution and a certified growth class where possible."""
    g = syzygy_graph(m.algebra)
    full, vecs = g.sequence(m, window)
    dims = [g.cover_dim(full)] + [g.cover_dim(v) for v in vecs[1:]]
    computed = len(vecs) - 1
    for n, v in enumerate(vecs):
        if not v:
            return ComplexityVerdict("zero", dims, window=computed, projective_dimension=max(n - 1, 0) if n else 0)
    # smallest a + p first
    for total in range(1, computed + 1):
        for a in range(0, total):
            p = total - a
            va, vb = vecs[a], vecs[a + p]
            if va == vb:
                return ComplexityVerdict("one_certified", dims, a=a, p=p, m=1, window=computed)
            mult = _dominates(vb, va)
            if mult >= 2:
                ok = all(dims[n] >= mult ** ((n - a) // p) for n in range(a, computed + 1))
                return ComplexityVerdict("infinite_certified", dims, a=a, p=p, m=mult, window=computed,
                                         lower_bound_verified=ok)
    if computed >= 4:
        lo = max(1, computed // 2)
        xs = [math.log(n) for n in range(lo, computed + 1)]
        ys = [math.log(dims[n]) for n in range(lo, computed + 1)]
        mx, my = sum(xs) / len(xs), sum(ys) / len(ys)
        var = sum((x - mx) ** 2 for x in xs)
        slope = sum((x - mx) * (y - my) for x, y in zip(xs, ys)) / var if var else 0.0
        return ComplexityVerdict("polynomial_estimate", dims, degree=max(0, round(slope)), window=computed)
    return ComplexityVerdict("inconclusive", dims, window=computed)


@dataclass(frozen=True)
class RadSquareZeroVerdict:
    kind: str  # "finite_pd" | "bounded" | "polynomial" | "exponential"
    degree: int | None = None

    def __str__(self):
        if self.kind == "polynomial":
            return f"Polynomial({self.degree})"
        return {"finite_pd": "FinitePd", "bounded": "Bounded", "exponential": "Exponential"}[self.kind]


def radsq_complexity_exact(a: BoundQuiverAlgebra, i: int) -> RadSquareZeroVerdict:
    """Exact growth class of the resolution of S_i over a radical-square-zero algebra.

    Omega(S_j) is the direct sum of S_l over the arrows j -> l, so syzygy
    multiplicities are powers of the arrow-count matrix.  Growth is decided
    from the strongly connected components reachable from i.
    """
    if not a.is_radical_square_zero():
        raise NotRadicalSquareZero(f"J^2 != 0 (nilpotency degree {a.nilpotency})")
    if i not in a.vertices:
        raise ValueError(f"vertex {i} out of range")
    g = nx.MultiDiGraph()
    g.add_nodes_from(a.vertices)
    for arr in a.quiver.arrows:
        g.add_edge(arr.source, arr.target)
    reach = nx.descendants(g, i) | {i}
    sub = g.subgraph(reach)
    simple_graph = nx.DiGraph(sub)
    cond = nx.condensation(simple_graph)
    cyclic = {}
    for c, data in cond.nodes(data=True):
        members = data["members"]
        arrows_inside = sum(1 for u, v in sub.edges() if u in members and v in members)
        if len(members) > 1 or arrows_inside:
            if arrows_inside > len(members):
                return RadSquareZeroVerdict("exponential")
            cyclic[c] = True
    if not cyclic:
        return RadSquareZeroVerdict("finite_pd")
    chain = {}
    for c in reversed(list(nx.topological_sort(cond))):
        here = 1 if c in cyclic else 0
        chain[c] = here + max((chain[d] for d in cond.successors(c)), default=0)
    k = max(chain.values())
    return RadSquareZeroVerdict("bounded") if k == 1 else RadSquareZeroVerdict("polynomial", k - 1)


def radsq_multiplicities(a: BoundQuiverAlgebra, i: int, steps: int) -> list[list[int]]:
    """Multiplicity vectors e_i C^n of the simples in Omega^n(S_i), n = 0..steps."""
    c = a.quiver.arrow_count_matrix()
    n = a.n
    v = [0] * n
    v[i - 1] = 1
    out = [v]
    for _ in range(steps):
        v = [sum(v[j] * c[j][k] for j in range(n)) for k in range(n)]
        out.append(v)
    return out
