"""Endomorphism algebras and their presentations by quivers with relations.

Composition is diagrammatic: the product ``x * y`` of endomorphisms is
"x, then y" (that is, y o x).  An arrow i -> j of the presented quiver is
then an irreducible map from summand i to summand j, and paths in the
quiver compose in the same left-to-right order as paths of a bound quiver
algebra.
"""
from __future__ import annotations

from dataclasses import dataclass, field as dc_field

import networkx as nx
from networkx.algorithms.isomorphism import DiGraphMatcher

from .errors import DecompositionIncomplete, NotBasic, PresentationMismatch
from .exact_linalg import Echelon, FieldSpec, Matrix, left_inverse
from .quiver_algebra import (
    Arrow,
    BoundQuiverAlgebra,
    Path,
    Quiver,
    RelationSet,
    build_algebra,
    enumerate_paths,
    ideal_closure,
)
from .representations import Morphism, Representation, decompose, hom_basis, identity_morphism
from .representations.decompose import local_info


@dataclass
class _Block:
    src: int
    tgt: int
    maps: list  # Morphisms X_src -> X_tgt
    offset: int


class AbstractAlgebra:
    """A finite-dimensional algebra given by structure constants.

    ``mult[i][j]`` is the sparse product of basis elements i and j.  When the
    algebra comes from a module, ``summands[k]`` is the indecomposable behind
    idempotent k and basis element ``b`` is a map from ``summands[src[b]]`` to
    ``summands[tgt[b]]``.
    """

    def __init__(self, field: FieldSpec, dim: int, mult, idempotents, summands=None,
                 src=None, tgt=None, radical=None, module=None, maps=None, labels=None):
        self.field = field
        self.dim = dim
        self.mult = mult
        self.idempotents = idempotents
        self.summands = summands or []
        self.src = src or []
        self.tgt = tgt or []
        self.radical_indices = radical
        self.module = module
        self.maps = maps or []
        self.labels = labels or []

    def multiply(self, x, y) -> list:
        f = self.field
        out = [f.zero] * self.dim
        for i, xi in enumerate(x):
            if not xi:
                continue
            for j, yj in enumerate(y):
                if not yj:
                    continue
                c = f.mul(xi, yj)
                for k, v in self.mult[i][j].items():
                    out[k] = f.add(out[k], f.mul(c, v))
        return out

    def basis_vector(self, i: int) -> list:
        v = [self.field.zero] * self.dim
        v[i] = self.field.one
        return v

    def unit(self) -> list:
        f = self.field
        out = [f.zero] * self.dim
        for e in self.idempotents:
            out = [f.add(a, b) for a, b in zip(out, e)]
        return out

    def is_associative(self) -> bool:
        for i in range(self.dim):
            for j in range(self.dim):
                ij = self.multiply(self.basis_vector(i), self.basis_vector(j))
                for k in range(self.dim):
                    ek = self.basis_vector(k)
                    jk = self.multiply(self.basis_vector(j), ek)
                    if self.multiply(ij, ek) != self.multiply(self.basis_vector(i), jk):
                        return False
        return True

    def block_dims(self) -> list[list[int]]:
        """``[i][j]`` = dim e_i B e_j (= dim Hom(X_i, X_j) for endomorphism algebras)."""
        n = len(self.idempotents)
        out = [[0] * n for _ in range(n)]
        for s, t in zip(self.src, self.tgt):
            out[s][t] += 1
        return out

    def as_morphism(self, x) -> Morphism:
        """The endomorphism of the underlying module with coordinates x."""
        acc = None
        for c, phi in zip(x, self.maps):
            if c:
                term = phi.scale(c)
                acc = term if acc is None else acc + term
        if acc is None:
            acc = identity_morphism(self.module).scale(self.field.zero)
        return acc


def endo_algebra(m: Representation) -> AbstractAlgebra:
    """End(m) with a basis adapted to a decomposition of m into indecomposables."""
    f = m.field
    dec = decompose(m)
    copies = []  # (summand module, inclusion, projection)
    for s in dec.summands:
        for inc, prj in zip(s.inclusions, s.projections):
            copies.append((s.module, inc, prj))
    r = len(copies)
    blocks = {}
    src, tgt, maps, rad = [], [], [], []
    idem_index = {}
    offset = 0
    for i in range(r):
        for j in range(r):
            xi, xj = copies[i][0], copies[j][0]
            if i == j:
                info = local_info(xi)
                if info is None:
                    raise DecompositionIncomplete("summand without local endomorphism ring")
                basis = [identity_morphism(xi)] + list(info.radical)
                if len(basis) != len(info.end_basis):
                    raise DecompositionIncomplete("End(X)/rad End(X) is larger than the base field")
            else:
                basis = hom_basis(xi, xj)
            blocks[(i, j)] = _Block(i, j, basis, offset)
            for k, h in enumerate(basis):
                src.append(i)
                tgt.append(j)
                maps.append(copies[j][1] @ h @ copies[i][2])
                if i == j and k == 0:
                    idem_index[i] = offset
                else:
                    rad.append(offset + k)
            offset += len(basis)
    dim = offset
    # coordinates of Hom(X_i, X_l) via a left inverse of the flattened block basis
    coords = {}
    for key, blk in blocks.items():
        if blk.maps:
            cols = [h.flat() for h in blk.maps]
            coords[key] = left_inverse(Matrix.from_columns(f, cols, len(cols[0])))
    mult = [[{} for _ in range(dim)] for _ in range(dim)]
    for (i, j), bx in blocks.items():
        for l in range(r):
            by = blocks[(j, l)]
            target = blocks[(i, l)]
            if not bx.maps or not by.maps or not target.maps:
                continue
            linv = coords[(i, l)]
            for a, x in enumerate(bx.maps):
                for b, y in enumerate(by.maps):
                    comp = y @ x
                    if comp.is_zero():
                        continue
                    vec = linv.apply(comp.flat())
                    mult[bx.offset + a][by.offset + b] = {target.offset + k: c for k, c in enumerate(vec) if c}
    idems = []
    for i in range(r):
        e = [f.zero] * dim
        e[idem_index[i]] = f.one
        idems.append(e)
    from .ar_theory import standard_label
    labels = [standard_label(c[0]) or f"X{k + 1}" for k, c in enumerate(copies)]
    return AbstractAlgebra(f, dim, mult, idems, [c[0] for c in copies], src, tgt, sorted(rad), m, maps, labels)


# ----------------------------------------------------------------------------
# presentations
# ----------------------------------------------------------------------------

@dataclass
class AlgebraPresentation:
    quiver: Quiver
    relations: RelationSet
    correspondence: list  # vertex (1-based position) -> summand label
    source_dim: int
    field: FieldSpec
    arrow_elements: list = dc_field(default_factory=list)
    nilpotency: int = 0
    minimal: bool = True

    def to_alg(self) -> str:
        from .cli.formats import emit_alg
        return emit_alg(self.quiver, self.relations, self.field,
                        comments=[f"vertex {i + 1}: {lab}" for i, lab in enumerate(self.correspondence)])

    def to_dot(self) -> str:
        lines = ["digraph Q {"]
        for i, lab in enumerate(self.correspondence):
            lines.append(f'  {i + 1} [label="{i + 1}: {lab}"];')
        for a in self.quiver.arrows:
            lines.append(f'  {a.source} -> {a.target} [label="{a.name}"];')
        lines.append("}")
        return "\n".join(lines) + "\n"

    def to_json(self) -> dict:
        q = self.quiver
        return {
            "vertices": [{"id": i + 1, "summand": lab} for i, lab in enumerate(self.correspondence)],
            "arrows": [{"name": a.name, "source": a.source, "target": a.target} for a in q.arrows],
            "relations": [_relation_text(q, r) for r in self.relations.relations],
            "rad_powers": list(self.relations.rad_powers),
            "dimension": self.source_dim,
            "field": self.field.label,
        }


def _relation_text(q: Quiver, rel) -> str:
    from .cli.formats import format_relation
    return format_relation(q, rel)


def _span_echelon(f, vectors):
    ech = Echelon(f)
    for v in vectors:
        ech.add({k: x for k, x in enumerate(v) if x})
    return ech


def _power_layers(b: AbstractAlgebra):
    """Echelon bases of rad^1, rad^2, ... until zero (coordinates in b's basis)."""
    f = b.field
    rad_vecs = [b.basis_vector(i) for i in b.radical_indices]
    layers = [rad_vecs]
    cur = rad_vecs
    while cur:
        prods = []
        for x in cur:
            for y in rad_vecs:
                p = b.multiply(x, y)
                if any(p):
                    prods.append(p)
        ech = _span_echelon(f, prods)
        cur = [_dense(row, b.dim, f) for _, row in ech.sorted_rows()]
        layers.append(cur)
        if len(layers) > b.dim + 2:
            raise DecompositionIncomplete("radical is not nilpotent")
    return layers


def _dense(row: dict, n: int, f) -> list:
    v = [f.zero] * n
    for k, x in row.items():
        v[k] = x
    return v


def basic_presentation(b: AbstractAlgebra) -> AlgebraPresentation:
    """Quiver and a minimal generating set of relations for a basic algebra b."""
    f = b.field
    if b.module is not None:
        for i, x in enumerate(b.summands):
            for j in range(i):
                y = b.summands[j]
                if x.dims == y.dims:
                    from .representations import find_isomorphism
                    if find_isomorphism(y, x) is not None:
                        raise NotBasic(f"summands {j + 1} and {i + 1} are isomorphic")
    n = len(b.idempotents)
    layers = _power_layers(b)
    nilp = len(layers)  # rad^nilp = 0
    # arrows: basis vectors of rad completing rad^2, block by block
    arrows, elements = [], []
    order = sorted(b.radical_indices, key=lambda k: (b.src[k], b.tgt[k], k))
    ech = _span_echelon(f, layers[1]) if len(layers) > 1 else Echelon(f)
    for k in order:
        if ech.add({k: f.one}):
            arrows.append((b.src[k] + 1, b.tgt[k] + 1))
            elements.append(b.basis_vector(k))
    q = Quiver(n, [Arrow(f"x{i + 1}", s, t) for i, (s, t) in enumerate(arrows)])
    maxlen = max(nilp, 1)
    # images of all paths of length <= maxlen
    layers_q = [enumerate_paths(q, k) for k in range(maxlen + 1)]
    image = {}
    for p in layers_q[0]:
        image[p] = b.idempotents[p.source - 1]
    for k in range(1, maxlen + 1):
        for p in layers_q[k]:
            if k == 1:
                image[p] = elements[p.arrows[0]]
            else:
                prefix = Path(p.source, q.arrows[p.arrows[-2]].target, p.arrows[:-1])
                image[p] = b.multiply(image[prefix], elements[p.arrows[-1]])
    ordered = [p for layer in layers_q for p in layer]
    ordered.sort(key=Path.sort_key, reverse=True)
    columns = {p: i for i, p in enumerate(ordered)}
    rels: list[dict] = []
    closure = Echelon(f)
    for d in range(2, maxlen + 1):
        cand = [p for p in ordered if 2 <= p.length <= d]
        for g in _kernel_relations(f, cand, image, columns, b.dim):
            row = {columns[p]: c for p, c in g.items()}
            if closure.contains(row):
                continue
            rels.append(g)
            closure = ideal_closure(q, rels, f, maxlen, columns)
    rels = _drop_redundant(q, rels, f, maxlen, columns)
    relset = RelationSet(tuple(tuple((c, p) for p, c in sorted(g.items(), key=lambda t: t[0].sort_key(), reverse=True))
                               for g in rels), ())
    minimal = _is_minimal(q, rels, f, maxlen, columns)
    return AlgebraPresentation(q, relset, list(b.labels) or [f"e{i + 1}" for i in range(n)], b.dim, f,
                               elements, nilp, minimal)


def _kernel_relations(f, paths, image, columns, dim):
    """Basis of the kernel of span(paths) -> B."""
    if not paths:
        return []
    # rows: coordinates of B; columns: paths in the given (long-first) order
    rows = []
    for k in range(dim):
        row = {}
        for j, p in enumerate(paths):
            x = image[p][k]
            if x:
                row[j] = x
        if row:
            rows.append(row)
    from .exact_linalg import kernel_vectors
    out = []
    for v in kernel_vectors(f, rows, len(paths)):
        out.append({paths[j]: x for j, x in enumerate(v) if x})
    return out


def _closure_contains(q, gens, f, maxlen, columns, g) -> bool:
    if not gens:
        return False
    ech = ideal_closure(q, gens, f, maxlen, columns)
    return ech.contains({columns[p]: c for p, c in g.items()})


def _drop_redundant(q, rels, f, maxlen, columns):
    out = list(rels)
    i = len(out) - 1
    while i >= 0:
        rest = out[:i] + out[i + 1:]
        if _closure_contains(q, rest, f, maxlen, columns, out[i]):
            out = rest
        i -= 1
    return out


def _is_minimal(q, rels, f, maxlen, columns) -> bool:
    return not any(_closure_contains(q, rels[:i] + rels[i + 1:], f, maxlen, columns, r) for i, r in enumerate(rels))


def presentation_to_algebra(p: AlgebraPresentation, field: FieldSpec | None = None,
                            len_cap: int = 20) -> BoundQuiverAlgebra:
    """Build kQ/I from a presentation, insisting on the source dimension."""
    a = build_algebra(p.quiver, p.relations, field or p.field, len_cap)
    if a.dim != p.source_dim:
        raise PresentationMismatch(f"presented algebra has dimension {a.dim}, expected {p.source_dim}")
    return a


def cartan_matrix(a: BoundQuiverAlgebra) -> list[list[int]]:
    """``[i][j]`` = dim e_i A e_j (paths i -> j)."""
    return [[len(a.between[(i, j)]) for j in a.vertices] for i in a.vertices]


# ----------------------------------------------------------------------------
# quiver isomorphism
# ----------------------------------------------------------------------------

def _weighted(q: Quiver) -> nx.DiGraph:
    g = nx.DiGraph()
    g.add_nodes_from(q.vertices)
    for a in q.arrows:
        if g.has_edge(a.source, a.target):
            g[a.source][a.target]["count"] += 1
        else:
            g.add_edge(a.source, a.target, count=1)
    return g


def quiver_isomorphism(q1: Quiver, q2: Quiver) -> dict | None:
    """A vertex bijection carrying arrow multiplicities of q1 onto q2, or None."""
    if q1.vertex_count != q2.vertex_count or len(q1.arrows) != len(q2.arrows):
        return None
    gm = DiGraphMatcher(_weighted(q1), _weighted(q2), edge_match=lambda x, y: x["count"] == y["count"])
    if gm.is_isomorphic():
        return dict(gm.mapping)
    return None


def quivers_isomorphic(q1: Quiver, q2: Quiver) -> bool:
    return quiver_isomorphism(q1, q2) is not None
