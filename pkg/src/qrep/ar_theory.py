"""Transpose, Auslander-Reiten translates, stable Hom, almost split sequences
and AR-quiver knitting."""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field as dc_field

import networkx as nx

from .errors import CapExceeded, NotIndecomposable, NotRadicalSquareZero, ProjectiveInput
from .exact_linalg import Echelon, Matrix, left_inverse, solve
from .homology import ext_data, ext_dim
from .quiver_algebra import BoundQuiverAlgebra, opposite, trivial_path
from .representations import (
    Morphism,
    Representation,
    cokernel,
    decompose,
    direct_sum,
    dual,
    hom_basis,
    hom_dim,
    identity_morphism,
    indec_injective,
    indec_projective,
    kernel,
    morphism_from_generators,
    projective_cover,
    quotient,
    radical,
    simple,
    socle,
    top,
    zero_module,
)
from .representations.decompose import _iso_local, local_info
from .representations.module import _column_space, generator_blocks

DEFAULT_KNIT_CAP = 200


# ----------------------------------------------------------------------------
# transpose and translates
# ----------------------------------------------------------------------------

def _left_projective_sum(a: BoundQuiverAlgebra, gens) -> Representation:
    """The sum of the left projectives A e_g, as a representation of the opposite algebra.

    Vertex w carries e_w A e_g (paths w -> g); the reversed arrow of a: s -> t
    maps the t-space to the s-space by left multiplication with a.
    """
    op = opposite(a)
    f = a.field
    q = a.quiver
    dims = [sum(len(a.between[(w, g)]) for g in gens) for w in a.vertices]
    maps = []
    for i, arr in enumerate(q.arrows):
        s, t = arr.source, arr.target
        rows = [[f.zero] * dims[t - 1] for _ in range(dims[s - 1])]
        apath_idx = _arrow_basis_index(a, i)
        roff = coff = 0
        for g in gens:
            src = a.between[(t, g)]
            tgt = a.between[(s, g)]
            tpos = {b: k for k, b in enumerate(tgt)}
            if apath_idx is not None:
                for c, x in enumerate(src):
                    for k, v in a.mult[apath_idx][x].items():
                        rows[roff + tpos[k]][coff + c] = f.add(rows[roff + tpos[k]][coff + c], v)
            roff += len(tgt)
            coff += len(src)
        maps.append(Matrix(f, rows, dims[t - 1]))
    return Representation(op, dims, maps, check=False)


def _arrow_basis_index(a: BoundQuiverAlgebra, i: int):
    from .quiver_algebra import Path
    arr = a.quiver.arrows[i]
    return a.index.get(Path(arr.source, arr.target, (i,)))


def _presentation(m: Representation):
    """Minimal presentation P1 -> P0 -> m -> 0 as (P0, P1, d1)."""
    p0, pi = projective_cover(m)
    k, inc = kernel(pi)
    p1, pi1 = projective_cover(k)
    return p0, p1, inc @ pi1


def _generator_images(d: Morphism) -> list[list[dict]]:
    """For d: P1 -> P0 between canonical projectives, ``c[h][k]`` is the element of
    e_{v_k} A e_{u_h} with d(gen_h) = sum_k gen_k * c[h][k]."""
    p1, p0 = d.source, d.target
    a = p1.algebra
    out = []
    for h, u in enumerate(p1.generators):
        off, _, idx = generator_blocks(p1, u)[h]
        col = off + idx.index(a.index[trivial_path(u)])
        vec = [d.blocks[u - 1][r, col] for r in range(p0.dims[u - 1])]
        row = []
        for off0, size0, idx0 in generator_blocks(p0, u):
            row.append({idx0[j]: vec[off0 + j] for j in range(size0) if vec[off0 + j]})
        out.append(row)
    return out


def transpose(m: Representation) -> Representation:
    """Tr m = coker(Hom(P0, A) -> Hom(P1, A)) over the opposite algebra."""
    a = m.algebra
    op = opposite(a)
    if m.is_zero():
        return zero_module(op)
    p0, p1, d1 = _presentation(m)
    src = _left_projective_sum(a, p0.generators)
    tgt = _left_projective_sum(a, p1.generators)
    if tgt.is_zero():
        return zero_module(op)
    f = a.field
    coeffs = _generator_images(d1)
    blocks = []
    for w in a.vertices:
        rows = [[f.zero] * src.dims[w - 1] for _ in range(tgt.dims[w - 1])]
        coff = 0
        for k, vk in enumerate(p0.generators):
            xs = a.between[(w, vk)]
            roff = 0
            for h, uh in enumerate(p1.generators):
                ys = a.between[(w, uh)]
                ypos = {b: r for r, b in enumerate(ys)}
                c = coeffs[h][k]
                if c:
                    for col, x in enumerate(xs):
                        for b, cb in c.items():
                            for r, v in a.mult[x][b].items():
                                rr = roff + ypos[r]
                                rows[rr][coff + col] = f.add(rows[rr][coff + col], f.mul(cb, v))
                roff += len(ys)
            coff += len(xs)
        blocks.append(Matrix(f, rows, src.dims[w - 1]))
    phi = Morphism(src, tgt, blocks)
    tr, _ = cokernel(phi)
    return tr.renamed(f"Tr {m.name}".strip())


def tau(m: Representation) -> Representation:
    """AR translate D Tr m (projective summands vanish)."""
    return dual(transpose(m)).renamed(f"tau {m.name}".strip())


def tau_inv(m: Representation) -> Representation:
    """Inverse AR translate Tr D m (injective summands vanish)."""
    return transpose(dual(m)).renamed(f"tau- {m.name}".strip())


def stable_hom_dim(m: Representation, n: Representation) -> int:
    """dim Hom(m, n) modulo maps factoring through a projective (equivalently through P(n) -> n)."""
    total = hom_dim(m, n)
    if total == 0 or n.is_zero():
        return total
    p, pi = projective_cover(n)
    ech = Echelon(m.field)
    for g in hom_basis(m, p):
        c = pi @ g
        ech.add({j: x for j, x in enumerate(c.flat()) if x})
    return total - len(ech)


def ar_formula_sides(x: Representation, y: Representation) -> tuple[int, int]:
    """(dim Ext^1(x, y), dim stable Hom(tau^- y, x))."""
    return ext_dim(1, x, y), stable_hom_dim(tau_inv(y), x)


def ar_formula_check(x: Representation, y: Representation) -> bool:
    lhs, rhs = ar_formula_sides(x, y)
    return lhs == rhs


# ----------------------------------------------------------------------------
# almost split sequences
# ----------------------------------------------------------------------------

@dataclass
class AlmostSplitSequence:
    """0 -> left --f--> middle --g--> right -> 0."""

    left: Representation
    middle: Representation
    right: Representation
    f: Morphism
    g: Morphism
    decomposition: object = None

    def check(self) -> list[str]:
        problems = []
        if not (self.g @ self.f).is_zero():
            problems.append("g f != 0")
        if self.f.rank() != self.left.dim:
            problems.append("f not injective")
        if self.g.rank() != self.right.dim:
            problems.append("g not surjective")
        if self.middle.dim != self.left.dim + self.right.dim:
            problems.append("dim E != dim X + dim tau X")
        info = local_info(self.right)
        if info is None:
            problems.append("right term not indecomposable")
        elif any(info.residue(self.g @ s) for s in hom_basis(self.right, self.middle)):
            problems.append("sequence splits")
        if local_info(self.left) is None:
            problems.append("left term not indecomposable")
        return problems


def is_projective_indecomposable(x: Representation, info=None) -> bool:
    info = info or local_info(x)
    t, _ = top(x)
    if t.dim != 1:
        return False
    v = next(i + 1 for i, d in enumerate(t.dims) if d)
    p = indec_projective(x.algebra, v)
    return p.dims == x.dims and _iso_local(x, p, info) is not None


def is_injective_indecomposable(x: Representation, info=None) -> bool:
    info = info or local_info(x)
    s, _ = socle(x)
    if s.dim != 1:
        return False
    v = next(i + 1 for i, d in enumerate(s.dims) if d)
    inj = indec_injective(x.algebra, v)
    return inj.dims == x.dims and _iso_local(x, inj, info) is not None


def _lift_endomorphism(e: Morphism, p0: Representation, pi: Morphism) -> Morphism:
    """F: P0 -> P0 with pi F = e pi."""
    images = []
    for k, v in enumerate(p0.generators):
        off, _, idx = generator_blocks(p0, v)[k]
        col = off + idx.index(p0.algebra.index[trivial_path(v)])
        target = e.blocks[v - 1].apply(pi.blocks[v - 1].column(col))
        pre = solve(pi.blocks[v - 1], target)
        images.append(pre)
    return morphism_from_generators(p0, p0, images)


def almost_split_sequence(x: Representation) -> AlmostSplitSequence:
    """The almost split sequence ending in x, as a pushout of 0 -> Omega x -> P0 -> x -> 0."""
    info = local_info(x)
    if info is None:
        raise NotIndecomposable("right term must be indecomposable with local endomorphism ring")
    if is_projective_indecomposable(x, info):
        raise ProjectiveInput("projective modules have no almost split sequence ending in them")
    f = x.field
    t = tau(x)
    data = ext_data(1, x, t)
    omega, inc, pi = data.syzygy, data.inclusion, data.cover
    p0 = pi.source
    reps, bounds = data.representatives, data.boundaries
    # coordinates of Hom(omega, t) in the basis boundaries + representatives
    basis_cols = [h.flat() for h in bounds + reps]
    coord = Matrix.from_columns(f, basis_cols, len(basis_cols[0]))
    inc_inv = [left_inverse(b) if b.ncols else None for b in inc.blocks]

    def restrict(e: Morphism) -> Morphism:
        big = _lift_endomorphism(e, p0, pi) @ inc
        blocks = [inc_inv[v] @ big.blocks[v] if inc_inv[v] is not None else Matrix.zeros(f, 0, 0)
                  for v in range(len(omega.dims))]
        return Morphism(omega, omega, blocks)

    nb = len(bounds)
    # joint kernel of the radical action on Ext^1(x, tau x)
    rows = []
    for r in info.radical:
        rr = restrict(r)
        for j, eta in enumerate(reps):
            image = solve(coord, (eta @ rr).flat())
            rows.append((j, image[nb:]))
    amat = [[f.zero] * len(reps) for _ in range(len(reps) * max(1, len(info.radical)))]
    for idx, (j, img) in enumerate(rows):
        block = idx // len(reps)
        for i, v in enumerate(img):
            amat[block * len(reps) + i][j] = v
    act = Matrix(f, amat, len(reps))
    soc = act.kernel()
    if soc.ncols == 0:
        raise NotIndecomposable("Ext^1(x, tau x) has no socle element")
    xi = [soc[i, 0] for i in range(soc.nrows)]
    eta = reps[0].scale(f.zero)
    for c, h in zip(xi, reps):
        if c:
            eta = eta + h.scale(c)
    # pushout: E = (P0 + t) / {(inc w, -eta w)}
    s, injs, projs = direct_sum([p0, t])
    emb = injs[0] @ inc - injs[1] @ eta
    bases = [_column_space(f, b) for b in emb.blocks]
    e, q, secs = quotient(s, bases)
    fmap = q @ injs[1]
    to_x = pi @ projs[0]
    gblocks = [to_x.blocks[v] @ secs[v] for v in range(len(x.dims))]
    g = Morphism(e, x, gblocks)
    e = e.renamed(f"E({x.name})" if x.name else "E")
    fmap = Morphism(t, e, fmap.blocks)
    g = Morphism(e, x, g.blocks)
    return AlmostSplitSequence(t, e, x, fmap, g, decompose(e))


# ----------------------------------------------------------------------------
# AR quiver
# ----------------------------------------------------------------------------

@dataclass
class ArQuiver:
    """Indecomposables up to isomorphism, irreducible-map arrows and the tau pairing."""

    algebra: BoundQuiverAlgebra
    vertices: list
    labels: list
    arrows: dict  # (i, j) -> multiplicity
    tau: dict  # non-projective vertex -> vertex
    projective: list
    injective: list
    complete: bool = False
    notes: list = dc_field(default_factory=list)

    @property
    def arrow_count(self) -> int:
        return sum(self.arrows.values())

    def index_of(self, label: str) -> int:
        return self.labels.index(label)

    def tau_pairs(self) -> dict:
        return {self.labels[i]: self.labels[j] for i, j in self.tau.items()}

    def to_networkx(self) -> nx.MultiDiGraph:
        g = nx.MultiDiGraph()
        for i, lab in enumerate(self.labels):
            g.add_node(i, label=lab)
        for (i, j), k in self.arrows.items():
            for _ in range(k):
                g.add_edge(i, j)
        return g

    def to_dot(self) -> str:
        lines = ["digraph AR {", "  rankdir=LR;"]
        for i, lab in enumerate(self.labels):
            dims = "".join(str(d) for d in self.vertices[i].dims)
            lines.append(f'  v{i} [label="{lab}\\n{dims}"];')
        for (i, j), k in sorted(self.arrows.items()):
            for _ in range(k):
                lines.append(f"  v{i} -> v{j};")
        for i, j in sorted(self.tau.items()):
            lines.append(f"  v{i} -> v{j} [style=dashed, constraint=false];")
        lines.append("}")
        return "\n".join(lines) + "\n"

    def to_json(self) -> dict:
        return {
            "complete": self.complete,
            "vertices": [
                {"id": i, "label": lab, "dims": list(self.vertices[i].dims),
                 "projective": self.projective[i], "injective": self.injective[i]}
                for i, lab in enumerate(self.labels)
            ],
            "arrows": [{"source": i, "target": j, "multiplicity": k} for (i, j), k in sorted(self.arrows.items())],
            "tau": [{"source": i, "target": j} for i, j in sorted(self.tau.items())],
        }


def standard_label(x: Representation, info=None) -> str | None:
    """"P3", "I1", "S2" (or "P2=I3") when x is a standard indecomposable."""
    info = info or local_info(x)
    a = x.algebra
    names = []
    for kind, build in (("P", indec_projective), ("I", indec_injective), ("S", simple)):
        for v in a.vertices:
            y = build(a, v)
            if y.dims == x.dims and _iso_local(x, y, info) is not None:
                names.append(f"{kind}{v}")
                break
    return "=".join(names) if names else None


class _Registry:
    def __init__(self, a, cap):
        self.a = a
        self.cap = cap
        self.mods, self.infos, self.labels = [], [], []
        self.proj, self.inj = [], []

    def find(self, x):
        for i, y in enumerate(self.mods):
            if y.dims == x.dims and _iso_local(y, x, self.infos[i]) is not None:
                return i
        return None

    def add(self, x):
        i = self.find(x)
        if i is not None:
            return i, False
        if len(self.mods) >= self.cap:
            raise CapExceeded(f"more than {self.cap} indecomposables")
        info = local_info(x)
        if info is None:
            raise NotIndecomposable("knitting produced a module without local endomorphism ring")
        lab = standard_label(x, info) or f"X{len(self.mods) + 1}"
        self.mods.append(x.renamed(lab))
        self.infos.append(info)
        self.labels.append(lab)
        self.proj.append(is_projective_indecomposable(x, info))
        self.inj.append(is_injective_indecomposable(x, info))
        return len(self.mods) - 1, True


def _summands(m: Representation):
    if m.is_zero():
        return []
    return [(s.module, s.multiplicity) for s in decompose(m).summands]


def knit_ar_quiver(a: BoundQuiverAlgebra, vertex_cap: int = DEFAULT_KNIT_CAP) -> ArQuiver:
    """Worklist closure of the AR quiver from projectives, injectives and their neighbours.

    Raises CapExceeded (with the partial quiver as ``.partial``) past ``vertex_cap``.
    """
    reg = _Registry(a, vertex_cap)
    arrows: dict = {}
    taus: dict = {}
    queue: deque = deque()
    done = set()

    def push(x):
        i, new = reg.add(x)
        if new:
            queue.append(i)
        return i

    def partial(complete):
        return ArQuiver(a, list(reg.mods), list(reg.labels), dict(arrows), dict(taus),
                        list(reg.proj), list(reg.inj), complete)

    try:
        for v in a.vertices:
            push(indec_projective(a, v))
        for v in a.vertices:
            push(indec_injective(a, v))
        for v in a.vertices:
            r, _ = radical(indec_projective(a, v))
            for y, _ in _summands(r):
                push(y)
            i = indec_injective(a, v)
            s, sinc = socle(i)
            qmod, _ = cokernel(sinc)
            for y, _ in _summands(qmod):
                push(y)
        while queue:
            i = queue.popleft()
            if i in done:
                continue
            done.add(i)
            x = reg.mods[i]
            if reg.proj[i]:
                r, _ = radical(x)
                for y, k in _summands(r):
                    j = push(y)
                    arrows[(j, i)] = arrows.get((j, i), 0) + k
            else:
                seq = almost_split_sequence(x)
                t = push(seq.left)
                taus[i] = t
                for s in seq.decomposition.summands:
                    j = push(s.module)
                    arrows[(j, i)] = arrows.get((j, i), 0) + s.multiplicity
            if not reg.inj[i]:
                push(tau_inv(x))
            else:
                s, sinc = socle(x)
                qmod, _ = cokernel(sinc)
                for y, _ in _summands(qmod):
                    push(y)
    except CapExceeded as exc:
        raise CapExceeded(str(exc), partial(False)) from None
    complete = a.quiver.is_connected()
    out = partial(complete)
    if not complete:
        out.notes.append("quiver is not connected; completeness is not claimed")
    return out


# ----------------------------------------------------------------------------
# representation type of radical-square-zero algebras
# ----------------------------------------------------------------------------

@dataclass
class SeparatedQuiverVerdict:
    rep_finite: bool
    graph: nx.MultiGraph
    components: list  # Dynkin type per component, or None when not Dynkin

    def __str__(self):
        return "RepFinite" if self.rep_finite else "RepInfinite"


def _dynkin_type(g: nx.MultiGraph) -> str | None:
    n = g.number_of_nodes()
    if n == 1:
        return "A1" if g.number_of_edges() == 0 else None
    if g.number_of_edges() != n - 1 or nx.number_of_selfloops(g) or not nx.is_connected(g):
        return None
    simple_g = nx.Graph(g)
    if simple_g.number_of_edges() != n - 1:
        return None
    deg = dict(simple_g.degree())
    branch = [v for v, d in deg.items() if d >= 3]
    if not branch:
        return f"A{n}"
    if len(branch) > 1 or deg[branch[0]] > 3:
        return None
    c = branch[0]
    arms = []
    for nb in simple_g.neighbors(c):
        length, prev, cur = 1, c, nb
        while deg[cur] == 2:
            prev, cur = cur, next(w for w in simple_g.neighbors(cur) if w != prev)
            length += 1
        arms.append(length)
    p, q, r = sorted(arms)
    if p == 1 and q == 1:
        return f"D{n}"
    if p == 1 and q == 2 and r in (2, 3, 4):
        return f"E{n}"
    return None


def separated_quiver_repfinite(a: BoundQuiverAlgebra) -> SeparatedQuiverVerdict:
    """Radical-square-zero algebras are representation-finite iff every component
    of the separated quiver is Dynkin."""
    if not a.is_radical_square_zero():
        raise NotRadicalSquareZero(f"J^2 != 0 (nilpotency degree {a.nilpotency})")
    g = nx.MultiGraph()
    for v in a.vertices:
        g.add_node(f"{v}")
        g.add_node(f"{v}'")
    for arr in a.quiver.arrows:
        g.add_edge(f"{arr.source}", f"{arr.target}'")
    comps = []
    for nodes in sorted(nx.connected_components(g), key=lambda c: sorted(c)):
        comps.append((sorted(nodes), _dynkin_type(g.subgraph(nodes))))
    return SeparatedQuiverVerdict(all(t is not None for _, t in comps), g, comps)
