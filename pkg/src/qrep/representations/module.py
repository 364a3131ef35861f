"""Representations of bound quivers, morphisms, and the basic constructions on them."""
from __future__ import annotations

from typing import Iterable, Mapping, Sequence

from ..errors import AlgebraMismatch
from ..exact_linalg import Echelon, Matrix, kernel_vectors, left_inverse, span_basis
from ..quiver_algebra import BoundQuiverAlgebra, Path, concat, opposite, trivial_path

__all__ = [
    "Representation",
    "Morphism",
    "zero_module",
    "simple",
    "indec_projective",
    "indec_injective",
    "projective_module",
    "regular_module",
    "dual_regular_module",
    "hom_equations",
    "hom_basis",
    "hom_dim",
    "combine",
    "identity_morphism",
    "zero_morphism",
    "morphism_from_flat",
    "radical_bases",
    "generator_blocks",
    "direct_sum",
    "power",
    "submodule",
    "quotient",
    "kernel",
    "image",
    "cokernel",
    "radical",
    "top",
    "socle",
    "projective_cover",
    "syzygy",
    "dual",
    "dual_morphism",
    "morphism_from_generators",
]


class Representation:
    """A right module over ``algebra``: one vector space per vertex and one matrix per arrow.

    ``maps[i]`` is the matrix of arrow ``i`` with shape ``(dims[target-1], dims[source-1])``.
    Representations that are canonical direct sums of indecomposable projectives
    carry ``generators``: the vertex of each summand's top generator, in block order.
    """

    __slots__ = ("algebra", "dims", "maps", "name", "generators", "_paths")

    def __init__(self, algebra: BoundQuiverAlgebra, dims: Sequence[int], maps=None, name: str = "",
                 check: bool = True, generators=None):
        self.algebra = algebra
        self.dims = tuple(int(d) for d in dims)
        if len(self.dims) != algebra.n:
            raise ValueError(f"dimension vector has {len(self.dims)} entries, expected {algebra.n}")
        if any(d < 0 for d in self.dims):
            raise ValueError("negative dimension")
        q = algebra.quiver
        f = algebra.field
        given = {}
        if isinstance(maps, Mapping):
            for k, m in maps.items():
                given[q.index[k] if isinstance(k, str) else k] = m
        elif maps is not None:
            given = dict(enumerate(maps))
        out = []
        for i, a in enumerate(q.arrows):
            shape = (self.dims[a.target - 1], self.dims[a.source - 1])
            m = given.get(i)
            if m is None:
                m = Matrix.zeros(f, *shape)
            elif not isinstance(m, Matrix):
                m = Matrix(f, m, shape[1]) if len(m) else Matrix.zeros(f, *shape)
            if m.shape != shape:
                raise ValueError(f"arrow {a.name}: matrix shape {m.shape}, expected {shape}")
            out.append(m)
        self.maps = tuple(out)
        self.name = name
        self.generators = generators
        self._paths = {}
        if check:
            self.validate()

    # ------------------------------------------------------------------
    @property
    def field(self):
        return self.algebra.field

    @property
    def dim(self) -> int:
        return sum(self.dims)

    def dim_at(self, v: int) -> int:
        return self.dims[v - 1]

    def is_zero(self) -> bool:
        return self.dim == 0

    def arrow_map(self, name) -> Matrix:
        q = self.algebra.quiver
        return self.maps[q.index[name] if isinstance(name, str) else name]

    def path_matrix(self, path: Path) -> Matrix:
        """Action of a path (composite of arrow matrices, first arrow applied first)."""
        key = (path.source, path.arrows)
        hit = self._paths.get(key)
        if hit is not None:
            return hit
        if not path.arrows:
            m = Matrix.identity(self.field, self.dims[path.source - 1])
        else:
            prefix = Path(path.source, self.algebra.quiver.arrows[path.arrows[-2]].target, path.arrows[:-1]) \
                if len(path.arrows) > 1 else trivial_path(path.source)
            m = self.maps[path.arrows[-1]] @ self.path_matrix(prefix)
        self._paths[key] = m
        return m

    def basis_action(self, b: int) -> Matrix:
        return self.path_matrix(self.algebra.basis[b])

    def validate(self) -> None:
        """Raise ValueError unless every relation of the algebra acts as zero."""
        a = self.algebra
        f = self.field
        for rel in a.relations.relations:
            src, tgt = rel[0][1].source, rel[0][1].target
            acc = Matrix.zeros(f, self.dims[tgt - 1], self.dims[src - 1])
            for c, p in rel:
                acc = acc + self.path_matrix(p).scale(f(c))
            if not acc.is_zero():
                raise ValueError(f"relation {' + '.join(p.label(a.quiver) for _, p in rel)} does not vanish")
        from ..quiver_algebra import enumerate_paths
        for m in a.relations.rad_powers:
            for p in enumerate_paths(a.quiver, m):
                if not self.path_matrix(p).is_zero():
                    raise ValueError(f"path {p.label(a.quiver)} of length {m} does not vanish")

    def key(self):
        return (self.algebra.key(), self.dims, tuple(m.entries() for m in self.maps))

    def __eq__(self, other):
        return isinstance(other, Representation) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        label = f"{self.name} " if self.name else ""
        return f"<Representation {label}dim={self.dims}>"

    def renamed(self, name: str) -> "Representation":
        r = Representation(self.algebra, self.dims, self.maps, name, check=False, generators=self.generators)
        return r

    def __add__(self, other: "Representation") -> "Representation":
        return direct_sum([self, other])[0]


class Morphism:
    """A module homomorphism given by one matrix per vertex.

    ``g @ f`` is the composite "f, then g".
    """

    __slots__ = ("source", "target", "blocks")

    def __init__(self, source: Representation, target: Representation, blocks: Sequence[Matrix], check: bool = False):
        if source.algebra is not target.algebra and source.algebra != target.algebra:
            raise AlgebraMismatch("morphism between modules over different algebras")
        self.source = source
        self.target = target
        self.blocks = tuple(blocks)
        for v, b in enumerate(self.blocks):
            if b.shape != (target.dims[v], source.dims[v]):
                raise ValueError(f"block at vertex {v + 1} has shape {b.shape}")
        if check and not self.is_homomorphism():
            raise ValueError("blocks do not intertwine the arrow actions")

    @property
    def field(self):
        return self.source.field

    def block(self, v: int) -> Matrix:
        return self.blocks[v - 1]

    def is_homomorphism(self) -> bool:
        q = self.source.algebra.quiver
        for i, a in enumerate(q.arrows):
            lhs = self.target.maps[i] @ self.blocks[a.source - 1]
            rhs = self.blocks[a.target - 1] @ self.source.maps[i]
            if lhs != rhs:
                return False
        return True

    def __matmul__(self, other: "Morphism") -> "Morphism":
        if other.target.dims != self.source.dims:
            raise ValueError("morphisms do not compose")
        return Morphism(other.source, self.target, [g @ f for g, f in zip(self.blocks, other.blocks)])

    def __add__(self, other):
        return Morphism(self.source, self.target, [a + b for a, b in zip(self.blocks, other.blocks)])

    def __sub__(self, other):
        return Morphism(self.source, self.target, [a - b for a, b in zip(self.blocks, other.blocks)])

    def scale(self, c) -> "Morphism":
        return Morphism(self.source, self.target, [b.scale(c) for b in self.blocks])

    def apply(self, v: int, vec: Sequence) -> list:
        return self.blocks[v - 1].apply(vec)

    def flat(self) -> list:
        out = []
        for b in self.blocks:
            out.extend(b.entries())
        return out

    def is_zero(self) -> bool:
        return all(b.is_zero() for b in self.blocks)

    def is_iso(self) -> bool:
        return self.source.dims == self.target.dims and all(b.is_invertible() for b in self.blocks)

    def inverse(self) -> "Morphism":
        return Morphism(self.target, self.source, [b.inverse() for b in self.blocks])

    def rank(self) -> int:
        return sum(b.rank() for b in self.blocks)

    def __repr__(self):
        return f"<Morphism {self.source.dims} -> {self.target.dims}>"


def combine(morphisms: Sequence[Morphism], coeffs: Sequence) -> Morphism:
    """Linear combination sum(c_i f_i) of parallel morphisms."""
    f0 = morphisms[0]
    acc = [Matrix.zeros(f0.field, *b.shape) for b in f0.blocks]
    for c, m in zip(coeffs, morphisms):
        if c:
            acc = [x + b.scale(c) for x, b in zip(acc, m.blocks)]
    return Morphism(f0.source, f0.target, acc)


def identity_morphism(m: Representation) -> Morphism:
    return Morphism(m, m, [Matrix.identity(m.field, d) for d in m.dims])


def zero_morphism(m: Representation, n: Representation) -> Morphism:
    return Morphism(m, n, [Matrix.zeros(m.field, n.dims[v], m.dims[v]) for v in range(len(m.dims))])


def morphism_from_flat(m: Representation, n: Representation, vec: Sequence) -> Morphism:
    blocks = []
    pos = 0
    f = m.field
    for v in range(len(m.dims)):
        r, c = n.dims[v], m.dims[v]
        rows = [list(vec[pos + i * c: pos + (i + 1) * c]) for i in range(r)]
        pos += r * c
        blocks.append(Matrix(f, rows, c, _trusted=True))
    return Morphism(m, n, blocks)


# ----------------------------------------------------------------------------
# standard modules
# ----------------------------------------------------------------------------

def _cache(a: BoundQuiverAlgebra) -> dict:
    c = getattr(a, "_module_cache", None)
    if c is None:
        c = {}
        a._module_cache = c
    return c


def _check_vertex(a, i):
    if i not in a.vertices:
        raise ValueError(f"vertex {i} out of range 1..{a.n}")


def zero_module(a: BoundQuiverAlgebra) -> Representation:
    return Representation(a, [0] * a.n, name="0", check=False, generators=())


def simple(a: BoundQuiverAlgebra, i: int) -> Representation:
    _check_vertex(a, i)
    dims = [0] * a.n
    dims[i - 1] = 1
    return Representation(a, dims, name=f"S{i}", check=False)


def indec_projective(a: BoundQuiverAlgebra, i: int) -> Representation:
    """P_i = e_i A: basis the surviving paths starting at ``i``; arrows act by right multiplication."""
    _check_vertex(a, i)
    key = ("P", i)
    hit = _cache(a).get(key)
    if hit is not None:
        return hit
    q = a.quiver
    f = a.field
    dims = [len(a.paths_between(i, w)) for w in a.vertices]
    maps = []
    for ai, arr in enumerate(q.arrows):
        cols = a.paths_between(i, arr.source)
        rows = a.paths_between(i, arr.target)
        ridx = {b: r for r, b in enumerate(rows)}
        m = [[f.zero] * len(cols) for _ in rows]
        apath = Path(arr.source, arr.target, (ai,))
        for c, b in enumerate(cols):
            prod = concat(a.basis[b], apath)
            for k, v in a.normal_form(prod).items():
                m[ridx[k]][c] = v
        maps.append(Matrix(f, m, len(cols), _trusted=True))
    rep = Representation(a, dims, maps, name=f"P{i}", check=False, generators=(i,))
    _cache(a)[key] = rep
    return rep


def indec_injective(a: BoundQuiverAlgebra, i: int) -> Representation:
    """I_i = D(e_i A^op), the dual of the opposite algebra's projective at ``i``."""
    _check_vertex(a, i)
    key = ("I", i)
    hit = _cache(a).get(key)
    if hit is not None:
        return hit
    rep = dual(indec_projective(opposite(a), i)).renamed(f"I{i}")
    _cache(a)[key] = rep
    return rep


def projective_module(a: BoundQuiverAlgebra, gens: Sequence[int]) -> Representation:
    """The canonical direct sum of P_v for v in ``gens`` (block order preserved)."""
    if not gens:
        return zero_module(a)
    key = ("Psum", tuple(gens))
    hit = _cache(a).get(key)
    if hit is not None:
        return hit
    s = direct_sum([indec_projective(a, v) for v in gens])[0]
    rep = Representation(a, s.dims, s.maps, name="+".join(f"P{v}" for v in gens), check=False,
                         generators=tuple(gens))
    if len(_cache(a)) < 4096:
        _cache(a)[key] = rep
    return rep


def regular_module(a: BoundQuiverAlgebra) -> Representation:
    """The right regular module A_A = P_1 + ... + P_n."""
    return projective_module(a, list(a.vertices)).renamed("A")


def dual_regular_module(a: BoundQuiverAlgebra) -> Representation:
    """D(A) = I_1 + ... + I_n."""
    return direct_sum([indec_injective(a, v) for v in a.vertices])[0].renamed("DA")


# ----------------------------------------------------------------------------
# Hom spaces
# ----------------------------------------------------------------------------

def _same_algebra(m, n):
    if m.algebra != n.algebra:
        raise AlgebraMismatch("modules live over different algebras")


def hom_equations(m: Representation, n: Representation):
    """Sparse rows of the intertwining system for Hom(m, n) and the unknown count."""
    q = m.algebra.quiver
    p = m.field.p
    offs = []
    pos = 0
    for v in range(len(m.dims)):
        offs.append(pos)
        pos += n.dims[v] * m.dims[v]
    rows = []
    for i, a in enumerate(q.arrows):
        s, t = a.source - 1, a.target - 1
        Na = n.maps[i]._rows
        Ma = m.maps[i]._rows
        ms, mt, ns, nt = m.dims[s], m.dims[t], n.dims[s], n.dims[t]
        # (N_a F_s - F_t M_a)[r][c]
        for r in range(nt):
            for c in range(ms):
                row = {}
                for k in range(ns):
                    x = Na[r][k]
                    if x:
                        j = offs[s] + k * ms + c
                        row[j] = row.get(j, 0) + x
                for k in range(mt):
                    x = Ma[k][c]
                    if x:
                        j = offs[t] + r * mt + k
                        row[j] = row.get(j, 0) - x
                if p is not None:
                    row = {j: x % p for j, x in row.items()}
                row = {j: x for j, x in row.items() if x}
                if row:
                    rows.append(row)
    return rows, pos


def hom_basis(m: Representation, n: Representation) -> list[Morphism]:
    """Basis of Hom(m, n) as the solution space of the intertwining equations."""
    _same_algebra(m, n)
    rows, nunk = hom_equations(m, n)
    return [morphism_from_flat(m, n, v) for v in kernel_vectors(m.field, rows, nunk)]


def hom_dim(m: Representation, n: Representation) -> int:
    _same_algebra(m, n)
    rows, nunk = hom_equations(m, n)
    ech = Echelon(m.field)
    for r in rows:
        ech.add(r)
    return nunk - len(ech)


# ----------------------------------------------------------------------------
# sums, sub- and quotient modules
# ----------------------------------------------------------------------------

def direct_sum(reps: Sequence[Representation]):
    """Direct sum with its canonical injections and projections."""
    if not reps:
        raise ValueError("empty direct sum")
    a = reps[0].algebra
    for r in reps[1:]:
        _same_algebra(reps[0], r)
    f = a.field
    dims = [sum(r.dims[v] for r in reps) for v in range(a.n)]
    maps = [Matrix.block_diag(f, [r.maps[i] for r in reps]) for i in range(len(a.quiver.arrows))]
    gens = None
    if all(r.generators is not None for r in reps):
        gens = tuple(g for r in reps for g in r.generators)
    total = Representation(a, dims, maps, name="+".join(r.name or "?" for r in reps), check=False, generators=gens)
    injections, projections = [], []
    offs = [0] * a.n
    for r in reps:
        inj, proj = [], []
        for v in range(a.n):
            e = Matrix.zeros(f, dims[v], r.dims[v])
            for k in range(r.dims[v]):
                e._rows[offs[v] + k][k] = f.one
            inj.append(e)
            proj.append(e.T)
            offs[v] += r.dims[v]
        injections.append(Morphism(r, total, inj))
        projections.append(Morphism(total, r, proj))
    return total, injections, projections


def power(m: Representation, k: int) -> Representation:
    if k == 0:
        return zero_module(m.algebra)
    return direct_sum([m] * k)[0]


def submodule(m: Representation, bases: Sequence[Matrix], name: str = "") -> tuple[Representation, Morphism]:
    """Submodule spanned per vertex by the columns of ``bases[v-1]`` (assumed arrow-stable, independent)."""
    a = m.algebra
    f = m.field
    linv = [left_inverse(b) if b.ncols else None for b in bases]
    maps = []
    for i, arr in enumerate(a.quiver.arrows):
        s, t = arr.source - 1, arr.target - 1
        if bases[t].ncols == 0 or bases[s].ncols == 0:
            maps.append(Matrix.zeros(f, bases[t].ncols, bases[s].ncols))
        else:
            maps.append(linv[t] @ (m.maps[i] @ bases[s]))
    sub = Representation(a, [b.ncols for b in bases], maps, name=name, check=False)
    return sub, Morphism(sub, m, bases)


def _complement(field, u: Matrix, n: int) -> Matrix:
    """Standard basis vectors completing the columns of ``u`` to a basis (greedy, in order)."""
    ech = Echelon(field)
    for col in u.columns():
        ech.add({j: x for j, x in enumerate(col) if x})
    picks = []
    for j in range(n):
        if ech.add({j: field.one}):
            picks.append(j)
    e = Matrix.zeros(field, n, len(picks))
    for k, j in enumerate(picks):
        e._rows[j][k] = field.one
    return e


def quotient(m: Representation, bases: Sequence[Matrix], name: str = ""):
    """Quotient by the submodule spanned by ``bases``.

    Returns ``(Q, projection, sections)`` where ``sections[v-1]`` holds the
    standard basis vectors of ``m`` at ``v`` that map to the basis of ``Q``.
    """
    a = m.algebra
    f = m.field
    projs, secs = [], []
    for v in range(a.n):
        u = bases[v]
        e = _complement(f, u, m.dims[v])
        c = u.hstack(e) if u.ncols else e
        if c.ncols:
            cinv = c.inverse()
            projs.append(cinv.submatrix(range(u.ncols, c.ncols), range(c.ncols)))
        else:
            projs.append(Matrix.zeros(f, 0, m.dims[v]))
        secs.append(e)
    maps = []
    for i, arr in enumerate(a.quiver.arrows):
        s, t = arr.source - 1, arr.target - 1
        maps.append(projs[t] @ (m.maps[i] @ secs[s]))
    q = Representation(a, [e.ncols for e in secs], maps, name=name, check=False)
    return q, Morphism(m, q, projs), secs


def _column_space(field, mat: Matrix) -> Matrix:
    cols = span_basis(field, mat.columns(), mat.nrows)
    return Matrix.from_columns(field, cols, mat.nrows) if cols else Matrix.zeros(field, mat.nrows, 0)


def kernel(f: Morphism) -> tuple[Representation, Morphism]:
    bases = [b.kernel() for b in f.blocks]
    return submodule(f.source, bases)


def image(f: Morphism) -> tuple[Representation, Morphism]:
    bases = [_column_space(f.field, b) for b in f.blocks]
    return submodule(f.target, bases)


def cokernel(f: Morphism) -> tuple[Representation, Morphism]:
    bases = [_column_space(f.field, b) for b in f.blocks]
    q, proj, _ = quotient(f.target, bases)
    return q, proj


def radical_bases(m: Representation) -> list[Matrix]:
    a = m.algebra
    f = m.field
    out = []
    for v in a.vertices:
        cols = []
        for i in a.quiver.in_arrows[v]:
            cols.extend(m.maps[i].columns())
        basis = span_basis(f, cols, m.dims[v - 1])
        out.append(Matrix.from_columns(f, basis, m.dims[v - 1]) if basis else Matrix.zeros(f, m.dims[v - 1], 0))
    return out


def radical(m: Representation) -> tuple[Representation, Morphism]:
    """rad M = M J (sum of arrow images) with its inclusion."""
    return submodule(m, radical_bases(m), name=f"rad {m.name}".strip())


def top(m: Representation) -> tuple[Representation, Morphism]:
    """top M = M / rad M with its projection."""
    q, proj, _ = quotient(m, radical_bases(m), name=f"top {m.name}".strip())
    return q, proj


def socle(m: Representation) -> tuple[Representation, Morphism]:
    """soc M: at each vertex, the joint kernel of the outgoing arrows."""
    a = m.algebra
    f = m.field
    bases = []
    for v in a.vertices:
        d = m.dims[v - 1]
        outs = a.quiver.out_arrows[v]
        if not outs:
            bases.append(Matrix.identity(f, d))
            continue
        stacked = m.maps[outs[0]]
        for i in outs[1:]:
            stacked = stacked.vstack(m.maps[i])
        bases.append(stacked.kernel())
    return submodule(m, bases, name=f"soc {m.name}".strip())


# ----------------------------------------------------------------------------
# projective covers and syzygies
# ----------------------------------------------------------------------------

def morphism_from_generators(p: Representation, n: Representation, images: Sequence[Sequence]) -> Morphism:
    """The map from a canonical projective sending generator k to ``images[k]`` in n at its vertex."""
    a = p.algebra
    f = a.field
    blocks = []
    for w in a.vertices:
        cols = []
        for g, x in zip(p.generators, images):
            for b in a.paths_between(g, w):
                cols.append(n.basis_action(b).apply(x) if n.dims[g - 1] else [f.zero] * n.dims[w - 1])
        if cols:
            blocks.append(Matrix.from_columns(f, cols, n.dims[w - 1]))
        else:
            blocks.append(Matrix.zeros(f, n.dims[w - 1], 0))
    return Morphism(p, n, blocks)


def generator_blocks(p: Representation, w: int) -> list[tuple[int, int, list[int]]]:
    """For each generator of ``p``: (offset, size, basis indices) of its block at vertex ``w``."""
    a = p.algebra
    out = []
    off = 0
    for g in p.generators:
        idx = a.paths_between(g, w)
        out.append((off, len(idx), idx))
        off += len(idx)
    return out


def projective_cover(m: Representation) -> tuple[Representation, Morphism]:
    """Minimal projective cover P -> m; P carries its generator vertices."""
    a = m.algebra
    _, _, secs = quotient(m, radical_bases(m))
    gens, images = [], []
    for v in a.vertices:
        for col in secs[v - 1].columns():
            gens.append(v)
            images.append(col)
    p = projective_module(a, gens)
    return p, morphism_from_generators(p, m, images)


def syzygy(m: Representation, k: int = 1) -> Representation:
    """Omega^k(m); Omega^0 is m with its projective summands removed."""
    if k < 0:
        raise ValueError("k must be nonnegative")
    if k == 0:
        from .decompose import strip_projectives
        return strip_projectives(m)
    cur = m
    for _ in range(k):
        _, pi = projective_cover(cur)
        cur, _ = kernel(pi)
    return cur


# ----------------------------------------------------------------------------
# duality
# ----------------------------------------------------------------------------

def dual(m: Representation) -> Representation:
    """D(m) = Hom_k(m, k) as a representation of the opposite algebra."""
    op = opposite(m.algebra)
    name = f"D{m.name}" if m.name else ""
    return Representation(op, m.dims, [x.T for x in m.maps], name=name, check=False)


def dual_morphism(f: Morphism) -> Morphism:
    """D(f): D(target) -> D(source)."""
    return Morphism(dual(f.target), dual(f.source), [b.T for b in f.blocks])
