"""Quivers, paths, admissible relations and the quotient algebra kQ/I.

Paths compose left to right: ``p*q`` means "traverse p, then q".  With this
convention right modules are covariant representations, an arrow ``a: i -> j``
acting as a linear map from the space at ``i`` to the space at ``j``.

Vertices are numbered ``1..n`` throughout the public API.
"""
from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import NotAdmissible, NotAdmissibleWithinCap
from .exact_linalg import Echelon, FieldSpec, QQ

DEFAULT_LEN_CAP = 20
_PATH_BUDGET = 250_000


@dataclass(frozen=True)
class Arrow:
    name: str
    source: int
    target: int


class Quiver:
    """A finite quiver with vertices ``1..vertex_count`` and named arrows."""

    def __init__(self, vertex_count: int, arrows: Iterable):
        if vertex_count < 1:
            raise ValueError("a quiver needs at least one vertex")
        self.vertex_count = vertex_count
        arrs = []
        for a in arrows:
            if not isinstance(a, Arrow):
                a = Arrow(*a)
            for v in (a.source, a.target):
                if not 1 <= v <= vertex_count:
                    raise ValueError(f"arrow {a.name}: vertex {v} out of range 1..{vertex_count}")
            arrs.append(a)
        self.arrows: tuple[Arrow, ...] = tuple(arrs)
        self.index = {a.name: i for i, a in enumerate(self.arrows)}
        if len(self.index) != len(self.arrows):
            raise ValueError("arrow names must be unique")
        self.out_arrows = {v: [] for v in self.vertices}
        self.in_arrows = {v: [] for v in self.vertices}
        for i, a in enumerate(self.arrows):
            self.out_arrows[a.source].append(i)
            self.in_arrows[a.target].append(i)

    @property
    def vertices(self) -> range:
        return range(1, self.vertex_count + 1)

    def arrow(self, name_or_index) -> Arrow:
        if isinstance(name_or_index, str):
            return self.arrows[self.index[name_or_index]]
        return self.arrows[name_or_index]

    def is_connected(self) -> bool:
        seen = {1}
        stack = [1]
        while stack:
            v = stack.pop()
            for i in self.out_arrows[v] + self.in_arrows[v]:
                a = self.arrows[i]
                for w in (a.source, a.target):
                    if w not in seen:
                        seen.add(w)
                        stack.append(w)
        return len(seen) == self.vertex_count

    def opposite(self) -> "Quiver":
        return Quiver(self.vertex_count, [Arrow(a.name, a.target, a.source) for a in self.arrows])

    def arrow_count_matrix(self) -> list[list[int]]:
        """``C[i-1][j-1]`` = number of arrows i -> j."""
        n = self.vertex_count
        c = [[0] * n for _ in range(n)]
        for a in self.arrows:
            c[a.source - 1][a.target - 1] += 1
        return c

    def key(self):
        return (self.vertex_count, self.arrows)

    def __eq__(self, other):
        return isinstance(other, Quiver) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        arrs = ", ".join(f"{a.name}:{a.source}->{a.target}" for a in self.arrows)
        return f"Quiver({self.vertex_count}; {arrs})"


@dataclass(frozen=True)
class Path:
    """A path as a tuple of arrow indices; trivial paths carry only a vertex."""

    source: int
    target: int
    arrows: tuple = ()

    @property
    def length(self) -> int:
        return len(self.arrows)

    def sort_key(self):
        return (len(self.arrows), self.arrows, self.source)

    def __lt__(self, other):
        return self.sort_key() < other.sort_key()

    def label(self, quiver: Quiver) -> str:
        if not self.arrows:
            return f"e{self.source}"
        return "*".join(quiver.arrows[i].name for i in self.arrows)

    def reversed(self) -> "Path":
        return Path(self.target, self.source, tuple(reversed(self.arrows)))


def trivial_path(v: int) -> Path:
    return Path(v, v, ())


def concat(p: Path, q: Path) -> Path | None:
    if p.target != q.source:
        return None
    return Path(p.source, q.target, p.arrows + q.arrows)


def path_from_names(quiver: Quiver, names: Sequence[str]) -> Path:
    """Build a path from consecutive arrow names; raises ValueError if they do not compose."""
    if not names:
        raise ValueError("empty path")
    idx = [quiver.index[n] for n in names]
    for a, b in zip(idx, idx[1:]):
        if quiver.arrows[a].target != quiver.arrows[b].source:
            raise ValueError(f"arrows {quiver.arrows[a].name} and {quiver.arrows[b].name} do not compose")
    return Path(quiver.arrows[idx[0]].source, quiver.arrows[idx[-1]].target, tuple(idx))


def enumerate_paths(q: Quiver, length: int) -> list[Path]:
    """All paths of exactly ``length`` arrows, ordered lexicographically by arrow index."""
    if length == 0:
        return [trivial_path(v) for v in q.vertices]
    layer = [Path(a.source, a.target, (i,)) for i, a in enumerate(q.arrows)]
    for _ in range(length - 1):
        nxt = []
        for p in layer:
            for i in q.out_arrows[p.target]:
                nxt.append(Path(p.source, q.arrows[i].target, p.arrows + (i,)))
        layer = nxt
    return sorted(layer)


@dataclass(frozen=True)
class RelationSet:
    """Linear combinations of parallel paths plus ``J^m`` markers.

    Each relation is a tuple of ``(coefficient, Path)`` terms.  Coefficients
    are kept as given (ints, Fractions or field scalars) and coerced into the
    base field when an algebra is built.
    """

    relations: tuple = ()
    rad_powers: tuple = ()

    @classmethod
    def rad_power(cls, m: int) -> "RelationSet":
        return cls((), (m,))

    def opposite(self) -> "RelationSet":
        rels = tuple(tuple((c, p.reversed()) for c, p in r) for r in self.relations)
        return RelationSet(rels, self.rad_powers)

    def is_empty(self) -> bool:
        return not self.relations and not self.rad_powers

    def key(self):
        return (
            tuple(tuple((Fraction(int(c.numerator), int(c.denominator)) if hasattr(c, "denominator") else c, p) for c, p in r)
                  for r in self.relations),
            self.rad_powers,
        )

    def __len__(self):
        return len(self.relations) + len(self.rad_powers)


def _check_relations(q: Quiver, rels: RelationSet):
    for r in rels.relations:
        if not r:
            raise NotAdmissible("empty relation")
        ends = {(p.source, p.target) for _, p in r}
        if len(ends) != 1:
            raise ValueError("relation mixes non-parallel paths")
        for _, p in r:
            if p.length < 2:
                raise NotAdmissible(f"relation term {p.label(q)} has length < 2")
    for m in rels.rad_powers:
        if m < 2:
            raise NotAdmissible(f"J^{m} is not admissible (need m >= 2)")


class BoundQuiverAlgebra:
    """The finite-dimensional algebra kQ/I with a path basis and structure constants.

    Attributes:
        quiver, relations, field: the presentation.
        nilpotency: least m with J^m contained in I.
        basis: surviving paths in deterministic order (length, then arrow ids).
        mult: ``mult[i][j]`` is the sparse product ``basis[i] * basis[j]``
            as ``{k: coeff}``.
    """

    def __init__(self, quiver, relations, field, nilpotency, basis, normal_forms, len_cap):
        self.quiver = quiver
        self.relations = relations
        self.field = field
        self.nilpotency = nilpotency
        self.len_cap = len_cap
        self.basis: list[Path] = basis
        self.index = {p: i for i, p in enumerate(basis)}
        self._nf = normal_forms
        self._op = None
        n = len(basis)
        self.between: dict[tuple[int, int], list[int]] = {
            (v, w): [] for v in quiver.vertices for w in quiver.vertices
        }
        for i, p in enumerate(basis):
            self.between[(p.source, p.target)].append(i)
        self.mult = [[None] * n for _ in range(n)]
        for i, p in enumerate(basis):
            for j, q in enumerate(basis):
                c = concat(p, q)
                self.mult[i][j] = {} if c is None else self.normal_form(c)
        self._key = (quiver.key(), relations.key(), field)

    # ------------------------------------------------------------------
    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def vertices(self) -> range:
        return self.quiver.vertices

    @property
    def n(self) -> int:
        return self.quiver.vertex_count

    def key(self):
        return self._key

    def __eq__(self, other):
        return isinstance(other, BoundQuiverAlgebra) and self._key == other._key

    def __hash__(self):
        return hash(self._key)

    def __repr__(self):
        return f"BoundQuiverAlgebra({self.quiver!r}, dim={self.dim}, field={self.field!r})"

    def normal_form(self, path: Path) -> dict[int, object]:
        """Coordinates of the residue of ``path`` in the basis (sparse)."""
        if path.length >= self.nilpotency:
            return {}
        return dict(self._nf[path])

    def element(self, coords: dict | None = None) -> list:
        v = [self.field.zero] * self.dim
        for k, c in (coords or {}).items():
            v[k] = self.field(c)
        return v

    def unit(self) -> list:
        return self.element({self.index[trivial_path(v)]: 1 for v in self.vertices})

    def idempotent(self, v: int) -> list:
        return self.element({self.index[trivial_path(v)]: 1})

    def basis_label(self, i: int) -> str:
        return self.basis[i].label(self.quiver)

    def paths_between(self, v: int, w: int) -> list[int]:
        return self.between[(v, w)]

    def is_radical_square_zero(self) -> bool:
        return self.nilpotency <= 2

    def relation_vanishes(self, rel) -> bool:
        f = self.field
        acc: dict[int, object] = {}
        for c, p in rel:
            for k, v in self.normal_form(p).items():
                acc[k] = f.add(acc.get(k, f.zero), f.mul(f(c), v))
        return not any(acc.values())


def multiply(a: BoundQuiverAlgebra, x: Sequence, y: Sequence) -> list:
    """Product of two algebra elements given in basis coordinates."""
    f = a.field
    out = [f.zero] * a.dim
    for i, xi in enumerate(x):
        if not xi:
            continue
        row = a.mult[i]
        for j, yj in enumerate(y):
            if not yj:
                continue
            c = f.mul(xi, yj)
            for k, v in row[j].items():
                out[k] = f.add(out[k], f.mul(c, v))
    return out


# ----------------------------------------------------------------------------
# construction
# ----------------------------------------------------------------------------

def _generators(q: Quiver, rels: RelationSet, field: FieldSpec, maxlen: int) -> list[dict[Path, object]]:
    """Relations as sparse ``{Path: coeff}``, with J^k markers expanded to monomials."""
    gens = []
    for r in rels.relations:
        g: dict[Path, object] = {}
        for c, p in r:
            if p.length > maxlen:
                continue
            g[p] = field.add(g.get(p, field.zero), field(c))
        g = {p: c for p, c in g.items() if c}
        if g:
            gens.append(g)
    for m in rels.rad_powers:
        if m <= maxlen:
            gens.extend({p: field.one} for p in enumerate_paths(q, m))
    return gens


def _paths_by_endpoints(paths_upto: list[list[Path]]):
    """Index paths of each length by source and by target."""
    by_target: dict[int, list[Path]] = {}
    by_source: dict[int, list[Path]] = {}
    for layer in paths_upto:
        for p in layer:
            by_target.setdefault(p.target, []).append(p)
            by_source.setdefault(p.source, []).append(p)
    return by_source, by_target


def ideal_closure(q: Quiver, gens: list[dict[Path, object]], field: FieldSpec, maxlen: int,
                  columns: dict[Path, int]) -> Echelon:
    """Echelon basis of the two-sided ideal generated by ``gens`` in kQ/J^(maxlen+1)."""
    layers = [enumerate_paths(q, k) for k in range(maxlen + 1)]
    by_source, by_target = _paths_by_endpoints(layers)
    ech = Echelon(field)
    for g in gens:
        some = next(iter(g))
        s, t = some.source, some.target
        minlen = min(p.length for p in g)
        for left in by_target.get(s, []):
            if left.length + minlen > maxlen:
                continue
            for right in by_source.get(t, []):
                if left.length + right.length + minlen > maxlen:
                    continue
                row = {}
                for p, c in g.items():
                    total = left.length + p.length + right.length
                    if total > maxlen:
                        continue
                    path = Path(left.source, right.target, left.arrows + p.arrows + right.arrows)
                    row[columns[path]] = c
                if row:
                    ech.add(row)
    return ech


def build_algebra(q: Quiver, rels: RelationSet, field: FieldSpec = QQ, len_cap: int = DEFAULT_LEN_CAP) -> BoundQuiverAlgebra:
    """Construct kQ/I, verifying admissibility up to ``len_cap``.

    The nilpotency degree is the least m such that every path of length m
    lies in the ideal modulo J^(m+1); by graded Nakayama that gives J^m in I.
    """
    _check_relations(q, rels)
    layers = [enumerate_paths(q, 0)]
    total = len(layers[0])
    for m in range(1, len_cap + 1):
        layers.append(enumerate_paths(q, m))
        total += len(layers[-1])
        if total > _PATH_BUDGET:
            raise NotAdmissibleWithinCap(f"path count exceeds {_PATH_BUDGET} before J^m is reached (m={m})")
        # columns ordered longest/largest first so pivots are leading terms
        ordered = [p for layer in layers for p in layer]
        ordered.sort(key=Path.sort_key, reverse=True)
        columns = {p: i for i, p in enumerate(ordered)}
        gens = _generators(q, rels, field, m)
        ech = ideal_closure(q, gens, field, m, columns)
        if all(columns[p] in ech.pivots for p in layers[m]):
            return _finish(q, rels, field, m, layers, ech, columns, ordered, len_cap)
    raise NotAdmissibleWithinCap(f"no m <= {len_cap} with J^m contained in the ideal")


def _finish(q, rels, field, m, layers, ech, columns, ordered, len_cap):
    # project the closure to kQ/J^m: drop length-m columns and re-echelon
    short = [p for p in ordered if p.length < m]
    scol = {p: i for i, p in enumerate(short)}
    remap = {columns[p]: scol[p] for p in short}
    ech2 = Echelon(field)
    for c, row in ech.sorted_rows():
        r = {remap[j]: v for j, v in row.items() if j in remap}
        if r:
            ech2.add(r)
    basis = sorted(p for p in short if scol[p] not in ech2.pivots)
    nf = {}
    for p in short:
        c = scol[p]
        if c in ech2.pivots:
            nf[p] = {}
        else:
            nf[p] = {c: field.one}
    # pivot rows express leading paths through non-pivot (basis) columns
    for c, row in ech2.pivots.items():
        nf[short[c]] = {j: field.neg(v) for j, v in row.items() if j != c}
    bidx = {p: i for i, p in enumerate(basis)}
    col_to_basis = {scol[p]: bidx[p] for p in basis}
    normal = {p: {col_to_basis[j]: v for j, v in d.items()} for p, d in nf.items()}
    return BoundQuiverAlgebra(q, rels, field, m, basis, normal, len_cap)


def opposite(a: BoundQuiverAlgebra, cache: bool = True) -> BoundQuiverAlgebra:
    """The opposite algebra (arrows and relation paths reversed).

    With ``cache`` the result is memoised and linked back, so that
    ``opposite(opposite(a)) is a``.
    """
    if cache and a._op is not None:
        return a._op
    op = build_algebra(a.quiver.opposite(), a.relations.opposite(), a.field, a.len_cap)
    if cache:
        a._op = op
        op._op = a
    return op


def relation_from_terms(quiver: Quiver, terms: Iterable[tuple[object, Sequence[str]]]) -> tuple:
    """Helper: ``[(1, ["a", "b"]), (-1, ["c", "d"])]`` -> relation tuple."""
    return tuple((c, path_from_names(quiver, names)) for c, names in terms)
