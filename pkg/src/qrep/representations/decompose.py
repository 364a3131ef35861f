"""Local endomorphism rings, isomorphism testing and Krull-Schmidt decomposition.

Decomposition first peels known indecomposables (simples, projectives,
injectives, caller extras) using the rank of the composition pairing
Hom(X, M) x Hom(M, X) -> End(X)/rad End(X).  Whatever is left is split with
Fitting decompositions ``M = ker f(e)^N + im f(e)^N`` for irreducible factors
``f`` of the minimal polynomial of an endomorphism ``e``, until every piece
has a local endomorphism ring.
"""
from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import Iterable, Sequence

from ..errors import DecompositionIncomplete
from ..exact_linalg import Echelon, Matrix, left_inverse, rref, span_basis
from .module import (
    Morphism,
    Representation,
    _cache,
    _column_space,
    _same_algebra,
    combine,
    direct_sum,
    hom_basis,
    identity_morphism,
    indec_injective,
    indec_projective,
    simple,
    submodule,
    zero_module,
)

__all__ = [
    "LocalInfo",
    "local_info",
    "is_indecomposable",
    "Summand",
    "DecompositionResult",
    "decompose",
    "find_isomorphism",
    "is_isomorphic",
    "strip_projectives",
    "standard_candidates",
]


class LocalInfo:
    """Certificate that End(X) is local with residue field k.

    ``radical`` spans rad End(X) (all nilpotent), and ``residue(e)`` is the
    scalar lambda with ``e - lambda*id`` in the radical.
    """

    def __init__(self, rep: Representation, end_basis, radical, residue_rows, residue_weights):
        self.rep = rep
        self.end_basis = end_basis
        self.radical = radical
        self._rows = residue_rows
        self._weights = residue_weights

    def residue(self, e: Morphism):
        f = self.rep.field
        flat = e.flat()
        s = f.zero
        for r, w in zip(self._rows, self._weights):
            x = flat[r]
            if x:
                s += w * x
        return s % f.p if f.p is not None else s


def _trace(m: Matrix):
    f = m.field
    s = f.zero
    for i in range(m.nrows):
        s += m[i, i]
    return s % f.p if f.p is not None else s


def _eigen_guess(e: Morphism):
    """The scalar lambda with e - lambda nilpotent, assuming one exists."""
    rep = e.source
    f = rep.field
    for v, d in enumerate(rep.dims):
        if d and (f.p is None or d % f.p):
            return f.mul(_trace(e.blocks[v]), f.inv(f(d)))
    for v, d in enumerate(rep.dims):
        if d:
            block = e.blocks[v]
            for lam in f.elements():
                if not (block - Matrix.identity(f, d).scale(lam)).is_invertible():
                    return lam
            return None
    return None


def _is_nilpotent_family(rep: Representation, family: Sequence[Morphism]) -> bool:
    """True iff the span of ``family`` generates a nilpotent algebra of endomorphisms."""
    f = rep.field
    spaces = [Matrix.identity(f, d) for d in rep.dims]
    total = rep.dim
    while total:
        new = []
        for v, sp in enumerate(spaces):
            cols = []
            for n in family:
                if sp.ncols:
                    cols.extend((n.blocks[v] @ sp).columns())
            basis = span_basis(f, cols, rep.dims[v])
            new.append(Matrix.from_columns(f, basis, rep.dims[v]) if basis else Matrix.zeros(f, rep.dims[v], 0))
        ntotal = sum(s.ncols for s in new)
        if ntotal == total:
            return False
        spaces, total = new, ntotal
    return True


def local_info(x: Representation) -> LocalInfo | None:
    """Certify that End(x) is local with residue field k; None otherwise."""
    if x.is_zero():
        return None
    f = x.field
    ends = hom_basis(x, x)
    idm = identity_morphism(x)
    nil = []
    for e in ends:
        lam = _eigen_guess(e)
        if lam is None:
            return None
        nil.append(e - idm.scale(lam))
    # independent subset spanning the candidate radical
    ech = Echelon(f)
    rad = []
    for n in nil:
        flat = n.flat()
        if ech.add({j: v for j, v in enumerate(flat) if v}):
            rad.append(n)
    if not _is_nilpotent_family(x, rad):
        return None
    cols = [idm.flat()] + [n.flat() for n in rad]
    length = len(cols[0])
    mat = Matrix.from_columns(f, cols, length)
    linv = left_inverse(mat)
    row0 = linv.row(0)
    rows = [j for j, w in enumerate(row0) if w]
    weights = [row0[j] for j in rows]
    return LocalInfo(x, ends, rad, rows, weights)


def is_indecomposable(x: Representation) -> bool:
    """Exact for modules whose endomorphism ring has residue field k."""
    if local_info(x) is not None:
        return True
    if x.is_zero():
        return False
    try:
        pieces = _fitting_split(x)
    except DecompositionIncomplete:
        return False
    return len(pieces) == 1


def _cached_local(rep: Representation, tag=None) -> LocalInfo | None:
    if tag is None:
        return local_info(rep)
    c = _cache(rep.algebra)
    key = ("local",) + tag
    if key not in c:
        c[key] = local_info(rep)
    return c[key]


# ----------------------------------------------------------------------------
# isomorphisms
# ----------------------------------------------------------------------------

def _iso_local(x: Representation, y: Representation, info: LocalInfo) -> Morphism | None:
    """Isomorphism x -> y when End(x) is local (exact), else None."""
    if x.dims != y.dims:
        return None
    fs = hom_basis(x, y)
    if not fs:
        return None
    gs = hom_basis(y, x)
    for fi in fs:
        if fi.is_iso():
            return fi
    for fi in fs:
        for gj in gs:
            if info.residue(gj @ fi):
                return fi
    return None


def _probe_coefficients(field, k: int, count: int):
    # deterministic pseudo-random small scalars
    state = 0x2545F491
    for _ in range(count):
        coeffs = []
        for _ in range(k):
            state = (state * 6364136223846793005 + 1442695040888963407) % (1 << 64)
            coeffs.append(field((state >> 33) % 97 + 1))
        yield coeffs


def find_isomorphism(m: Representation, n: Representation, candidates=None) -> Morphism | None:
    """An isomorphism m -> n, or None when none exists.

    Cheap probes (basis elements and seeded combinations of Hom(m, n)) come
    first; a negative answer is settled exactly by comparing decompositions.
    """
    _same_algebra(m, n)
    if m.dims != n.dims:
        return None
    if m.is_zero():
        return Morphism(m, n, [Matrix.zeros(m.field, 0, 0) for _ in m.dims])
    fs = hom_basis(m, n)
    if not fs:
        return None
    for fi in fs:
        if fi.is_iso():
            return fi
    if len(fs) > 1:
        for coeffs in _probe_coefficients(m.field, len(fs), 6):
            g = combine(fs, coeffs)
            if g.is_iso():
                return g
    dm = decompose(m, candidates)
    dn = decompose(n, candidates)
    if sorted(s.multiplicity for s in dm.summands) != sorted(s.multiplicity for s in dn.summands):
        return None
    pieces = []
    used = set()
    for s in dm.summands:
        info = _cached_local(s.module)
        match = None
        for j, t in enumerate(dn.summands):
            if j in used or t.multiplicity != s.multiplicity:
                continue
            phi = _iso_local(s.module, t.module, info)
            if phi is not None:
                match = (j, phi)
                break
        if match is None:
            return None
        used.add(match[0])
        t = dn.summands[match[0]]
        for prj_m, inc_n in zip(s.projections, t.inclusions):
            pieces.append(inc_n @ match[1] @ prj_m)
    total = pieces[0]
    for p in pieces[1:]:
        total = total + p
    return total


def is_isomorphic(m: Representation, n: Representation, candidates=None) -> bool:
    return find_isomorphism(m, n, candidates) is not None


# ----------------------------------------------------------------------------
# decomposition
# ----------------------------------------------------------------------------

@dataclass
class Summand:
    """An indecomposable summand with one (inclusion, projection) pair per copy."""

    module: Representation
    multiplicity: int
    inclusions: list = dc_field(default_factory=list)
    projections: list = dc_field(default_factory=list)


@dataclass
class DecompositionResult:
    source: Representation
    summands: list

    def dimension_vector(self):
        n = len(self.source.dims)
        return tuple(sum(s.module.dims[v] * s.multiplicity for s in self.summands) for v in range(n))

    def total_count(self) -> int:
        return sum(s.multiplicity for s in self.summands)

    def multiplicity_of(self, x: Representation) -> int:
        for s in self.summands:
            if s.module.dims == x.dims and find_isomorphism(s.module, x) is not None:
                return s.multiplicity
        return 0

    def reassemble(self):
        """The direct sum of all copies and the isomorphism it maps onto the source by."""
        mods, incs = [], []
        for s in self.summands:
            for inc in s.inclusions:
                mods.append(s.module)
                incs.append(inc)
        if not mods:
            return zero_module(self.source.algebra), None
        total, _, projs = direct_sum(mods)
        iso = None
        for inc, pr in zip(incs, projs):
            term = inc @ pr
            iso = term if iso is None else iso + term
        return total, iso


def standard_candidates(a) -> list[tuple[Representation, tuple]]:
    """Simples, indecomposable projectives and injectives, pairwise non-isomorphic."""
    key = ("std-candidates",)
    c = _cache(a)
    if key in c:
        return c[key]
    raw = [(simple(a, v), ("S", v)) for v in a.vertices]
    raw += [(indec_projective(a, v), ("P", v)) for v in a.vertices]
    raw += [(indec_injective(a, v), ("I", v)) for v in a.vertices]
    out = []
    for rep, tag in raw:
        info = _cached_local(rep, tag)
        if info is None:
            continue
        if any(r.dims == rep.dims and _iso_local(r, rep, _cached_local(r, t)) is not None for r, t in out):
            continue
        out.append((rep, tag))
    c[key] = out
    return out


def _dims_fit(x, m):
    return all(a <= b for a, b in zip(x.dims, m.dims))


def _peel(x: Representation, info: LocalInfo, m: Representation):
    """Split off every copy of x from m; returns (r, F: x^r -> m, G: m -> x^r) with G F = id."""
    fs = hom_basis(x, m)
    if not fs:
        return None
    gs = hom_basis(m, x)
    if not gs:
        return None
    f = m.field
    pairing = Matrix(f, [[info.residue(g @ fi) for g in gs] for fi in fs], len(gs), _trusted=True)
    _, cols = rref(pairing)
    r = len(cols)
    if r == 0:
        return None
    _, rows = rref(pairing.T)
    xr, injs, projs = direct_sum([x] * r)
    F = None
    G = None
    for k in range(r):
        t1 = fs[rows[k]] @ projs[k]
        t2 = injs[k] @ gs[cols[k]]
        F = t1 if F is None else F + t1
        G = t2 if G is None else G + t2
    gf = G @ F
    G = gf.inverse() @ G
    return r, xr, injs, projs, F, G


def _complement_kernel(m: Representation, F: Morphism, G: Morphism):
    """Remainder R = ker G with inclusion j: R -> m and projection q: m -> R (q j = id, q F = 0)."""
    bases = [b.kernel() for b in G.blocks]
    rem, j = submodule(m, bases)
    idm = identity_morphism(m)
    e = idm - F @ G
    qblocks = []
    for v, b in enumerate(bases):
        if b.ncols:
            qblocks.append(left_inverse(b) @ e.blocks[v])
        else:
            qblocks.append(Matrix.zeros(m.field, 0, m.dims[v]))
    return rem, j, Morphism(m, rem, qblocks)


def _peel_candidates(m: Representation, cands):
    """Peel candidates in order; returns (summands, remainder, j, q)."""
    rem = m
    j = identity_morphism(m)
    q = identity_morphism(m)
    summands = []
    for x, info in cands:
        if rem.is_zero():
            break
        if not _dims_fit(x, rem):
            continue
        res = _peel(x, info, rem)
        if res is None:
            continue
        r, _, injs, projs, F, G = res
        s = Summand(x, r)
        for k in range(r):
            s.inclusions.append(j @ F @ injs[k])
            s.projections.append(projs[k] @ G @ q)
        summands.append(s)
        new_rem, j2, q2 = _complement_kernel(rem, F, G)
        rem, j, q = new_rem, j @ j2, q2 @ q
    return summands, rem, j, q


# ----------------------------------------------------------------------------
# Fitting splitting (fallback)
# ----------------------------------------------------------------------------

def _full_matrix(e: Morphism) -> Matrix:
    return Matrix.block_diag(e.field, list(e.blocks))


def _minimal_polynomial(e: Morphism) -> list:
    """Coefficients c_0..c_d (monic, c_d = 1) of the minimal polynomial of e."""
    f = e.field
    n = e.source.dim
    big = _full_matrix(e)
    powers = [Matrix.identity(f, n)]
    ech = Echelon(f)
    ech.add({j: v for j, v in enumerate(powers[0].entries()) if v})
    while True:
        nxt = big @ powers[-1]
        flat = nxt.entries()
        if not ech.add({j: v for j, v in enumerate(flat) if v}):
            cols = [p.entries() for p in powers]
            mat = Matrix.from_columns(f, cols, n * n)
            from ..exact_linalg import solve
            c = solve(mat, list(flat))
            return [f.neg(x) for x in c] + [f.one]
        powers.append(nxt)


def _factor(coeffs, field) -> list[list]:
    """Distinct monic irreducible factors (coefficient lists, low degree first)."""
    import sympy

    x = sympy.Symbol("x")
    if field.p is None:
        sc = [sympy.Rational(int(c.numerator), int(c.denominator)) for c in reversed(coeffs)]
        poly = sympy.Poly(sc, x, domain="QQ")
    else:
        poly = sympy.Poly([int(c) for c in reversed(coeffs)], x, modulus=field.p)
    out = []
    for fac, _ in poly.factor_list()[1]:
        cs = fac.all_coeffs()
        lead = cs[0]
        if field.p is None:
            vals = [_to_field(sympy.Rational(c) / sympy.Rational(lead), field) for c in cs]
        else:
            inv = pow(int(lead) % field.p, -1, field.p)
            vals = [int(c) * inv % field.p for c in cs]
        out.append(list(reversed(vals)))
    return out


def _to_field(r, field):
    from fractions import Fraction
    return field(Fraction(int(r.p), int(r.q)))


def _poly_eval(coeffs, e: Morphism) -> Morphism:
    idm = identity_morphism(e.source)
    acc = idm.scale(coeffs[-1])
    for c in reversed(coeffs[:-1]):
        acc = acc @ e + idm.scale(c)
    return acc


def _endo_probes(ends: Sequence[Morphism]):
    yield from ends
    for i in range(len(ends)):
        for j in range(i + 1, len(ends)):
            yield ends[i] + ends[j]
    for i in range(len(ends)):
        for j in range(len(ends)):
            yield ends[i] @ ends[j]


def _fitting_once(m: Representation):
    """One nontrivial Fitting split of m, or None if no probe yields one."""
    f = m.field
    n = m.dim
    ends = hom_basis(m, m)
    for e in _endo_probes(ends):
        mp = _minimal_polynomial(e)
        if len(mp) <= 2:
            continue
        factors = _factor(mp, f)
        if len(factors) < 2:
            continue
        phi = _poly_eval(factors[0], e)
        power = phi
        prev = -1
        while True:
            rk = power.rank()
            if rk == prev:
                break
            prev = rk
            power = power @ phi
        if rk == 0 or rk == n:
            continue
        kb = [b.kernel() for b in power.blocks]
        ib = [_column_space(f, b) for b in power.blocks]
        return kb, ib
    return None


def _fitting_split(m: Representation):
    """Split m into pieces with local endomorphism rings; returns [(piece, incl, proj)]."""
    info = local_info(m)
    if info is not None:
        return [(m, identity_morphism(m), identity_morphism(m), info)]
    res = _fitting_once(m)
    if res is None:
        raise DecompositionIncomplete(f"cannot split or certify a summand of dimension {m.dims}")
    kb, ib = res
    f = m.field
    k_mod, k_inc = submodule(m, kb)
    i_mod, i_inc = submodule(m, ib)
    # projections from coordinates in the basis [K | I]
    kp, ip = [], []
    for v in range(len(m.dims)):
        both = kb[v].hstack(ib[v]) if kb[v].ncols and ib[v].ncols else (kb[v] if kb[v].ncols else ib[v])
        if both.ncols == 0:
            kp.append(Matrix.zeros(f, 0, 0))
            ip.append(Matrix.zeros(f, 0, 0))
            continue
        inv = both.inverse()
        kk = kb[v].ncols
        kp.append(inv.submatrix(range(kk), range(both.ncols)))
        ip.append(inv.submatrix(range(kk, both.ncols), range(both.ncols)))
    k_proj = Morphism(m, k_mod, kp)
    i_proj = Morphism(m, i_mod, ip)
    out = []
    for sub, inc, prj in ((k_mod, k_inc, k_proj), (i_mod, i_inc, i_proj)):
        for piece, pi, pp, pinfo in _fitting_split(sub):
            out.append((piece, inc @ pi, pp @ prj, pinfo))
    return out


def _semisimple_split(m: Representation) -> list[Summand]:
    """Coordinate splitting of a module whose arrows all act by zero."""
    a, f = m.algebra, m.field
    out = []
    for v in a.vertices:
        d = m.dims[v - 1]
        if not d:
            continue
        s = simple(a, v)
        incs, prjs = [], []
        for k in range(d):
            ib, pb = [], []
            for w in a.vertices:
                if w == v:
                    ib.append(Matrix.from_sparse_rows(f, [{0: f.one} if i == k else {} for i in range(d)], 1))
                    pb.append(Matrix.from_sparse_rows(f, [{k: f.one}], d))
                else:
                    ib.append(Matrix.zeros(f, m.dims[w - 1], 0))
                    pb.append(Matrix.zeros(f, 0, m.dims[w - 1]))
            incs.append(Morphism(s, m, ib))
            prjs.append(Morphism(m, s, pb))
        out.append(Summand(s, d, incs, prjs))
    return out


def decompose(m: Representation, candidates: Iterable[Representation] | None = None,
              use_standard: bool = True) -> DecompositionResult:
    """Complete decomposition of m into indecomposables with split witnesses.

    Args:
        candidates: extra known indecomposables tried (after the standard ones);
            they must have local endomorphism rings.
        use_standard: also try simples, projectives and injectives.
    """
    a = m.algebra
    cands = []
    if use_standard:
        cands = [(x, _cached_local(x, tag)) for x, tag in standard_candidates(a)]
    for x in candidates or ():
        info = local_info(x)
        if info is not None:
            cands.append((x, info))
    if m.is_zero():
        return DecompositionResult(m, [])
    if all(x.is_zero() for x in m.maps):
        return DecompositionResult(m, _semisimple_split(m))
    summands, rem, j, q = _peel_candidates(m, cands)
    if not rem.is_zero():
        pieces = _fitting_split(rem)
        groups: list[Summand] = []
        infos = []
        for piece, inc, prj, pinfo in pieces:
            placed = False
            for g, ginfo in zip(groups, infos):
                if g.module.dims != piece.dims:
                    continue
                phi = _iso_local(g.module, piece, ginfo)
                if phi is not None:
                    g.multiplicity += 1
                    g.inclusions.append(j @ inc @ phi)
                    g.projections.append(phi.inverse() @ prj @ q)
                    placed = True
                    break
            if not placed:
                groups.append(Summand(piece, 1, [j @ inc], [prj @ q]))
                infos.append(pinfo)
        summands.extend(groups)
    return DecompositionResult(m, summands)


def strip_projectives(m: Representation) -> Representation:
    """A complement of the projective summands of m."""
    a = m.algebra
    cands = [(indec_projective(a, v), _cached_local(indec_projective(a, v), ("P", v))) for v in a.vertices]
    _, rem, _, _ = _peel_candidates(m, cands)
    return rem
