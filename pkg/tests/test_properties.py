"""Randomised invariants over Q and GF(5).

Random modules are cokernels of random maps between projective modules, so
every finitely generated module is reachable in principle.
"""
from collections import Counter
from functools import lru_cache, wraps

import pytest
from hypothesis import HealthCheck, given, settings
from hypothesis import strategies as st

from qrep.exact_linalg import Matrix, QQ, rank, rref, solve
from qrep.homology import min_proj_resolution
from qrep.representations import (
    combine,
    cokernel,
    decompose,
    direct_sum,
    dual,
    hom_basis,
    hom_dim,
    indec_injective,
    indec_projective,
    projective_cover,
    projective_module,
    syzygy,
)

from .conftest import F5, algebra

FIELDS = {"Q": QQ, "F5": F5}
# decomposition is only claimed complete for representation-finite algebras here
REP_FINITE = ["paper_A.alg", "linear_A2.alg", "square.alg", "one_loop.alg"]
ALL = REP_FINITE + ["kronecker.alg"]

# examples actually executed, per test
RUNS: Counter = Counter()


def counted(fn):
    @wraps(fn)
    def run(*args, **kwargs):
        RUNS[fn.__name__] += 1
        return fn(*args, **kwargs)
    return run


SETTINGS = dict(deadline=None, suppress_health_check=[HealthCheck.too_slow, HealthCheck.data_too_large])


@lru_cache(maxsize=None)
def _alg(name, field):
    return algebra(name, FIELDS[field])


@lru_cache(maxsize=None)
def _hom(a, g1, g0):
    return hom_basis(projective_module(a, g1), projective_module(a, g0))


@st.composite
def module_over(draw, a):
    verts = st.sampled_from(list(a.vertices))
    g0 = tuple(sorted(draw(st.lists(verts, min_size=1, max_size=2))))
    g1 = tuple(sorted(draw(st.lists(verts, min_size=0, max_size=2))))
    if not g1:
        return projective_module(a, g0)
    basis = _hom(a, g1, g0)
    if not basis:
        return projective_module(a, g0)
    coeffs = draw(st.lists(st.integers(-2, 2), min_size=len(basis), max_size=len(basis)))
    f = combine(basis, [a.field(c) for c in coeffs])
    return cokernel(f)[0]


@st.composite
def modules(draw, names=ALL, count=1):
    name = draw(st.sampled_from(names))
    field = draw(st.sampled_from(sorted(FIELDS)))
    a = _alg(name, field)
    out = [draw(module_over(a)) for _ in range(count)]
    return out[0] if count == 1 else tuple(out)


@settings(max_examples=40, **SETTINGS)
@given(modules())
@counted
def test_hom_from_projectives_and_into_injectives(x):
    a = x.algebra
    for v in a.vertices:
        assert hom_dim(indec_projective(a, v), x) == x.dims[v - 1]
        assert hom_dim(x, indec_injective(a, v)) == x.dims[v - 1]


@settings(max_examples=30, **SETTINGS)
@given(modules(count=2))
@counted
def test_duality_preserves_hom(pair):
    x, y = pair
    assert dual(dual(x)) == x
    assert hom_dim(x, y) == hom_dim(dual(y), dual(x))


@settings(max_examples=30, **SETTINGS)
@given(modules(count=2))
@counted
def test_hom_additive(pair):
    x, y = pair
    s = direct_sum([x, y])[0]
    assert hom_dim(s, y) == hom_dim(x, y) + hom_dim(y, y)


@settings(max_examples=30, **SETTINGS)
@given(modules())
@counted
def test_resolution_is_exact_and_minimal(x):
    res = min_proj_resolution(x, 3)
    assert res.check() == []
    p, pi = projective_cover(x)
    assert p.dim == x.dim + syzygy(x, 1).dim
    assert pi.rank() == x.dim


@settings(max_examples=40, **SETTINGS)
@given(modules(REP_FINITE))
@counted
def test_decompose_reassembles(x):
    d = decompose(x)
    if x.is_zero():
        return
    total, iso = d.reassemble()
    assert total.dims == x.dims
    assert iso.is_homomorphism() and iso.is_iso()


# --- exact linear algebra

@st.composite
def matrices(draw, max_rows=5, max_cols=5):
    field = FIELDS[draw(st.sampled_from(sorted(FIELDS)))]
    r = draw(st.integers(0, max_rows))
    c = draw(st.integers(0, max_cols))
    rows = draw(st.lists(st.lists(st.integers(-3, 3), min_size=c, max_size=c), min_size=r, max_size=r))
    return Matrix(field, [[field(v) for v in row] for row in rows], c)


@settings(max_examples=40, **SETTINGS)
@given(matrices())
@counted
def test_rref_idempotent_and_rank_nullity(m):
    r, piv = rref(m)
    assert rref(r)[0] == r and len(piv) == rank(m)
    assert rank(m) + m.kernel().ncols == m.ncols
    assert (m @ m.kernel()).is_zero()
    assert rank(m) == rank(m.T)


@settings(max_examples=40, **SETTINGS)
@given(matrices(), st.data())
@counted
def test_solve(m, data):
    f = m.field
    x = [f(v) for v in data.draw(st.lists(st.integers(-3, 3), min_size=m.ncols, max_size=m.ncols))]
    b = m.apply(x)
    y = solve(m, b)
    assert y is not None and m.apply(y) == b


@settings(max_examples=40, **SETTINGS)
@given(st.sampled_from(sorted(FIELDS)), st.integers(-50, 50), st.integers(-50, 50), st.integers(-50, 50))
@counted
def test_field_axioms(name, i, j, k):
    f = FIELDS[name]
    a, b, c = f(i), f(j), f(k)
    assert f.add(a, b) == f.add(b, a) and f.mul(a, b) == f.mul(b, a)
    assert f.mul(a, f.add(b, c)) == f.add(f.mul(a, b), f.mul(a, c))
    assert f.add(a, f.neg(a)) == f.zero and f.sub(a, b) == f.add(a, f.neg(b))
    if a != f.zero:
        assert f.mul(a, f.inv(a)) == f.one
    else:
        with pytest.raises(ZeroDivisionError):
            f.inv(a)
