import math

import pytest

from qrep.errors import NotRadicalSquareZero
from qrep.homology import (
    SyzygyGraph,
    complexity_report,
    dominant_dimension,
    ext_dim,
    ext_dim_via_complex,
    global_dimension,
    is_higher_auslander,
    min_inj_coresolution,
    min_proj_resolution,
    proj_dim,
    radsq_complexity_exact,
    radsq_multiplicities,
    syzygy_graph,
)
from qrep.representations import (
    dual_regular_module,
    indec_injective,
    indec_projective,
    regular_module,
    simple,
)

from . import oracles


def test_resolution_of_s2(A):
    res = min_proj_resolution(simple(A, 2), 4)
    assert res.term_dims() == oracles.S2_TERM_DIMS
    assert res.check() == []


def test_resolution_of_projective(A):
    res = min_proj_resolution(indec_projective(A, 3), 3)
    assert res.term_dims() == [2, 0, 0, 0]


def test_resolution_linear_a2(A2):
    res = min_proj_resolution(simple(A2, 1), 3)
    assert [p.generators for p in res.terms] == [(1,), (2,), (), ()]
    assert res.check() == []


def test_ext_examples(A):
    m = regular_module(A) + dual_regular_module(A)
    for v in A.vertices:
        assert ext_dim(1, m, simple(A, v)) >= 1
    assert ext_dim(1, dual_regular_module(A), regular_module(A)) == 0
    for i in (1, 2, 3):
        assert ext_dim(i, indec_projective(A, 1), simple(A, 2)) == 0


@pytest.mark.parametrize("i", [1, 2, 3])
def test_ext_two_routes_agree(A, i):
    mods = [simple(A, v) for v in A.vertices] + [indec_injective(A, v) for v in A.vertices]
    for x in mods:
        for y in mods:
            assert ext_dim(i, x, y) == ext_dim_via_complex(i, x, y)


def test_proj_dim(A, A2):
    assert proj_dim(indec_projective(A, 1)).value == 0
    d = proj_dim(simple(A, 2))
    assert d.is_infinite and d.witness.module.dims == (0, 1, 0)
    assert proj_dim(simple(A2, 1)).value == 1


def test_pd_witness_recurs(A):
    d = proj_dim(simple(A, 2))
    g = syzygy_graph(A)
    w = d.witness
    full, vecs = g.sequence(simple(A, 2), w.b)
    idx = g.classes.index(w.module)
    assert vecs[w.a][idx] >= 1 and vecs[w.b][idx] >= 1


def test_finite_pd_ext_consequence(A2):
    s1 = simple(A2, 1)
    d = proj_dim(s1).value
    mods = [simple(A2, 1), simple(A2, 2), indec_projective(A2, 1)]
    assert all(ext_dim(d + 1, s1, x) == 0 for x in mods)
    assert any(ext_dim(d, s1, x) for x in mods)


def test_global_dimension(A, A2, endo_ref):
    assert global_dimension(A).is_infinite
    assert global_dimension(A2).value == 1
    assert global_dimension(endo_ref).value == oracles.QB_GLDIM


def test_dominant_dimension(A, loop, endo_ref):
    assert dominant_dimension(A).value == 0 and dominant_dimension(A).is_finite
    assert dominant_dimension(endo_ref).value == oracles.QB_DOMDIM
    d = dominant_dimension(loop, cap=10)
    assert d.kind == "at_least" and d.value == 10


def test_injective_coresolution(A):
    co = min_inj_coresolution(regular_module(A), 2)
    assert [t.dims for t in co.terms] == [(3, 4, 3), (2, 3, 2), (3, 4, 3)]
    assert co.projective_flags == [False, False, False]
    assert co.coaugmentation.rank() == regular_module(A).dim


def test_higher_auslander(A, A2, endo_ref):
    assert is_higher_auslander(endo_ref).result
    assert not is_higher_auslander(A).result
    assert not is_higher_auslander(A2).result


def test_complexity_examples(A, loop):
    v = complexity_report(simple(A, 2), 40)
    assert (v.kind, v.a, v.p, v.m) == ("infinite_certified", 0, 2, 2)
    assert v.lower_bound_verified
    assert v.term_dims[:5] == oracles.S2_TERM_DIMS
    assert complexity_report(indec_projective(A, 2), 10).kind == "zero"
    v = complexity_report(simple(loop, 1), 10)
    assert v.kind == "one_certified" and v.complexity == 1
    assert complexity_report(simple(A, 2)).complexity == math.inf


def test_term_dims_match_tops(A):
    v = complexity_report(simple(A, 1), 8)
    res = min_proj_resolution(simple(A, 1), 8)
    assert v.term_dims[:9] == res.term_dims()


def test_radsq_classifier(A, loop, A2, square):
    assert str(radsq_complexity_exact(A, 2)) == "Exponential"
    assert str(radsq_complexity_exact(loop, 1)) == "Bounded"
    assert str(radsq_complexity_exact(A2, 1)) == "FinitePd"
    with pytest.raises(NotRadicalSquareZero):
        radsq_complexity_exact(square, 1)


def test_radsq_polynomial():
    from qrep.quiver_algebra import Arrow, Quiver, RelationSet, build_algebra
    # two loops at different vertices linked by an arrow: chain of two cycles
    q = Quiver(2, [Arrow("x", 1, 1), Arrow("a", 1, 2), Arrow("y", 2, 2)])
    alg = build_algebra(q, RelationSet((), (2,)))
    v = radsq_complexity_exact(alg, 1)
    assert str(v) == "Polynomial(1)"
    mult = radsq_multiplicities(alg, 1, 6)
    assert mult[6] == [1, 6]


def test_radsq_multiplicities_match_syzygies(A):
    g = syzygy_graph(A)
    for v in A.vertices:
        full, vecs = g.sequence(simple(A, v), 20)
        mult = radsq_multiplicities(A, v, 20)
        for n, vec in enumerate(vecs):
            counts = [0, 0, 0]
            for i, k in vec.items():
                counts[g.classes[i].dims.index(1)] += k
            assert counts == mult[n]
