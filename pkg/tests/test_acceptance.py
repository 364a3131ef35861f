"""End-to-end acceptance criteria; each test reports one pass/fail line in the summary."""
import pytest

from qrep.ar_theory import knit_ar_quiver, stable_hom_dim, tau_inv
from qrep.cli.main import run_demo
from qrep.cli.workspace import Workspace
from qrep.cluster_tilting import check_via_endo, check_via_list
from qrep.endomorphism import basic_presentation, endo_algebra, presentation_to_algebra, quivers_isomorphic
from qrep.errors import GenCogenFailed
from qrep.homology import (
    complexity_report,
    dominant_dimension,
    ext_dim,
    global_dimension,
    is_higher_auslander,
    min_proj_resolution,
    radsq_complexity_exact,
    radsq_multiplicities,
    syzygy_graph,
)
from qrep.quiver_algebra import Arrow, Quiver
from qrep.representations import (
    decompose,
    direct_sum,
    dual_regular_module,
    is_isomorphic,
    regular_module,
    simple,
    syzygy,
)

from . import oracles
from . import test_properties as props


@pytest.fixture
def criterion(record_property):
    def mark(num, title):
        record_property("acceptance", (num, title))
    return mark


def _M(a):
    return direct_sum([regular_module(a), dual_regular_module(a)])[0]


def _census(d):
    return {s.module.name: s.multiplicity for s in d.summands}


def test_flagship_demo(criterion):
    criterion(1, "A + D(A) is 2-cluster tilting in both modes and S2 has infinite complexity")
    ok, result, lines = run_demo(Workspace.load())
    assert ok
    assert result["ar_quiver"] == {"vertices": 9, "arrows": 12, "complete": True}
    assert result["via_list"]["result"] and result["via_endo"]["result"]
    assert result["via_endo"]["evidence"]["gldim"] == "Finite(3)"
    assert result["via_endo"]["evidence"]["domdim"] == "Finite(3)"
    cx = result["complexity"]["S2"]
    assert (cx["kind"], cx["a"], cx["p"], cx["m"]) == ("infinite_certified", 0, 2, 2)
    assert result["witness"] == "S2"


def test_syzygy_recurrence(criterion, A):
    criterion(2, "syzygies of S2 alternate S1^k + S3^k and S2^2k; dim P_n >= 2^(n/2)")
    g = syzygy_graph(A)
    _, vecs = g.sequence(simple(A, 2), 20)
    x = simple(A, 2)
    for n in range(1, 21):
        x = syzygy(x, 1)
        expected = {"S1": 2 ** ((n - 1) // 2), "S3": 2 ** ((n - 1) // 2)} if n % 2 else {"S2": 2 ** (n // 2)}
        assert _census(decompose(x)) == expected, n
        assert {g.classes[i].name: k for i, k in vecs[n].items()} == expected, n
    dims = complexity_report(simple(A, 2), 40).term_dims
    assert len(dims) == 41
    assert dims[:5] == oracles.S2_TERM_DIMS
    assert all(d >= 2 ** (n / 2) for n, d in enumerate(dims))
    assert min_proj_resolution(simple(A, 2), 8).term_dims() == dims[:9]


def test_ar_data(criterion, A):
    criterion(3, "AR quiver: 9 classes, 12 arrows, tau table, tau^- A = S1 + S2 + S3")
    q = knit_ar_quiver(A)
    assert q.complete
    assert set(q.labels) == oracles.AR_CLASSES and len(q.labels) == 9
    assert q.arrow_count == oracles.AR_ARROWS
    assert all(k == 1 for k in q.arrows.values())
    assert q.tau_pairs() == oracles.TAU_TABLE
    sims = direct_sum([simple(A, v) for v in A.vertices])[0]
    assert is_isomorphic(tau_inv(regular_module(A)), sims)


def test_ext_checks(criterion, A):
    criterion(4, "Ext^1(DA, A) = 0 and Ext^1(M, S_i) != 0")
    assert ext_dim(1, dual_regular_module(A), regular_module(A)) == 0
    m = _M(A)
    assert all(ext_dim(1, m, simple(A, v)) >= 1 for v in A.vertices)


def test_ar_formula(criterion, A):
    criterion(5, "Ext^1(X, Y) = stable Hom(tau^- Y, X) on all 81 pairs")
    mods = knit_ar_quiver(A).vertices
    failures = [(x.name, y.name) for x in mods for y in mods
                if ext_dim(1, x, y) != stable_hom_dim(tau_inv(y), x)]
    assert len(mods) ** 2 == 81
    assert failures == []


def test_endomorphism_algebra(criterion, A, endo_ref):
    criterion(6, "End(M) is presented by Q_B and both algebras are 3-Auslander")
    pres = basic_presentation(endo_algebra(_M(A)))
    ref = Quiver(6, [Arrow(f"a{k}", s, t) for k, (s, t) in enumerate(oracles.QB_ARROWS, 1)])
    assert quivers_isomorphic(pres.quiver, ref)
    assert quivers_isomorphic(pres.quiver, endo_ref.quiver)
    computed = presentation_to_algebra(pres)
    assert computed.dim == endo_ref.dim
    for b in (computed, endo_ref):
        gl, dd = global_dimension(b), dominant_dimension(b)
        assert gl.is_finite and gl.value == oracles.QB_GLDIM
        assert dd.is_finite and dd.value == oracles.QB_DOMDIM
        assert is_higher_auslander(b).result


def test_negative_controls(criterion, A):
    criterion(7, "negative controls on A")
    gl = global_dimension(A)
    assert gl.is_infinite and gl.witness is not None
    assert str(gl).startswith("InfiniteCertified")
    d = dominant_dimension(A)
    assert d.is_finite and d.value == 0
    with pytest.raises(GenCogenFailed):
        check_via_endo(A, regular_module(A), 2)
    indecs = knit_ar_quiver(A).vertices
    assert check_via_list(A, _M(A) + simple(A, 2), 2, indecs).result is False


EXPECTED_KIND = {"exponential": "infinite_certified", "bounded": "one_certified", "finite_pd": "zero"}


def test_radsq_classifier(criterion, A, loop, A2):
    criterion(8, "radical-square-zero classifier agrees with the resolution window")
    assert str(radsq_complexity_exact(A, 2)) == "Exponential"
    cases = [(A, v) for v in A.vertices] + [(loop, 1), (A2, 1), (A2, 2)]
    for alg, v in cases:
        exact = radsq_complexity_exact(alg, v)
        window = complexity_report(simple(alg, v), 20)
        assert window.kind == EXPECTED_KIND[exact.kind], (alg, v)
        proj_dims = [sum(r) for r in _projective_dims(alg)]
        mult = radsq_multiplicities(alg, v, 20)
        predicted = [sum(k * proj_dims[j] for j, k in enumerate(vec)) for vec in mult]
        assert window.term_dims == predicted[:len(window.term_dims)]


def _projective_dims(alg):
    from qrep.representations import indec_projective
    return [indec_projective(alg, v).dims for v in alg.vertices]


def test_property_suites(criterion):
    criterion(9, "randomised property suites over Q and GF(5)")
    props.RUNS.clear()
    suites = [getattr(props, name) for name in dir(props) if name.startswith("test_")]
    for suite in suites:
        suite()
    assert props.RUNS.total() >= 200
    assert len(props.RUNS) == len(suites)


def test_hereditary_sanity(criterion, A2):
    criterion(10, "linear A2: gldim 1, three indecomposables, simples of complexity zero")
    gl = global_dimension(A2)
    assert gl.is_finite and gl.value == 1
    assert len(knit_ar_quiver(A2).vertices) == 3
    for v in A2.vertices:
        r = complexity_report(simple(A2, v), 10)
        assert r.kind == "zero" and r.complexity == 0
