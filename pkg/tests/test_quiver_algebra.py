import itertools

import pytest

from qrep.errors import NotAdmissible, NotAdmissibleWithinCap
from qrep.exact_linalg import QQ
from qrep.quiver_algebra import (
    Arrow,
    Quiver,
    RelationSet,
    build_algebra,
    enumerate_paths,
    multiply,
    opposite,
    relation_from_terms,
)

from . import oracles
from .conftest import F5


def test_enumerate_paths(A):
    q = A.quiver
    assert [p.label(q) for p in enumerate_paths(q, 0)] == ["e1", "e2", "e3"]
    assert [p.label(q) for p in enumerate_paths(q, 1)] == ["a", "b", "c", "d"]
    assert [p.label(q) for p in enumerate_paths(q, 2)] == oracles.EXAMPLE_LENGTH2_PATHS


def test_example_basis(A):
    assert [A.basis_label(i) for i in range(A.dim)] == oracles.EXAMPLE_BASIS
    assert A.dim == oracles.EXAMPLE_DIM and A.nilpotency == oracles.EXAMPLE_NILPOTENCY
    assert A.is_radical_square_zero()


def test_controls(A2, square, loop):
    assert A2.dim == oracles.LINEAR_A2_DIM
    assert square.dim == oracles.SQUARE_DIM
    assert loop.dim == oracles.ONE_LOOP_DIM


def _basis_vec(a, i):
    v = [a.field.zero] * a.dim
    v[i] = a.field.one
    return v


@pytest.mark.parametrize("name", ["A", "square", "loop", "endo_ref"])
def test_associative_and_unital(name, request):
    a = request.getfixturevalue(name)
    unit = a.unit()
    for i in range(a.dim):
        x = _basis_vec(a, i)
        assert multiply(a, unit, x) == x == multiply(a, x, unit)
    for i, j, k in itertools.product(range(a.dim), repeat=3):
        if not a.mult[i][j] and not a.mult[j][k]:
            continue
        x, y, z = _basis_vec(a, i), _basis_vec(a, j), _basis_vec(a, k)
        assert multiply(a, multiply(a, x, y), z) == multiply(a, x, multiply(a, y, z))


def test_products_in_example(A):
    e1 = A.idempotent(1)
    a_ = _basis_vec(A, A.basis.index(next(p for p in A.basis if p.label(A.quiver) == "a")))
    b_ = _basis_vec(A, A.basis.index(next(p for p in A.basis if p.label(A.quiver) == "b")))
    assert multiply(A, e1, e1) == e1
    assert not any(multiply(A, a_, b_))
    assert multiply(A, e1, a_) == a_


def test_relations_vanish(square, endo_ref):
    for alg in (square, endo_ref):
        for rel in alg.relations.relations:
            assert alg.relation_vanishes(rel)


def test_nilpotency_kills_long_products(endo_ref):
    m = endo_ref.nilpotency
    for p in enumerate_paths(endo_ref.quiver, m):
        assert endo_ref.normal_form(p) == {}


def test_opposite(A, A2):
    op = opposite(A)
    assert op.dim == 7
    assert opposite(op) is A
    op2 = opposite(A2)
    assert op2.quiver.arrows[0].source == 2 and op2.quiver.arrows[0].target == 1
    fresh = opposite(opposite(A, cache=False), cache=False)
    assert fresh.dim == A.dim and fresh.mult == A.mult


def test_not_admissible():
    q = Quiver(2, [Arrow("a", 1, 2)])
    with pytest.raises(NotAdmissible):
        build_algebra(q, RelationSet((relation_from_terms(q, [(1, ["a"])]),)))


def test_infinite_dimensional_rejected():
    q = Quiver(1, [Arrow("x", 1, 1)])
    with pytest.raises(NotAdmissibleWithinCap):
        build_algebra(q, RelationSet(), QQ, len_cap=6)


def test_prime_field_build(A5):
    assert A5.dim == 7 and A5.field == F5
