import pytest

from qrep.ar_theory import knit_ar_quiver
from qrep.cluster_tilting import (
    add_membership,
    basic_part,
    check_via_endo,
    check_via_list,
    is_generator_cogenerator,
)
from qrep.errors import DuplicateListEntry, GenCogenFailed, ListEntryDecomposable
from qrep.representations import (
    direct_sum,
    dual_regular_module,
    indec_injective,
    regular_module,
    simple,
)


@pytest.fixture(scope="module")
def M(A):
    return direct_sum([regular_module(A), dual_regular_module(A)])[0]


@pytest.fixture(scope="module")
def indecs(A):
    return knit_ar_quiver(A).vertices


def test_list_mode_certifies(A, M, indecs):
    v = check_via_list(A, M, 2, indecs)
    assert v.result and v.mode == "list"
    assert v.evidence["left"] == v.evidence["right"] == v.evidence["summands"]


def test_list_mode_rejects_regular(A, indecs):
    v = check_via_list(A, regular_module(A), 2, indecs)
    assert not v.result
    assert v.evidence["offender"] is not None


def test_list_mode_rejects_extra_summand(A, M, indecs):
    v = check_via_list(A, M + simple(A, 2), 2, indecs)
    assert not v.result


def test_list_mode_n1(A, M, indecs):
    assert not check_via_list(A, M, 1, indecs).result


def test_list_validation(A, M, indecs):
    with pytest.raises(ListEntryDecomposable):
        check_via_list(A, M, 2, list(indecs) + [M])
    with pytest.raises(DuplicateListEntry):
        check_via_list(A, M, 2, list(indecs) + [simple(A, 2)])
    with pytest.raises(ValueError):
        check_via_list(A, M, 0, indecs)


def test_endo_mode(A, M):
    v = check_via_endo(A, M, 2)
    assert v.result and v.evidence["gldim"] == v.evidence["domdim"] == "Finite(3)"
    assert not check_via_endo(A, M, 1).result
    assert not check_via_endo(A, M + simple(A, 2), 2).result


def test_endo_mode_needs_gen_cogen(A):
    with pytest.raises(GenCogenFailed):
        check_via_endo(A, regular_module(A), 2)


def test_modes_agree(A, M, indecs):
    for mod in (M, M + simple(A, 1)):
        assert check_via_list(A, mod, 2, indecs).result == check_via_endo(A, mod, 2).result


def test_add_membership(A, M):
    assert add_membership(M, indec_injective(A, 2))
    assert not add_membership(M, simple(A, 2))
    assert is_generator_cogenerator(A, M) == (True, True)
    assert is_generator_cogenerator(A, regular_module(A)) == (True, False)
    assert basic_part(M + M).dim == M.dim
