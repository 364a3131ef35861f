from fractions import Fraction

import pytest

from qrep.exact_linalg import FieldSpec, Matrix, QQ, kernel_basis, rank, rref, solve

from . import oracles

F5 = FieldSpec(5)


def test_field_rejects_composite():
    with pytest.raises(ValueError):
        FieldSpec(6)


def test_field_labels_and_coercion():
    assert QQ.label == "Q" and F5.label == "F 5"
    assert F5(Fraction(1, 2)) == 3
    assert QQ("-3/4") == Fraction(-3, 4)
    assert F5.inv(2) == 3


def test_rref_identity_and_zero():
    i2 = Matrix.identity(QQ, 2)
    r, piv = rref(i2)
    assert r == i2 and piv == [0, 1]
    z = Matrix.zeros(QQ, 2, 2)
    r, piv = rref(z)
    assert r == z and piv == []


def test_rref_hand_example():
    src, want, pivots = oracles.RREF_EXAMPLE
    r, piv = rref(Matrix(QQ, src))
    assert r == Matrix(QQ, want) and piv == pivots
    assert rank(Matrix(QQ, src)) == 1


def test_kernel_examples():
    assert kernel_basis(Matrix.identity(QQ, 3)).ncols == 0
    assert kernel_basis(Matrix.zeros(QQ, 2, 3)).ncols == 3
    src, vec = oracles.KERNEL_EXAMPLE
    k = kernel_basis(Matrix(QQ, src))
    assert k.ncols == 1
    col = k.column(0)
    # proportional to the oracle vector
    assert col[0] * vec[1] == col[1] * vec[0]


def test_solve_examples():
    i3 = Matrix.identity(QQ, 3)
    assert solve(i3, [1, 2, 3]) == [1, 2, 3]
    assert solve(Matrix(QQ, [[1, 1]]), [0]) == [0, 0]
    assert solve(Matrix(QQ, [[0]]), [1]) is None
    with pytest.raises(ValueError):
        solve(i3, [1, 2])


def test_prime_field_matrix_inverse():
    m = Matrix(F5, [[1, 2], [3, 4]])
    assert m @ m.inverse() == Matrix.identity(F5, 2)
