from fractions import Fraction

import numpy as np
import pytest

from rsq.errors import InputFormatError, ShapeMismatchError
from rsq.linalg import (FieldSpec, column_space, complement_columns, inverse, is_nilpotent, is_zero, rank,
                        rank_kernel, rref, solve_all)


def test_parse_fields():
    assert FieldSpec.parse("q").is_rational
    assert FieldSpec.parse("fp:7").prime == 7
    assert str(FieldSpec.parse("FP:32003")) == "fp:32003"
    for bad in ("fp:8", "fp:x", "reals"):
        with pytest.raises(InputFormatError):
            FieldSpec.parse(bad)


def test_scalars(F2):
    f5 = FieldSpec(5)
    assert f5.scalar(Fraction(1, 2)) == 3
    assert f5.inv(2) == 3
    assert F2.scalar(-1) == 1
    assert FieldSpec().inv(3) == Fraction(1, 3)


def test_rank_depends_on_the_field(QQ, F2):
    m = [[1, 1], [1, -1]]
    assert rank(QQ, QQ.matrix(m)) == 2
    assert rank(F2, F2.matrix(m)) == 1
    assert rank(QQ, QQ.zeros(0, 3)) == 0


def test_rref_pivots(QQ):
    r, pivots = rref(QQ, QQ.matrix([[0, 2, 4], [0, 1, 2], [1, 0, 0]]))
    assert pivots == [0, 1]
    assert r[0, 0] == 1 and r[1, 1] == 1 and r[1, 2] == 2


def test_kernel_is_annihilated(F):
    m = F.matrix([[1, 2, 3], [2, 4, 6]])
    r, kernel = rank_kernel(F, m)
    assert r == 1
    assert kernel.shape == (3, 2)
    assert is_zero(F.matmul(m, kernel))


def test_kernel_basis_is_column_echelon(QQ):
    m = QQ.matrix([[0, 1, 2, 3], [0, 2, 4, 6]])
    r, kernel = rank_kernel(QQ, m)
    assert (r, kernel.shape) == (1, (4, 3))
    assert np.array_equal(kernel[:3], QQ.eye(3))
    assert list(kernel[3]) == [0, Fraction(-1, 3), Fraction(-2, 3)]
    assert is_zero(QQ.matmul(m, kernel))


def test_solve_all(QQ):
    a = QQ.matrix([[1, 1], [0, 1]])
    sol = solve_all(QQ, a, QQ.matrix([[3], [1]]))
    assert sol.particular[0, 0] == 2 and sol.particular[1, 0] == 1
    assert solve_all(QQ, QQ.matrix([[1], [1]]), QQ.matrix([[0], [1]])) is None
    with pytest.raises(ShapeMismatchError):
        solve_all(QQ, a, QQ.matrix([[1]]))


def test_inverse(QQ, F):
    inv = inverse(QQ, QQ.matrix([[2, 1], [1, 1]]))
    assert np.array_equal(inv, QQ.matrix([[1, -1], [-1, 2]]))
    assert inverse(F, F.matrix([[1, 2], [2, 4]])) is None


def test_matmul_over_prime_field_does_not_overflow(F):
    big = F.matrix([[32002] * 4])
    prod = F.matmul(big, F.matrix([[32002]] * 4))
    assert prod[0, 0] == 4


def test_column_space_and_complement(QQ):
    basis = column_space(QQ, QQ.matrix([[1, 2], [0, 0], [1, 2]]))
    assert basis.shape == (3, 1)
    comp = complement_columns(QQ, basis)
    assert comp.shape == (3, 2)
    assert rank(QQ, np.hstack([basis, comp])) == 3


def test_nilpotent(QQ):
    assert is_nilpotent(QQ, QQ.matrix([[0, 1, 0], [0, 0, 1], [0, 0, 0]]))
    assert not is_nilpotent(QQ, QQ.eye(2))


def test_random_matrix_is_seeded(F):
    a = F.random_matrix(np.random.default_rng(7), 3, 3)
    b = F.random_matrix(np.random.default_rng(7), 3, 3)
    assert np.array_equal(a, b)
