# -*- coding: utf-8 -*-
from fractions import Fraction

import pytest

from loop_ranking.core.exceptions import DimensionError
from loop_ranking.core.geometry import linalg
from loop_ranking.core.geometry.linalg import AffineFunc


def test_to_rational():
    print("Test to_rational")
    assert linalg.to_rational("1/2") == Fraction(1, 2)
    assert linalg.to_rational(3) == Fraction(3)
    assert linalg.to_rational("0.25") == Fraction(1, 4)


def test_vector_operations():
    u = linalg.vector([1, "1/2", 0])
    v = linalg.vector([2, 2, -1])
    assert linalg.dot(u, v) == 3
    assert linalg.add(u, v) == linalg.vector([3, "5/2", -1])
    assert linalg.sub(u, v) == linalg.vector([-1, "-3/2", 1])
    assert linalg.scale(2, u) == linalg.vector([2, 1, 0])
    assert linalg.neg(v) == linalg.vector([-2, -2, 1])
    assert linalg.is_zero(linalg.zeros(3))
    assert not linalg.is_integral(u)
    assert linalg.unit(3, 1) == linalg.vector([0, 1, 0])


def test_dot_dimension_mismatch():
    with pytest.raises(DimensionError):
        linalg.dot(linalg.vector([1, 2]), linalg.vector([1]))


def test_primitive():
    assert linalg.primitive(linalg.vector(["1/2", "-3/4"])) == linalg.vector(
        [2, -3]
    )
    assert linalg.primitive(linalg.vector([4, 6, 0])) == linalg.vector(
        [2, 3, 0]
    )


def test_rank_and_determinant():
    m = linalg.matrix([[1, 2], [2, 4]])
    assert linalg.rank(m) == 1
    assert linalg.determinant(m) == 0
    m = linalg.matrix([[2, 1], [1, 3]])
    assert linalg.rank(m) == 2
    assert linalg.determinant(m) == 5
    assert linalg.determinant(linalg.matrix([[0, 1], [1, 0]])) == -1


def test_solve():
    m = linalg.matrix([[2, 1], [1, 3]])
    assert linalg.solve(m, linalg.vector([3, 4])) == linalg.vector([1, 1])
    assert linalg.solve(linalg.matrix([[1, 1], [2, 2]]), (1, 2)) is None


def test_transpose_and_products():
    m = linalg.matrix([[1, 2, 3], [4, 5, 6]])
    assert linalg.transpose(m) == linalg.matrix([[1, 4], [2, 5], [3, 6]])
    assert linalg.mat_vec(m, linalg.vector([1, 0, 1])) == linalg.vector(
        [4, 10]
    )
    assert linalg.vec_mat(linalg.vector([1, 1]), m, 3) == linalg.vector(
        [5, 7, 9]
    )


def test_independent_subset():
    vectors = linalg.matrix([[1, 0], [2, 0], [0, 1], [1, 1]])
    assert linalg.independent_subset(vectors) == [0, 2]


def test_format_rational():
    assert linalg.format_rational(Fraction(3)) == "3"
    assert linalg.format_rational(Fraction(-1, 2)) == "-1/2"


def test_affine_func():
    rho = AffineFunc(-1, (1, 1))
    assert rho.n == 2
    assert rho.evaluate(linalg.vector([1, 1])) == 1
    assert rho.delta(linalg.vector([2, 1, 1, 1])) == 1
    assert rho.delta_row() == linalg.vector([1, 1, -1, -1])
    assert str(rho) == "x1 + x2 - 1"
    assert rho.format(["a", "b"]) == "a + b - 1"
    assert str(AffineFunc.zero(2)) == "0"
    assert str(AffineFunc("1/2", (-2, 0))) == "-2*x1 + 1/2"


def test_affine_delta_dimension():
    with pytest.raises(DimensionError):
        AffineFunc(0, (1, 1)).delta(linalg.vector([1, 1]))


def test_integer_scale():
    rho, factor = AffineFunc("1/2", ("1/3", 1)).integer_scale()
    assert factor == 6
    assert rho == AffineFunc(3, (2, 6))
    assert linalg.is_integral(rho.coeffs)


def test_combinators():
    rho = AffineFunc(1, (1, 0))
    other = AffineFunc(-1, (0, 2))
    assert rho.plus(other) == AffineFunc(0, (1, 2))
    assert rho.scaled(3) == AffineFunc(3, (3, 0))
    assert rho.shifted(2) == AffineFunc(3, (1, 0))
