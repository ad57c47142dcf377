# -*- coding: utf-8 -*-
# Loop Ranking - Linear and lexicographic ranking functions for linear-constraint loops
# Copyright (C) 2024 - CNES (Jean-Christophe Malapert for PDSSP)
#
# This file is part of Loop Ranking.
#
# Loop Ranking is free software: you can redistribute it and/or modify
# it under the terms of the GNU Lesser General Public License v3  as published by
# the Free Software Foundation, either version 3 of the License, or
# (at your option) any later version.
#
# Loop Ranking is distributed in the hope that it will be useful,
# but WITHOUT ANY WARRANTY; without even the implied warranty of
# MERCHANTABILITY or FITNESS FOR A PARTICULAR PURPOSE.  See the
# GNU Lesser General Public License v3  for more details.
#
# You should have received a copy of the GNU Lesser General Public License v3
# along with Loop Ranking.  If not, see <https://www.gnu.org/licenses/>.
"""Exact rational vectors, matrices and affine functions.

Vectors and matrices are plain tuples of :class:`fractions.Fraction` so that
they are hashable, immutable and can be shared freely between the geometry
and synthesis modules.
"""
import logging
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from math import lcm
from typing import Iterable
from typing import List
from typing import Optional
from typing import Sequence
from typing import Tuple
from typing import Union

from ..exceptions import DimensionError

logger = logging.getLogger(__name__)

Rational = Fraction
Vector = Tuple[Fraction, ...]
Matrix = Tuple[Vector, ...]
Number = Union[int, str, Fraction]

ZERO = Fraction(0)
ONE = Fraction(1)


def to_rational(value: Number) -> Fraction:
    """Converts an integer, a "p/q" or decimal string or a Fraction.

    Args:
        value (Number): value to convert

    Returns:
        Fraction: the exact rational
    """
    if isinstance(value, Fraction):
        return value
    return Fraction(value)


def vector(values: Iterable[Number]) -> Vector:
    """Builds a vector from numbers."""
    return tuple(to_rational(value) for value in values)


def matrix(rows: Iterable[Iterable[Number]]) -> Matrix:
    """Builds a matrix from rows of numbers."""
    return tuple(vector(row) for row in rows)


def zeros(dim: int) -> Vector:
    """The zero vector of the given dimension."""
    return (ZERO,) * dim


def unit(dim: int, index: int) -> Vector:
    """The unit vector e_index of the given dimension."""
    return tuple(ONE if i == index else ZERO for i in range(dim))


def _check_same_dim(u: Sequence, v: Sequence):
    if len(u) != len(v):
        raise DimensionError(f"dimension mismatch: {len(u)} != {len(v)}")


def dot(u: Sequence[Fraction], v: Sequence[Fraction]) -> Fraction:
    """Scalar product.

    Raises:
        DimensionError: vectors of different sizes
    """
    _check_same_dim(u, v)
    return sum((x * y for x, y in zip(u, v) if x and y), ZERO)


def add(u: Vector, v: Vector) -> Vector:
    """Sum of two vectors."""
    _check_same_dim(u, v)
    return tuple(x + y for x, y in zip(u, v))


def sub(u: Vector, v: Vector) -> Vector:
    """Difference of two vectors."""
    _check_same_dim(u, v)
    return tuple(x - y for x, y in zip(u, v))


def scale(factor: Number, v: Vector) -> Vector:
    """Product of a scalar and a vector."""
    factor = to_rational(factor)
    return tuple(factor * x for x in v)


def neg(v: Vector) -> Vector:
    """Opposite of a vector."""
    return tuple(-x for x in v)


def is_zero(v: Sequence[Fraction]) -> bool:
    """True when every entry is zero."""
    return all(x == 0 for x in v)


def is_integral(v: Sequence[Fraction]) -> bool:
    """True when every entry is an integer."""
    return all(Fraction(x).denominator == 1 for x in v)


def primitive(v: Vector) -> Vector:
    """Positive multiple of v with coprime integer entries.

    The direction is kept: only positive factors are applied, so the
    result is a valid canonical form for rays.
    """
    if is_zero(v):
        return tuple(ZERO for _ in v)
    den = lcm(*(x.denominator for x in v))
    nums = [int(x * den) for x in v]
    div = gcd(*nums)
    return tuple(Fraction(x // div) for x in nums)


def transpose(m: Sequence[Sequence[Fraction]], cols: int = 0) -> Matrix:
    """Transpose of a matrix; `cols` is used for matrices without rows."""
    if not m:
        return tuple(() for _ in range(cols))
    return tuple(tuple(column) for column in zip(*m))


def mat_vec(m: Sequence[Vector], v: Vector) -> Vector:
    """Product of a matrix and a vector."""
    return tuple(dot(row, v) for row in m)


def vec_mat(v: Vector, m: Sequence[Vector], cols: int) -> Vector:
    """Product of a row vector and a matrix with `cols` columns."""
    if len(v) != len(m):
        raise DimensionError(f"dimension mismatch: {len(v)} != {len(m)}")
    result = [ZERO] * cols
    for coef, row in zip(v, m):
        if coef:
            for j, entry in enumerate(row):
                if entry:
                    result[j] += coef * entry
    return tuple(result)


def _check_rectangular(m: Sequence[Sequence[Fraction]]) -> int:
    if not m:
        return 0
    cols = len(m[0])
    for row in m:
        if len(row) != cols:
            raise DimensionError("the matrix is not rectangular")
    return cols


def _bareiss(rows: List[List[Fraction]], cols: int) -> Tuple[int, int]:
    """Fraction-free elimination in place.

    Returns the rank and the sign of the row permutation.
    """
    rank_found = 0
    sign = 1
    previous = ONE
    for col in range(cols):
        pivot = next(
            (i for i in range(rank_found, len(rows)) if rows[i][col] != 0),
            None,
        )
        if pivot is None:
            continue
        if pivot != rank_found:
            rows[pivot], rows[rank_found] = rows[rank_found], rows[pivot]
            sign = -sign
        head = rows[rank_found]
        for i in range(rank_found + 1, len(rows)):
            row = rows[i]
            rows[i] = [
                (head[col] * row[j] - row[col] * head[j]) / previous
                for j in range(cols)
            ]
        previous = head[col]
        rank_found += 1
        if rank_found == len(rows):
            break
    return rank_found, sign


def rank(m: Sequence[Sequence[Fraction]]) -> int:
    """Exact rank by fraction-free (Bareiss) elimination.

    Args:
        m (Sequence[Sequence[Fraction]]): rectangular matrix

    Returns:
        int: the rank of m

    Raises:
        DimensionError: the rows do not have the same length
    """
    cols = _check_rectangular(m)
    rows = [[to_rational(x) for x in row] for row in m]
    return _bareiss(rows, cols)[0]


def determinant(m: Sequence[Sequence[Fraction]]) -> Fraction:
    """Exact determinant of a square matrix."""
    cols = _check_rectangular(m)
    if len(m) != cols:
        raise DimensionError("the matrix is not square")
    if cols == 0:
        return ONE
    rows = [[to_rational(x) for x in row] for row in m]
    found, sign = _bareiss(rows, cols)
    if found < cols:
        return ZERO
    return sign * rows[-1][-1]


def solve(m: Sequence[Sequence[Fraction]], rhs: Vector) -> Optional[Vector]:
    """Solves the square system m x = rhs by Gauss-Jordan elimination.

    Returns:
        Optional[Vector]: the unique solution, None when m is singular
    """
    cols = _check_rectangular(m)
    if len(m) != cols or len(rhs) != cols:
        raise DimensionError("solve needs a square system")
    rows = [
        [to_rational(x) for x in row] + [to_rational(value)]
        for row, value in zip(m, rhs)
    ]
    for col in range(cols):
        pivot = next(
            (i for i in range(col, cols) if rows[i][col] != 0), None
        )
        if pivot is None:
            return None
        rows[col], rows[pivot] = rows[pivot], rows[col]
        head = rows[col]
        inverse = 1 / head[col]
        head = [x * inverse for x in head]
        rows[col] = head
        for i in range(cols):
            if i != col and rows[i][col] != 0:
                factor = rows[i][col]
                rows[i] = [x - factor * y for x, y in zip(rows[i], head)]
    return tuple(row[-1] for row in rows)


def independent_subset(vectors: Sequence[Vector]) -> List[int]:
    """Indices of a maximal linearly independent subset, chosen greedily."""
    chosen: List[int] = []
    basis: List[Vector] = []
    for index, vec in enumerate(vectors):
        if rank(basis + [vec]) > len(basis):
            basis.append(vec)
            chosen.append(index)
    return chosen


def format_rational(value: Fraction) -> str:
    """Formats a rational as "p" or "p/q"."""
    value = to_rational(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


@dataclass(frozen=True)
class AffineFunc:
    """Affine function rho(x) = lambda . x + lambda0 over n variables."""

    lambda0: Fraction
    coeffs: Vector

    def __post_init__(self):
        object.__setattr__(self, "lambda0", to_rational(self.lambda0))
        object.__setattr__(self, "coeffs", vector(self.coeffs))

    @classmethod
    def zero(cls, n: int) -> "AffineFunc":
        """The constant function 0 over n variables."""
        return cls(ZERO, zeros(n))

    @property
    def n(self) -> int:
        """The number of variables.

        :getter: Returns the number of variables
        :type: int
        """
        return len(self.coeffs)

    def evaluate(self, x: Sequence[Fraction]) -> Fraction:
        """Value of the function at x.

        Raises:
            DimensionError: x does not have n entries
        """
        return dot(self.coeffs, x) + self.lambda0

    def delta(self, xpp: Sequence[Fraction]) -> Fraction:
        """rho(x) - rho(x') for a transition x'' = (x, x').

        Raises:
            DimensionError: x'' does not have 2n entries
        """
        if len(xpp) != 2 * self.n:
            raise DimensionError(
                f"a transition has {2 * self.n} entries, got {len(xpp)}"
            )
        return dot(self.delta_row(), xpp)

    def delta_row(self) -> Vector:
        """Coefficients (lambda, -lambda) of the decrease over 2n space."""
        return self.coeffs + neg(self.coeffs)

    def scaled(self, factor: Number) -> "AffineFunc":
        """The function factor * rho."""
        factor = to_rational(factor)
        return AffineFunc(factor * self.lambda0, scale(factor, self.coeffs))

    def shifted(self, constant: Number) -> "AffineFunc":
        """The function rho + constant."""
        return AffineFunc(self.lambda0 + to_rational(constant), self.coeffs)

    def plus(self, other: "AffineFunc") -> "AffineFunc":
        """The function rho + other."""
        return AffineFunc(
            self.lambda0 + other.lambda0, add(self.coeffs, other.coeffs)
        )

    def integer_scale(self) -> Tuple["AffineFunc", Fraction]:
        """Scales the function by the lcm of its denominators.

        Returns:
            Tuple[AffineFunc, Fraction]: the integral function and the scale
        """
        factor = Fraction(
            lcm(
                self.lambda0.denominator,
                *(x.denominator for x in self.coeffs),
            )
        )
        return self.scaled(factor), factor

    def format(self, names: Optional[Sequence[str]] = None) -> str:
        """Human readable form such as "x1 + x2 - 1"."""
        if names is None:
            names = [f"x{i + 1}" for i in range(self.n)]
        terms: List[str] = []
        for coef, name in zip(self.coeffs, names):
            if coef == 0:
                continue
            size = abs(coef)
            text = name if size == 1 else f"{format_rational(size)}*{name}"
            terms.append(("- " if coef < 0 else "+ ") + text)
        if self.lambda0 != 0 or not terms:
            size = abs(self.lambda0)
            terms.append(
                ("- " if self.lambda0 < 0 else "+ ") + format_rational(size)
            )
        text = " ".join(terms)
        if text.startswith("+ "):
            return text[2:]
        return "-" + text[2:]

    def __str__(self) -> str:
        return self.format()


def eval_affine(f: AffineFunc, x: Sequence[Fraction]) -> Fraction:
    """Value of f at x."""
    return f.evaluate(x)


def delta(f: AffineFunc, xpp: Sequence[Fraction]) -> Fraction:
    """Decrease of f along the transition x'' = (x, x')."""
    return f.delta(xpp)


def integer_scale(f: AffineFunc) -> Tuple[AffineFunc, Fraction]:
    """Integral multiple of f and the factor used."""
    return f.integer_scale()
