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
"""Convex polyhedra in constraint and generator form.

The conversion between both forms is delegated to cdd in exact rational
arithmetic; results are brought back to primitive, sorted rows so that
equal polyhedra print the same.
"""
import logging
from dataclasses import dataclass
from fractions import Fraction
from math import ceil
from math import floor
from typing import FrozenSet
from typing import List
from typing import Optional
from typing import Sequence
from typing import Tuple

import cdd  # type: ignore

from ..exceptions import DimensionError
from ..exceptions import EmptyPolyhedronError
from ..exceptions import InvalidHyperplaneError
from . import lp
from .linalg import dot
from .linalg import is_zero
from .linalg import Matrix
from .linalg import matrix
from .linalg import neg
from .linalg import ONE
from .linalg import primitive
from .linalg import rank
from .linalg import unit
from .linalg import Vector
from .linalg import vector
from .linalg import ZERO
from .linalg import zeros

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ConstraintPoly:
    """Polyhedron {x in Q^d | a x <= b}."""

    a: Matrix
    b: Vector
    d: int

    def __post_init__(self):
        object.__setattr__(self, "a", matrix(self.a))
        object.__setattr__(self, "b", vector(self.b))
        if len(self.a) != len(self.b):
            raise DimensionError("row count differs from right-hand side")
        for row in self.a:
            if len(row) != self.d:
                raise DimensionError(
                    f"row of size {len(row)} in dimension {self.d}"
                )

    @classmethod
    def universe(cls, d: int) -> "ConstraintPoly":
        """The whole space Q^d."""
        return cls((), (), d)

    @classmethod
    def empty(cls, d: int) -> "ConstraintPoly":
        """The empty polyhedron, written 0 <= -1."""
        return cls((zeros(d),), (-ONE,), d)

    @property
    def m(self) -> int:
        """The number of constraints.

        :getter: Returns the number of rows
        :type: int
        """
        return len(self.a)

    def rows(self) -> List[Tuple[Vector, Fraction]]:
        """The constraints as (row, rhs) pairs."""
        return list(zip(self.a, self.b))

    def add_rows(
        self, rows: Sequence[Vector], rhs: Sequence[Fraction]
    ) -> "ConstraintPoly":
        """Polyhedron with extra constraints."""
        return ConstraintPoly(
            self.a + matrix(rows), self.b + vector(rhs), self.d
        )

    def conjoin(self, other: "ConstraintPoly") -> "ConstraintPoly":
        """Intersection with another polyhedron of the same dimension."""
        if other.d != self.d:
            raise DimensionError(f"dimension {other.d} != {self.d}")
        return self.add_rows(other.a, other.b)

    def problem(
        self,
        objective: Optional[Vector] = None,
        sense: lp.Sense = lp.Sense.MIN,
    ) -> lp.LPProblem:
        """The LP over this polyhedron."""
        return lp.LPProblem(self.a, self.b, objective, sense, dim=self.d)

    def is_empty(self) -> bool:
        """True when no rational point satisfies the constraints."""
        return isinstance(lp.solve(self.problem()), lp.Infeasible)

    def contains(self, x: Sequence[Fraction]) -> bool:
        """Exact membership test.

        Raises:
            DimensionError: x does not have d entries
        """
        if len(x) != self.d:
            raise DimensionError(
                f"point of size {len(x)} in dimension {self.d}"
            )
        return all(dot(row, x) <= rhs for row, rhs in self.rows())

    def minimum(self, objective: Vector) -> lp.LPOutcome:
        """Solves min objective . x over the polyhedron."""
        return lp.solve(self.problem(objective, lp.Sense.MIN))

    def maximum(self, objective: Vector) -> lp.LPOutcome:
        """Solves max objective . x over the polyhedron."""
        return lp.solve(self.problem(objective, lp.Sense.MAX))


@dataclass(frozen=True)
class GeneratorRep:
    """Polyhedron convhull(vertices) + cone(rays).

    Lines appear as a pair of opposite rays. No vertex means empty.
    """

    vertices: Tuple[Vector, ...]
    rays: Tuple[Vector, ...]
    d: int

    def __post_init__(self):
        object.__setattr__(self, "vertices", matrix(self.vertices))
        object.__setattr__(self, "rays", matrix(self.rays))
        for gen in self.vertices + self.rays:
            if len(gen) != self.d:
                raise DimensionError(
                    f"generator of size {len(gen)} in dimension {self.d}"
                )

    @property
    def is_empty(self) -> bool:
        """True when the represented set is empty.

        :getter: Returns True without vertex
        :type: bool
        """
        return not self.vertices


@dataclass(frozen=True)
class FaceSpec:
    """Face of `base` obtained by turning `tight_rows` into equalities."""

    base: ConstraintPoly
    tight_rows: FrozenSet[int]
    empty: bool = False

    def polyhedron(self) -> ConstraintPoly:
        """The face as a polyhedron.

        Tight rows are written as equality pairs; a negated row already in
        the base is not repeated.
        """
        if self.empty:
            return ConstraintPoly.empty(self.base.d)
        present = set(self.base.rows())
        rows: List[Vector] = []
        rhs: List[Fraction] = []
        for i in sorted(self.tight_rows):
            pair = (neg(self.base.a[i]), -self.base.b[i])
            if pair not in present:
                present.add(pair)
                rows.append(pair[0])
                rhs.append(pair[1])
        return self.base.add_rows(rows, rhs)


def _cdd_matrix(rows: Sequence[Sequence[Fraction]], rep_type) -> cdd.Matrix:
    mat = cdd.Matrix([list(row) for row in rows], number_type="fraction")
    mat.rep_type = rep_type
    return mat


def _cdd_rows(mat: cdd.Matrix) -> List[Tuple[Vector, bool]]:
    """Rows of a cdd matrix as exact vectors, flagged when in lin_set."""
    return [
        (tuple(Fraction(x) for x in mat[i]), i in mat.lin_set)
        for i in range(mat.row_size)
    ]


def to_generators(p: ConstraintPoly) -> GeneratorRep:
    """Generator representation of a polyhedron.

    Vertices are exact rationals, rays are primitive integer vectors and
    each line is emitted as two opposite rays. Both lists are sorted.
    """
    d = p.d
    # 1 >= 0 keeps the matrix non empty for the universe
    rows = [(ONE,) + zeros(d)]
    rows += [(rhs,) + neg(row) for row, rhs in p.rows()]
    poly = cdd.Polyhedron(_cdd_matrix(rows, cdd.RepType.INEQUALITY))
    vertices = set()
    directions = set()
    for gen, is_line in _cdd_rows(poly.get_generators()):
        head, tail = gen[0], gen[1:]
        if head != 0:
            vertices.add(tuple(x / head for x in tail))
        elif not is_zero(tail):
            directions.add(primitive(tail))
            if is_line:
                directions.add(primitive(neg(tail)))
    if not vertices:
        return GeneratorRep((), (), d)
    logger.trace(  # type: ignore # pylint: disable=no-member
        "%d vertices and %d rays for %d constraints",
        len(vertices),
        len(directions),
        p.m,
    )
    return GeneratorRep(tuple(sorted(vertices)), tuple(sorted(directions)), d)


def to_constraints(
    g: GeneratorRep, ambient: Optional[int] = None
) -> ConstraintPoly:
    """Constraint representation of convhull(vertices) + cone(rays).

    Rows are scaled to primitive integer form; equalities come out as
    two opposite inequalities.
    """
    d = g.d if ambient is None else ambient
    if ambient is not None and ambient != g.d:
        raise DimensionError(f"generators of dimension {g.d}, not {ambient}")
    if g.is_empty:
        return ConstraintPoly.empty(d)
    rows = [(ONE,) + vertex for vertex in g.vertices]
    rows += [(ZERO,) + ray for ray in g.rays]
    poly = cdd.Polyhedron(_cdd_matrix(rows, cdd.RepType.GENERATOR))
    constraints = set()
    for ineq, is_equality in _cdd_rows(poly.get_inequalities()):
        # cdd rows read b + c x >= 0, stored here as -c x <= b
        row = primitive(neg(ineq[1:]) + (ineq[0],))
        if is_zero(row[:-1]):
            continue
        constraints.add((row[:-1], row[-1]))
        if is_equality:
            constraints.add((neg(row[:-1]), -row[-1]))
    ordered = sorted(constraints)
    return ConstraintPoly(
        tuple(row for row, _ in ordered),
        tuple(rhs for _, rhs in ordered),
        d,
    )


def recession_cone(p: ConstraintPoly) -> ConstraintPoly:
    """The cone {y | a y <= 0}."""
    return ConstraintPoly(p.a, zeros(p.m), p.d)


def implied_rows(p: ConstraintPoly) -> FrozenSet[int]:
    """Rows that hold with equality on the whole (nonempty) polyhedron."""
    return frozenset(lp.implied_equalities(p.a, p.b, p.d))


def dim(p: ConstraintPoly) -> int:
    """Dimension of the polyhedron, -1 when empty."""
    if p.is_empty():
        return -1
    eqs = implied_rows(p)
    return p.d - rank([p.a[i] for i in sorted(eqs)])


def contains(p: ConstraintPoly, x: Sequence[Fraction]) -> bool:
    """Exact membership test."""
    return p.contains(x)


def contains_origin(p: ConstraintPoly) -> bool:
    """True when the origin satisfies every constraint."""
    return all(rhs >= 0 for rhs in p.b)


def remove_redundant(p: ConstraintPoly) -> ConstraintPoly:
    """Drops the constraints implied by the others.

    An empty polyhedron becomes the canonical empty polyhedron.
    """
    if p.is_empty():
        return ConstraintPoly.empty(p.d)
    kept = [i for i, (row, rhs) in enumerate(p.rows()) if not is_zero(row)]
    for i in list(kept):
        others = [j for j in kept if j != i]
        if lp.implies(
            [p.a[j] for j in others],
            [p.b[j] for j in others],
            p.a[i],
            p.b[i],
        ):
            kept = others
    return ConstraintPoly(
        tuple(p.a[i] for i in kept), tuple(p.b[i] for i in kept), p.d
    )


def includes(p: ConstraintPoly, q: ConstraintPoly) -> bool:
    """True when q is a subset of p."""
    if p.d != q.d:
        raise DimensionError(f"dimension {p.d} != {q.d}")
    return all(
        lp.implies(q.a, q.b, row, rhs)
        for row, rhs in p.rows()
    )


def set_equal(p: ConstraintPoly, q: ConstraintPoly) -> bool:
    """True when both polyhedra contain the same points."""
    return includes(p, q) and includes(q, p)


def pick_value(
    low: Optional[Fraction], high: Optional[Fraction], strict: bool = True
) -> Fraction:
    """Value in the interval [low, high], None meaning infinite.

    With `strict` the value is taken in the open interval unless both
    ends coincide. The priority is 0, then the integer of least
    magnitude, then the midpoint.
    """
    if low is not None and high is not None and low == high:
        return low

    def inside(value: Fraction) -> bool:
        if strict:
            return (low is None or value > low) and (
                high is None or value < high
            )
        return (low is None or value >= low) and (
            high is None or value <= high
        )

    if inside(ZERO):
        return ZERO
    if low is not None and low >= 0:
        candidate = Fraction(floor(low) + 1 if strict else ceil(low))
    else:
        top: Fraction = high  # type: ignore
        candidate = Fraction(ceil(top) - 1 if strict else floor(top))
    if inside(candidate):
        return candidate
    return (low + high) / 2  # type: ignore


def _bound(outcome: lp.LPOutcome) -> Optional[Fraction]:
    return outcome.value if isinstance(outcome, lp.Optimal) else None


def sweep_fix(
    problem: lp.LPProblem, coords: Sequence[int], strict: bool = True
) -> lp.LPProblem:
    """Fixes the coordinates one after the other.

    Each coordinate is minimized and maximized over the current set and
    fixed to :func:`pick_value` of the range. With `strict`, slicing by
    a value inside the open range keeps a point of the relative interior.

    Raises:
        EmptyPolyhedronError: the problem is infeasible
    """
    for j in coords:
        objective = unit(problem.d, j)
        low_outcome = lp.solve(problem.with_objective(objective, lp.Sense.MIN))
        if isinstance(low_outcome, lp.Infeasible):
            raise EmptyPolyhedronError("sweep over an empty set")
        high_outcome = lp.solve(
            problem.with_objective(objective, lp.Sense.MAX)
        )
        low = _bound(low_outcome)
        high = _bound(high_outcome)
        value = pick_value(low, high, strict)
        problem = problem.with_equalities([objective], [value])
    return problem.with_objective(None)


def relative_interior_point(
    p: ConstraintPoly, coord_order: Optional[Sequence[int]] = None
) -> Vector:
    """Point of the relative interior of p chosen by a coordinate sweep.

    Args:
        p (ConstraintPoly): nonempty polyhedron
        coord_order (Optional[Sequence[int]]): order of the sweep, by
            default 0..d-1

    Returns:
        Vector: a point satisfying with equality only the implied rows

    Raises:
        EmptyPolyhedronError: p is empty
    """
    order = list(range(p.d)) if coord_order is None else list(coord_order)
    if sorted(order) != list(range(p.d)):
        raise DimensionError("coord_order is not a permutation")
    fixed = sweep_fix(p.problem(), order, strict=True)
    outcome = lp.solve(fixed)
    if isinstance(outcome, lp.Infeasible):
        raise EmptyPolyhedronError("no relative interior point")
    return outcome.point  # type: ignore


def face(p: ConstraintPoly, h: Vector, c: Fraction) -> FaceSpec:
    """Face of p cut by the supporting hyperplane h . x = c.

    Raises:
        InvalidHyperplaneError: h . x <= c does not hold on p
    """
    outcome = p.maximum(vector(h))
    if isinstance(outcome, lp.Infeasible):
        return FaceSpec(p, frozenset(), True)
    if isinstance(outcome, lp.Unbounded) or outcome.value > c:  # type: ignore
        raise InvalidHyperplaneError(
            "h . x <= c is not valid on the polyhedron"
        )
    if outcome.value < c:  # type: ignore
        return FaceSpec(p, frozenset(), True)
    cut = p.add_rows([vector(h), neg(vector(h))], [c, -c])
    eqs = lp.implied_equalities(cut.a, cut.b, cut.d)
    return FaceSpec(p, frozenset(i for i in eqs if i < p.m), False)
