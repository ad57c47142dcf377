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
"""Integer hull of rational polyhedra.

The pipeline splits a system into components on disjoint variables,
removes the variables defined by integral affine equalities, classifies
every component and applies the cheapest exact hull available for its
class. Components without structure go to a Chvatal-Gomory cutting plane
loop over a bounded box, completed by enumeration when the rounds are
exhausted.
"""
import logging
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from itertools import combinations
from itertools import product
from math import ceil
from math import floor
from math import prod
from typing import Dict
from typing import List
from typing import Optional
from typing import Sequence
from typing import Tuple

from ...config import HullSettings
from ...config import hull_config
from ...monitoring import UtilsMonitoring
from ..exceptions import PreconditionError
from ..exceptions import WrongHullClassError
from . import lp
from .linalg import determinant
from .linalg import dot
from .linalg import independent_subset
from .linalg import is_integral
from .linalg import is_zero
from .linalg import neg
from .linalg import primitive
from .linalg import scale
from .linalg import solve
from .linalg import sub
from .linalg import transpose
from .linalg import unit
from .linalg import vec_mat
from .linalg import Vector
from .linalg import vector
from .linalg import ZERO
from .linalg import zeros
from .polyhedra import ConstraintPoly
from .polyhedra import GeneratorRep
from .polyhedra import to_constraints
from .polyhedra import to_generators

logger = logging.getLogger(__name__)

Row = Tuple[Vector, Fraction]


class HullClass(str, Enum):
    """Structural class of a system, most specific first."""

    CONE = "cone"
    TOTALLY_UNIMODULAR = "totally_unimodular"
    DIFFERENCE_BOUNDS = "difference_bounds"
    TWO_DIM = "two_dim"
    OCTAGON = "octagon"
    GENERAL = "general"

    @staticmethod
    def find_enum(name: str):
        """Find enum based on its value

        Args:
            name (str): enum value

        Raises:
            ValueError: Unknown value

        Returns:
            HullClass: Enum
        """
        for member in HullClass:
            if member.value == name.lower():
                return member
        raise ValueError(f"Unknown enum value for {name}")


@dataclass(frozen=True)
class Component:
    """Subsystem on `variables`, written in local coordinates."""

    variables: Tuple[int, ...]
    poly: ConstraintPoly
    rows: Tuple[int, ...]


@dataclass(frozen=True)
class ComponentReport:
    """How the hull of one component was obtained.

    `added` holds the constraints of the hull, in global coordinates, that
    the component did not already imply.
    """

    variables: Tuple[int, ...]
    hull_class: HullClass
    added: Tuple[Row, ...]
    exact: bool
    escalated: bool = False


@dataclass(frozen=True)
class HullReport:
    """Provenance of an integer hull."""

    components: Tuple[ComponentReport, ...]
    eliminated: Tuple[int, ...] = ()

    @property
    def exact(self) -> bool:
        """Whether the result is certified to be the integer hull.

        :getter: Returns False when a cutting plane loop gave up or when
            a tight closure was not verified
        :type: bool
        """
        return all(component.exact for component in self.components)

    @property
    def added(self) -> Tuple[Row, ...]:
        """Every added constraint, in global coordinates.

        :getter: Returns the added constraints of all the components
        :type: Tuple[Row, ...]
        """
        return tuple(
            row for component in self.components for row in component.added
        )


def _nonzero(row: Sequence[Fraction]) -> List[int]:
    return [j for j, coef in enumerate(row) if coef != 0]


def decompose_components(p: ConstraintPoly) -> List[Component]:
    """Connected components of the constraint-variable graph.

    Variables that no constraint mentions belong to no component. A
    constant row 0 <= b is dropped when b >= 0 and kept alone as a
    component on no variable otherwise.
    """
    parent = list(range(p.d))

    def find(index: int) -> int:
        while parent[index] != index:
            parent[index] = parent[parent[index]]
            index = parent[index]
        return index

    for row in p.a:
        support = _nonzero(row)
        for j in support[1:]:
            root_a, root_b = find(support[0]), find(j)
            if root_a != root_b:
                parent[max(root_a, root_b)] = min(root_a, root_b)

    groups: Dict[int, List[int]] = {}
    constants: List[int] = []
    for i, (row, rhs) in enumerate(p.rows()):
        support = _nonzero(row)
        if not support:
            if rhs < 0:
                constants.append(i)
            continue
        groups.setdefault(find(support[0]), []).append(i)

    components = [
        Component((), ConstraintPoly.empty(0), (i,)) for i in constants
    ]
    for root in sorted(groups):
        variables = tuple(j for j in range(p.d) if find(j) == root)
        rows = tuple(groups[root])
        local_a = [tuple(p.a[i][j] for j in variables) for i in rows]
        local_b = [p.b[i] for i in rows]
        components.append(
            Component(
                variables,
                ConstraintPoly(local_a, local_b, len(variables)),
                rows,
            )
        )
    return components


def _canonical_sign(v: Vector) -> Vector:
    for x in v:
        if x != 0:
            return v if x > 0 else neg(v)
    return v


def _distinct_up_to_sign(vectors: Sequence[Vector]) -> List[Vector]:
    seen = set()
    kept: List[Vector] = []
    for vec in vectors:
        if is_zero(vec):
            continue
        key = _canonical_sign(vec)
        if key not in seen:
            seen.add(key)
            kept.append(vec)
    return kept


def is_totally_unimodular(
    m: Sequence[Sequence[Fraction]], max_order: Optional[int] = None
) -> bool:
    """True when every square subdeterminant of m is 0, 1 or -1.

    Zero rows and columns, and rows or columns repeated up to sign, are
    removed first. The minors are enumerated, which is only done up to
    `max_order`: beyond it the answer is False (not verified).

    Args:
        m (Sequence[Sequence[Fraction]]): the matrix
        max_order (Optional[int]): largest minor order to enumerate

    Returns:
        bool: True when m is verified totally unimodular
    """
    rows = [vector(row) for row in m]
    if any(x not in (-1, 0, 1) for row in rows for x in row):
        return False
    rows = _distinct_up_to_sign(rows)
    if not rows:
        return True
    columns = _distinct_up_to_sign(transpose(rows))
    reduced = transpose(columns)
    order = min(len(reduced), len(columns))
    if max_order is not None and order > max_order:
        logger.debug("TU check skipped for minors of order %d", order)
        return False
    for k in range(2, order + 1):
        for row_sel in combinations(range(len(reduced)), k):
            for col_sel in combinations(range(len(columns)), k):
                minor = [[reduced[i][j] for j in col_sel] for i in row_sel]
                if determinant(minor) not in (-1, 0, 1):
                    return False
    return True


def _is_difference_bounds(p: ConstraintPoly) -> bool:
    for row in p.a:
        support = _nonzero(row)
        if len(support) > 2:
            return False
        if len(support) == 2 and row[support[0]] != -row[support[1]]:
            return False
    return True


def _is_octagonal(p: ConstraintPoly) -> bool:
    for row in p.a:
        support = _nonzero(row)
        if len(support) > 2:
            return False
        if len(support) == 2 and abs(row[support[0]]) != abs(
            row[support[1]]
        ):
            return False
    return True


def classify(
    p: ConstraintPoly, settings: Optional[HullSettings] = None
) -> HullClass:
    """Most specific class of p.

    The priority is cone, totally unimodular, difference bounds, two
    variables, octagon, then general.
    """
    settings = settings or hull_config
    if all(rhs == 0 for rhs in p.b):
        return HullClass.CONE
    if is_integral(p.b) and is_totally_unimodular(
        p.a, settings.tu_max_order
    ):
        return HullClass.TOTALLY_UNIMODULAR
    if _is_difference_bounds(p):
        return HullClass.DIFFERENCE_BOUNDS
    if p.d <= 2:
        return HullClass.TWO_DIM
    if _is_octagonal(p):
        return HullClass.OCTAGON
    return HullClass.GENERAL


def tighten_difference_bounds(p: ConstraintPoly) -> ConstraintPoly:
    """Integer hull of difference constraints x_i - x_j <= c and bounds.

    Every row is scaled to unit coefficients and its bound floored.

    Raises:
        WrongHullClassError: a row is not a difference or a bound
    """
    if not _is_difference_bounds(p):
        raise WrongHullClassError("not a system of difference bounds")
    rows: List[Vector] = []
    rhs: List[Fraction] = []
    for row, bound in p.rows():
        support = _nonzero(row)
        if not support:
            if bound < 0:
                return ConstraintPoly.empty(p.d)
            continue
        size = abs(row[support[0]])
        rows.append(scale(1 / size, row))
        rhs.append(Fraction(floor(bound / size)))
    tightened = ConstraintPoly(rows, rhs, p.d)
    if tightened.is_empty():
        return ConstraintPoly.empty(p.d)
    return tightened


def _optimum(outcome: lp.LPOutcome) -> Optional[Fraction]:
    return outcome.value if isinstance(outcome, lp.Optimal) else None


def _schrijver_box(g: GeneratorRep) -> List[Tuple[Fraction, Fraction]]:
    """Box around conv(vertices) + {sum mu_j r_j | 0 <= mu_j <= 1}.

    Every vertex of the integer hull lies in this box.
    """
    box = []
    for k in range(g.d):
        low = min(v[k] for v in g.vertices)
        high = max(v[k] for v in g.vertices)
        low += sum((min(r[k], ZERO) for r in g.rays), ZERO)
        high += sum((max(r[k], ZERO) for r in g.rays), ZERO)
        box.append((low, high))
    return box


def _box_rows(box: Sequence[Tuple[Fraction, Fraction]]) -> List[Row]:
    d = len(box)
    rows: List[Row] = []
    for k, (low, high) in enumerate(box):
        rows.append((unit(d, k), high))
        rows.append((neg(unit(d, k)), -low))
    return rows


def _cross(o: Vector, a: Vector, b: Vector) -> Fraction:
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def _planar_hull(points: Sequence[Vector]) -> List[Vector]:
    """Extreme points of a finite planar set by the monotone chain."""
    ordered = sorted(set(points))
    if len(ordered) <= 2:
        return ordered
    lower: List[Vector] = []
    for point in ordered:
        while len(lower) > 1 and _cross(lower[-2], lower[-1], point) <= 0:
            lower.pop()
        lower.append(point)
    upper: List[Vector] = []
    for point in reversed(ordered):
        while len(upper) > 1 and _cross(upper[-2], upper[-1], point) <= 0:
            upper.pop()
        upper.append(point)
    return lower[:-1] + upper[:-1]


def _column_ends(
    p: ConstraintPoly, x0: int, low: Fraction, high: Fraction
) -> List[Vector]:
    """Lowest and highest integer points of p on the line x = x0."""
    for (a1, a2), bound in p.rows():
        rest = bound - a1 * x0
        if a2 == 0:
            if rest < 0:
                return []
        elif a2 > 0:
            high = min(high, rest / a2)
        else:
            low = max(low, rest / a2)
    bottom, top = ceil(low), floor(high)
    if bottom > top:
        return []
    return [vector((x0, bottom)), vector((x0, top))]


@UtilsMonitoring.time_spend(level=logging.DEBUG)
def harvey_2d_hull(
    p: ConstraintPoly, limit: Optional[int] = None
) -> ConstraintPoly:
    """Exact integer hull of a polyhedron with at most two variables.

    Only the extreme integer points of each column of the bounding box
    are kept, their planar hull is computed, and the integral recession
    cone is attached back. Columns are taken along the narrower side of
    the box.

    Args:
        p (ConstraintPoly): polyhedron over at most two variables
        limit (Optional[int]): largest number of columns scanned

    Raises:
        WrongHullClassError: more than two variables
        PreconditionError: the box has more than `limit` columns
    """
    if p.d > 2:
        raise WrongHullClassError(f"{p.d} variables, at most 2 expected")
    if p.is_empty():
        return ConstraintPoly.empty(p.d)
    if p.d == 0:
        return ConstraintPoly.universe(0)
    if p.d == 1:
        low = _optimum(p.minimum((Fraction(1),)))
        high = _optimum(p.maximum((Fraction(1),)))
        rows: List[Vector] = []
        rhs: List[Fraction] = []
        if high is not None:
            rows.append((Fraction(1),))
            rhs.append(Fraction(floor(high)))
        if low is not None:
            rows.append((Fraction(-1),))
            rhs.append(Fraction(-ceil(low)))
        if low is not None and high is not None and ceil(low) > floor(high):
            return ConstraintPoly.empty(1)
        return ConstraintPoly(rows, rhs, 1)
    gens = to_generators(p)
    box = _schrijver_box(gens)
    widths = [max(floor(high) - ceil(low) + 1, 0) for low, high in box]
    swapped = widths[1] < widths[0]
    if swapped:
        box.reverse()
        p = ConstraintPoly(tuple(row[::-1] for row in p.a), p.b, 2)
    (x_low, x_high), (y_low, y_high) = box
    columns = min(widths)
    if limit is not None and columns > limit:
        raise PreconditionError(f"{columns} columns, at most {limit}")
    points: List[Vector] = []
    for x0 in range(ceil(x_low), floor(x_high) + 1):
        points.extend(_column_ends(p, x0, y_low, y_high))
    if not points:
        return ConstraintPoly.empty(2)
    if swapped:
        points = [point[::-1] for point in points]
    hull = _planar_hull(points)
    logger.trace(  # type: ignore # pylint: disable=no-member
        "planar hull of %d points has %d vertices", len(points), len(hull)
    )
    return to_constraints(GeneratorRep(tuple(hull), gens.rays, 2))


def _node(var: int, sign: Fraction) -> int:
    return 2 * var if sign > 0 else 2 * var + 1


def _set_min(
    m: List[List[Optional[Fraction]]], i: int, j: int, value: Fraction
):
    if m[i][j] is None or value < m[i][j]:  # type: ignore
        m[i][j] = value


def _octagon_matrix(p: ConstraintPoly) -> List[List[Optional[Fraction]]]:
    """Difference bound matrix on the nodes +x_k (2k) and -x_k (2k+1).

    Entry m[i][j] bounds V_j - V_i, None is +infinity.
    """
    size = 2 * p.d
    m: List[List[Optional[Fraction]]] = [[None] * size for _ in range(size)]
    for i in range(size):
        m[i][i] = ZERO
    for row, bound in p.rows():
        support = _nonzero(row)
        if not support:
            if bound < 0:
                m[0][0] = Fraction(-1)
            continue
        size_coef = abs(row[support[0]])
        signs = [row[j] / size_coef for j in support]
        limit = Fraction(floor(bound / size_coef))
        if len(support) == 1:
            node = _node(support[0], signs[0])
            _set_min(m, node ^ 1, node, 2 * limit)
            continue
        first = _node(support[0], signs[0])
        second = _node(support[1], -signs[1])
        _set_min(m, second, first, limit)
        _set_min(m, first ^ 1, second ^ 1, limit)
    return m


def _shortest_paths(m: List[List[Optional[Fraction]]]):
    size = len(m)
    for k in range(size):
        row_k = m[k]
        for i in range(size):
            through = m[i][k]
            if through is None:
                continue
            row_i = m[i]
            for j in range(size):
                if row_k[j] is not None:
                    candidate = through + row_k[j]
                    if row_i[j] is None or candidate < row_i[j]:
                        row_i[j] = candidate


def _consistent(m: List[List[Optional[Fraction]]]) -> bool:
    for i, row in enumerate(m):
        if row[i] < 0:  # type: ignore
            return False
        there, back = row[i ^ 1], m[i ^ 1][i]
        if there is not None and back is not None and there + back < 0:
            return False
    return True


@UtilsMonitoring.time_spend(level=logging.DEBUG)
def octagon_tight_closure(p: ConstraintPoly) -> ConstraintPoly:
    """Tight closure of an octagonal system over the integers.

    Every row is scaled to unit coefficients and its bound floored, then
    the difference bound matrix is closed by shortest paths, the unary
    bounds are tightened to even values and the matrix is strengthened.
    The result contains the integer hull but may be larger.

    Raises:
        WrongHullClassError: a row has more than two variables or
        coefficients of different magnitudes
    """
    if not _is_octagonal(p):
        raise WrongHullClassError("not an octagonal system")
    m = _octagon_matrix(p)
    _shortest_paths(m)
    if not _consistent(m):
        return ConstraintPoly.empty(p.d)
    size = 2 * p.d
    for i in range(size):
        if m[i][i ^ 1] is not None:
            m[i][i ^ 1] = 2 * Fraction(floor(m[i][i ^ 1] / 2))  # type: ignore
    for i in range(size):
        for j in range(size):
            unary_i, unary_j = m[i][i ^ 1], m[j ^ 1][j]
            if unary_i is not None and unary_j is not None:
                _set_min(m, i, j, (unary_i + unary_j) / 2)
    if not _consistent(m):
        return ConstraintPoly.empty(p.d)
    constraints = set()
    for i in range(size):
        for j in range(size):
            bound = m[i][j]
            if i == j or bound is None:
                continue
            row = [ZERO] * p.d
            row[j // 2] += 1 if j % 2 == 0 else -1
            row[i // 2] -= 1 if i % 2 == 0 else -1
            if j == i ^ 1:
                row[j // 2] /= 2
                bound = bound / 2
            constraints.add((tuple(row), bound))
    ordered = sorted(constraints)
    return ConstraintPoly(
        tuple(row for row, _ in ordered),
        tuple(rhs for _, rhs in ordered),
        p.d,
    )


def _round_rows(p: ConstraintPoly) -> ConstraintPoly:
    """Scales every row to coprime integers and floors its bound."""
    rows: List[Vector] = []
    rhs: List[Fraction] = []
    for row, bound in p.rows():
        if is_zero(row):
            if bound < 0:
                return ConstraintPoly.empty(p.d)
            continue
        integral = primitive(row)
        pivot = _nonzero(row)[0]
        factor = integral[pivot] / row[pivot]
        rows.append(integral)
        rhs.append(Fraction(floor(bound * factor)))
    return ConstraintPoly(rows, rhs, p.d)


def _gomory_cuts(p: ConstraintPoly, vertex: Vector) -> List[Row]:
    """Chvatal-Gomory cuts separating a fractional vertex.

    With B the integral basis of rows tight at the vertex and w the
    i-th row of its inverse, lambda = w - floor(w) is nonnegative and
    lambda B = e_i - floor(w) B is integral, which gives the cut
    (e_i - floor(w) B) x <= floor(lambda b_B).
    """
    d = p.d
    tight = [
        i
        for i, (row, bound) in enumerate(p.rows())
        if not is_zero(row) and dot(row, vertex) == bound
    ]
    chosen = [tight[k] for k in independent_subset([p.a[i] for i in tight])]
    if len(chosen) < d:
        return []
    basis = [p.a[i] for i in chosen]
    basis_rhs = vector(p.b[i] for i in chosen)
    basis_t = transpose(basis)
    cuts: List[Row] = []
    for i in range(d):
        if vertex[i].denominator == 1:
            continue
        inverse_row = solve(basis_t, unit(d, i))
        if inverse_row is None:
            continue
        floored = vector(floor(x) for x in inverse_row)
        fractional = sub(inverse_row, floored)
        row = sub(unit(d, i), vec_mat(floored, basis, d))
        cuts.append((row, Fraction(floor(dot(fractional, basis_rhs)))))
    return cuts


def _midpoints_removed(points: List[Tuple[int, ...]]) -> List[Vector]:
    present = set(points)
    kept = []
    for point in points:
        inner = False
        for k in range(len(point)):
            above = point[:k] + (point[k] + 1,) + point[k + 1:]
            below = point[:k] + (point[k] - 1,) + point[k + 1:]
            if above in present and below in present:
                inner = True
                break
        if not inner:
            kept.append(vector(point))
    return kept


@UtilsMonitoring.time_spend(level=logging.DEBUG)
def general_integer_hull(
    p: ConstraintPoly, settings: Optional[HullSettings] = None
) -> Tuple[ConstraintPoly, bool]:
    """Integer hull by cutting planes over a bounded box.

    The polyhedron is intersected with a box containing every vertex of
    its integer hull. Rounds of Chvatal-Gomory cuts are applied until the
    bounded part is integral; its hull plus the integral recession cone
    of p is the result. When the rounds are exhausted, the integer points
    of the box are enumerated if there are at most
    ``settings.enumeration_limit`` of them; otherwise the current
    relaxation is returned.

    Returns:
        Tuple[ConstraintPoly, bool]: the hull and whether it is exact. An
        inexact result still contains every integer point of p.
    """
    settings = settings or hull_config
    if p.is_empty():
        return ConstraintPoly.empty(p.d), True
    gens = to_generators(p)
    if all(is_integral(v) for v in gens.vertices):
        return p, True
    box = _schrijver_box(gens)
    box_rows = _box_rows(box)
    current = _round_rows(
        p.add_rows([row for row, _ in box_rows], [rhs for _, rhs in box_rows])
    )
    for round_index in range(settings.cut_round_cap):
        bounded = to_generators(current)
        if bounded.is_empty:
            return ConstraintPoly.empty(p.d), True
        fractional = [v for v in bounded.vertices if not is_integral(v)]
        if not fractional:
            logger.debug("integral after %d cut rounds", round_index)
            return (
                to_constraints(
                    GeneratorRep(bounded.vertices, gens.rays, p.d)
                ),
                True,
            )
        cuts: List[Row] = []
        for vertex in fractional:
            cuts.extend(_gomory_cuts(current, vertex))
        current = _round_rows(
            to_constraints(bounded).add_rows(
                [row for row, _ in cuts], [rhs for _, rhs in cuts]
            )
        )
    ranges = [range(ceil(low), floor(high) + 1) for low, high in box]
    if prod(len(values) for values in ranges) <= settings.enumeration_limit:
        points = [
            point
            for point in product(*ranges)
            if current.contains(vector(point))
        ]
        if not points:
            return ConstraintPoly.empty(p.d), True
        kept = _midpoints_removed(points)
        logger.debug(
            "cut rounds exhausted, %d integer points enumerated", len(points)
        )
        return to_constraints(GeneratorRep(kept, gens.rays, p.d)), True
    logger.warning(
        "integer hull not reached after %d cut rounds, keeping a relaxation",
        settings.cut_round_cap,
    )
    bounded = to_generators(current)
    if bounded.is_empty:
        return ConstraintPoly.empty(p.d), True
    return (
        to_constraints(GeneratorRep(bounded.vertices, gens.rays, p.d)),
        False,
    )


def _integral_definition(row: Vector, bound: Fraction, j: int):
    """Row scaled to a unit coefficient on x_j when all stays integral."""
    scaled = scale(1 / abs(row[j]), row)
    scaled_bound = bound / abs(row[j])
    if is_integral(scaled) and scaled_bound.denominator == 1:
        return scaled, scaled_bound
    return None


def _defined_variables(p: ConstraintPoly) -> Dict[int, Tuple[int, int]]:
    """Variables fixed by an integral affine equality and used nowhere else.

    Such a variable x_j appears in exactly two rows r and -r with a unit
    coefficient on x_j after scaling, integral coefficients and an
    integral bound. It maps to the indices of its two rows.
    """
    uses: Dict[int, List[int]] = {}
    for i, row in enumerate(p.a):
        for j in _nonzero(row):
            uses.setdefault(j, []).append(i)
    defined: Dict[int, Tuple[int, int]] = {}
    for j, rows in uses.items():
        if len(rows) != 2:
            continue
        first = _integral_definition(p.a[rows[0]], p.b[rows[0]], j)
        second = _integral_definition(p.a[rows[1]], p.b[rows[1]], j)
        if first is None or second is None:
            continue
        if first[0] == neg(second[0]) and first[1] == -second[1]:
            defined[j] = (rows[0], rows[1])
    return defined


def _lift(row: Vector, variables: Sequence[int], d: int) -> Vector:
    lifted = [ZERO] * d
    for coef, j in zip(row, variables):
        lifted[j] = coef
    return tuple(lifted)


def _component_hull(
    poly: ConstraintPoly, settings: HullSettings
) -> Tuple[ConstraintPoly, HullClass, bool, bool]:
    """Hull of one component, its class, exactness and escalation."""
    hull_class = classify(poly, settings)
    if poly.is_empty():
        return ConstraintPoly.empty(poly.d), hull_class, True, False
    if hull_class in (HullClass.CONE, HullClass.TOTALLY_UNIMODULAR):
        return poly, hull_class, True, False
    if hull_class == HullClass.DIFFERENCE_BOUNDS:
        return tighten_difference_bounds(poly), hull_class, True, False
    if hull_class == HullClass.TWO_DIM:
        try:
            hull = harvey_2d_hull(poly, settings.enumeration_limit)
            return hull, hull_class, True, False
        except PreconditionError as error:
            logger.debug("%s, using cutting planes", error)
            hull, exact = general_integer_hull(poly, settings)
            return hull, hull_class, exact, False
    if hull_class == HullClass.OCTAGON:
        closed = octagon_tight_closure(poly)
        if closed.is_empty():
            return closed, hull_class, True, False
        if settings.octagon_mode == "closure":
            return closed, hull_class, False, False
        if all(is_integral(v) for v in to_generators(closed).vertices):
            return closed, hull_class, True, False
        logger.debug("tight closure is not integral, using cutting planes")
        hull, exact = general_integer_hull(closed, settings)
        return hull, hull_class, exact, True
    hull, exact = general_integer_hull(poly, settings)
    return hull, hull_class, exact, False


@UtilsMonitoring.time_spend(level=logging.DEBUG)
def integer_hull(
    p: ConstraintPoly, settings: Optional[HullSettings] = None
) -> Tuple[ConstraintPoly, HullReport]:
    """Integer hull of p with its provenance.

    Variables fixed by integral affine equalities are projected out, the
    rest is split into components that are hulled separately, and the
    equalities are added back.

    Args:
        p (ConstraintPoly): the polyhedron
        settings (Optional[HullSettings]): hull options, the global ones
            by default

    Returns:
        Tuple[ConstraintPoly, HullReport]: the hull and how it was built
    """
    settings = settings or hull_config
    defined = _defined_variables(p)
    definition_rows = sorted(i for pair in defined.values() for i in pair)
    skipped = set(definition_rows)
    kept = [i for i in range(p.m) if i not in skipped]
    rest = ConstraintPoly([p.a[i] for i in kept], [p.b[i] for i in kept], p.d)

    reports: List[ComponentReport] = []
    rows: List[Vector] = []
    rhs: List[Fraction] = []
    empty = False
    for component in decompose_components(rest):
        hull, hull_class, exact, escalated = _component_hull(
            component.poly, settings
        )
        added: List[Row] = []
        if hull.is_empty():
            empty = True
            if not component.poly.is_empty():
                added.append((zeros(p.d), Fraction(-1)))
        else:
            for row, bound in hull.rows():
                lifted = _lift(row, component.variables, p.d)
                rows.append(lifted)
                rhs.append(bound)
                if not lp.implies(
                    component.poly.a, component.poly.b, row, bound
                ):
                    added.append((lifted, bound))
        reports.append(
            ComponentReport(
                component.variables,
                hull_class,
                tuple(added),
                exact,
                escalated,
            )
        )
    report = HullReport(tuple(reports), tuple(sorted(defined)))
    logger.debug(
        "integer hull: %d components, %d eliminated variables, exact=%s",
        len(reports),
        len(defined),
        report.exact,
    )
    if empty:
        return ConstraintPoly.empty(p.d), report
    rows.extend(p.a[i] for i in definition_rows)
    rhs.extend(p.b[i] for i in definition_rows)
    return ConstraintPoly(rows, rhs, p.d), report


def integer_points(
    p: ConstraintPoly, box: Sequence[Tuple[int, int]]
) -> List[Vector]:
    """Integer points of p inside an inclusive box, for brute-force checks."""
    return [
        vector(point)
        for point in product(*(range(low, high + 1) for low, high in box))
        if p.contains(vector(point))
    ]


def is_integral_polyhedron(p: ConstraintPoly) -> bool:
    """True when p is empty or all its vertices are integral."""
    gens = to_generators(p)
    return all(is_integral(v) for v in gens.vertices)
