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
"""Exact rational linear programming.

A two-phase tableau simplex over :class:`fractions.Fraction` using Bland's
rule. Infeasible problems come with a Farkas certificate that is checked
exactly before being returned.
"""
import logging
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import FrozenSet
from typing import List
from typing import Optional
from typing import Sequence
from typing import Set
from typing import Tuple
from typing import Union

from ..exceptions import DimensionError
from ..exceptions import FeasibleInputError
from ..exceptions import InfeasibleInputError
from ..exceptions import LpSolverError
from .linalg import dot
from .linalg import Matrix
from .linalg import matrix
from .linalg import neg
from .linalg import ONE
from .linalg import unit
from .linalg import Vector
from .linalg import vector
from .linalg import ZERO

logger = logging.getLogger(__name__)


class Sense(str, Enum):
    """Direction of the optimization."""

    MIN = "min"
    MAX = "max"


@dataclass(frozen=True)
class LPProblem:
    """Linear program over d variables.

    The feasible set is ``a x <= b``, ``eq_a x = eq_b`` and ``x_j >= 0`` for
    every j in `nonneg`. Without objective, solving only decides
    feasibility.
    """

    a: Matrix
    b: Vector
    objective: Optional[Vector] = None
    sense: Sense = Sense.MIN
    eq_a: Matrix = ()
    eq_b: Vector = ()
    nonneg: FrozenSet[int] = frozenset()
    dim: Optional[int] = None

    def __post_init__(self):
        object.__setattr__(self, "a", matrix(self.a))
        object.__setattr__(self, "b", vector(self.b))
        object.__setattr__(self, "eq_a", matrix(self.eq_a))
        object.__setattr__(self, "eq_b", vector(self.eq_b))
        object.__setattr__(self, "nonneg", frozenset(self.nonneg))
        if self.objective is not None:
            object.__setattr__(self, "objective", vector(self.objective))
        dim = self.dim
        if dim is None:
            if self.a:
                dim = len(self.a[0])
            elif self.eq_a:
                dim = len(self.eq_a[0])
            elif self.objective is not None:
                dim = len(self.objective)
            else:
                dim = 0
            object.__setattr__(self, "dim", dim)
        if len(self.a) != len(self.b) or len(self.eq_a) != len(self.eq_b):
            raise DimensionError("row count differs from right-hand side")
        for row in self.a + self.eq_a:
            if len(row) != dim:
                raise DimensionError(
                    f"row of size {len(row)} in a problem of dimension {dim}"
                )
        if self.objective is not None and len(self.objective) != dim:
            raise DimensionError("objective size differs from dimension")
        if any(j < 0 or j >= dim for j in self.nonneg):
            raise DimensionError("nonnegative index out of range")

    @property
    def d(self) -> int:
        """The number of variables.

        :getter: Returns the number of variables
        :type: int
        """
        return self.dim  # type: ignore

    def expanded(self) -> Tuple[Matrix, Vector]:
        """All constraints as rows of ``<=``.

        The order is: inequalities, equalities, negated equalities, then
        ``-x_j <= 0`` for the nonnegative variables in increasing order.
        Certificates index these rows.
        """
        rows: List[Vector] = list(self.a) + list(self.eq_a)
        rhs: List[Fraction] = list(self.b) + list(self.eq_b)
        rows += [neg(row) for row in self.eq_a]
        rhs += [-value for value in self.eq_b]
        for j in sorted(self.nonneg):
            rows.append(neg(unit(self.d, j)))
            rhs.append(ZERO)
        return tuple(rows), tuple(rhs)

    def with_equalities(
        self, rows: Sequence[Vector], rhs: Sequence[Fraction]
    ) -> "LPProblem":
        """Same problem with extra equality constraints."""
        return LPProblem(
            self.a,
            self.b,
            self.objective,
            self.sense,
            self.eq_a + matrix(rows),
            self.eq_b + vector(rhs),
            self.nonneg,
            self.d,
        )

    def with_objective(
        self, objective: Optional[Vector], sense: Sense = Sense.MIN
    ) -> "LPProblem":
        """Same feasible set with another objective."""
        return LPProblem(
            self.a,
            self.b,
            objective,
            sense,
            self.eq_a,
            self.eq_b,
            self.nonneg,
            self.d,
        )


@dataclass(frozen=True)
class Optimal:
    """Bounded optimum."""

    point: Vector
    value: Fraction


@dataclass(frozen=True)
class Unbounded:
    """The objective improves without limit from `point` along `ray`."""

    point: Vector
    ray: Vector


@dataclass(frozen=True)
class Infeasible:
    """Farkas certificate y >= 0 with y A = 0 and y b < 0.

    The certificate indexes the rows of :meth:`LPProblem.expanded`.
    """

    certificate: Vector = ()


@dataclass(frozen=True)
class Feasible:
    """A feasible point of a problem without objective."""

    point: Vector


LPOutcome = Union[Optimal, Unbounded, Infeasible, Feasible]


class _Tableau:
    """Simplex tableau with the right-hand side as last column."""

    def __init__(self, rows: List[List[Fraction]], basis: List[int]):
        self.rows = rows
        self.basis = basis
        self.ncols = len(rows[0]) - 1 if rows else 0
        self.cost: List[Fraction] = [ZERO] * (self.ncols + 1)
        self.excluded: Set[int] = set()

    @property
    def value(self) -> Fraction:
        """Objective value of the current basic solution."""
        return -self.cost[-1]

    def set_objective(self, costs: Sequence[Fraction]):
        """Installs the reduced costs of a minimization objective."""
        padded = list(costs) + [ZERO] * (self.ncols + 1 - len(costs))
        cost = list(padded)
        for i, var in enumerate(self.basis):
            coef = padded[var]
            if coef:
                cost = [x - coef * y for x, y in zip(cost, self.rows[i])]
        self.cost = cost

    def pivot(self, row_index: int, col: int):
        """Makes `col` basic in row `row_index`."""
        head = self.rows[row_index]
        inverse = ONE / head[col]
        head = [x * inverse for x in head]
        self.rows[row_index] = head
        for i, row in enumerate(self.rows):
            factor = row[col]
            if i != row_index and factor:
                self.rows[i] = [x - factor * y for x, y in zip(row, head)]
        factor = self.cost[col]
        if factor:
            self.cost = [x - factor * y for x, y in zip(self.cost, head)]
        self.basis[row_index] = col

    def run(self) -> Optional[int]:
        """Minimizes with Bland's rule.

        Returns:
            Optional[int]: None at the optimum, otherwise the entering
            column along which the objective is unbounded
        """
        while True:
            entering = next(
                (
                    j
                    for j in range(self.ncols)
                    if j not in self.excluded and self.cost[j] < 0
                ),
                None,
            )
            if entering is None:
                return None
            best: Optional[Tuple[Tuple[Fraction, int], int]] = None
            for i, row in enumerate(self.rows):
                coef = row[entering]
                if coef > 0:
                    key = (row[-1] / coef, self.basis[i])
                    if best is None or key < best[0]:
                        best = (key, i)
            if best is None:
                return entering
            self.pivot(best[1], entering)

    def solution(self) -> List[Fraction]:
        """Values of all columns in the current basic solution."""
        values = [ZERO] * self.ncols
        for i, var in enumerate(self.basis):
            values[var] = self.rows[i][-1]
        return values

    def direction(self, entering: int) -> List[Fraction]:
        """Edge direction obtained by increasing the entering column."""
        values = [ZERO] * self.ncols
        values[entering] = ONE
        for i, var in enumerate(self.basis):
            values[var] = -self.rows[i][entering]
        return values


class _StandardForm:
    """Equality form with nonnegative columns of an :class:`LPProblem`.

    Free variables are split in a positive and a negative part, every
    inequality receives a slack and rows are negated so that the
    right-hand side is nonnegative.
    """

    def __init__(self, problem: LPProblem):
        self.problem = problem
        self.columns: List[List[Tuple[int, int]]] = []
        col = 0
        for j in range(problem.d):
            if j in problem.nonneg:
                self.columns.append([(col, 1)])
                col += 1
            else:
                self.columns.append([(col, 1), (col + 1, -1)])
                col += 2
        self.n_struct = col
        self.n_slack = len(problem.a)

    def _lift(self, row: Vector) -> List[Fraction]:
        lifted = [ZERO] * self.n_struct
        for coef, cols in zip(row, self.columns):
            if coef:
                for col, sign in cols:
                    lifted[col] = coef * sign
        return lifted

    def feasible_tableau(self) -> Optional[_Tableau]:
        """Runs phase 1.

        Returns:
            Optional[_Tableau]: a feasible tableau without artificial
            columns in the basis, None when the problem is infeasible
        """
        problem = self.problem
        raw: List[Tuple[List[Fraction], Fraction, Optional[int]]] = []
        for i, (row, rhs) in enumerate(zip(problem.a, problem.b)):
            raw.append((self._lift(row), rhs, i))
        for row, rhs in zip(problem.eq_a, problem.eq_b):
            raw.append((self._lift(row), rhs, None))
        n_base = self.n_struct + self.n_slack
        n_art = sum(
            1 for _, rhs, slack in raw if slack is None or rhs < 0
        )
        ncols = n_base + n_art
        rows: List[List[Fraction]] = []
        basis: List[int] = []
        artificial = n_base
        for lifted, rhs, slack in raw:
            full = lifted + [ZERO] * (self.n_slack + n_art) + [rhs]
            if slack is not None:
                full[self.n_struct + slack] = ONE
            if rhs < 0:
                full = [-x for x in full]
            if slack is not None and rhs >= 0:
                basis.append(self.n_struct + slack)
            else:
                full[artificial] = ONE
                basis.append(artificial)
                artificial += 1
            rows.append(full)
        if not rows:
            tableau = _Tableau([], [])
            tableau.ncols = ncols
            tableau.cost = [ZERO] * (ncols + 1)
            return tableau
        tableau = _Tableau(rows, basis)
        if n_art:
            tableau.set_objective(
                [ZERO] * n_base + [ONE] * n_art  # type: ignore
            )
            tableau.run()
            if tableau.value > 0:
                return None
            self._drive_out_artificials(tableau, n_base)
        tableau.excluded = set(range(n_base, ncols))
        return tableau

    @staticmethod
    def _drive_out_artificials(tableau: _Tableau, n_base: int):
        index = 0
        while index < len(tableau.rows):
            if tableau.basis[index] >= n_base:
                row = tableau.rows[index]
                col = next(
                    (j for j in range(n_base) if row[j] != 0), None
                )
                if col is None:
                    del tableau.rows[index]
                    del tableau.basis[index]
                    continue
                tableau.pivot(index, col)
            index += 1

    def costs(self, objective: Vector, sense: Sense) -> List[Fraction]:
        """Column costs of a minimization equivalent to the objective."""
        if sense == Sense.MAX:
            objective = neg(objective)
        lifted = self._lift(objective)
        return lifted + [ZERO] * (self.n_slack)

    def to_point(self, values: Sequence[Fraction]) -> Vector:
        """Maps column values back to the problem variables."""
        return tuple(
            sum((sign * values[col] for col, sign in cols), ZERO)
            for cols in self.columns
        )


def _check_certificate(problem: LPProblem, certificate: Vector):
    rows, rhs = problem.expanded()
    if any(y < 0 for y in certificate):
        raise LpSolverError("negative Farkas multiplier")
    combination = [ZERO] * problem.d
    for y, row in zip(certificate, rows):
        if y:
            for j, entry in enumerate(row):
                combination[j] += y * entry
    if any(combination) or dot(certificate, rhs) >= 0:
        raise LpSolverError("the Farkas certificate does not check")


def farkas_certificate(problem: LPProblem) -> Vector:
    """Nonnegative y with y A = 0 and y b = -1 over the expanded rows.

    The certificate is a basic solution, so at most d + 1 entries are
    nonzero.

    Raises:
        LpSolverError: the problem is feasible or the certificate does not
        check
    """
    rows, rhs = problem.expanded()
    count = len(rows)
    eq_rows = [
        tuple(rows[i][j] for i in range(count)) for j in range(problem.d)
    ]
    eq_rows.append(tuple(rhs))
    eq_rhs = [ZERO] * problem.d + [-ONE]
    dual = LPProblem(
        (),
        (),
        eq_a=tuple(eq_rows),
        eq_b=tuple(eq_rhs),
        nonneg=frozenset(range(count)),
        dim=count,
    )
    form = _StandardForm(dual)
    tableau = form.feasible_tableau()
    if tableau is None:
        raise LpSolverError("no Farkas certificate for an infeasible system")
    certificate = form.to_point(tableau.solution())
    _check_certificate(problem, certificate)
    return certificate


def solve(problem: LPProblem) -> LPOutcome:
    """Solves a linear program exactly.

    Args:
        problem (LPProblem): the problem

    Returns:
        LPOutcome: Optimal, Unbounded, Infeasible or Feasible (no objective)
    """
    form = _StandardForm(problem)
    tableau = form.feasible_tableau()
    if tableau is None:
        return Infeasible(farkas_certificate(problem))
    if problem.objective is None:
        return Feasible(form.to_point(tableau.solution()))
    tableau.set_objective(form.costs(problem.objective, problem.sense))
    entering = tableau.run()
    point = form.to_point(tableau.solution())
    if entering is not None:
        return Unbounded(point, _ray_from_direction(form, tableau, entering))
    return Optimal(point, dot(problem.objective, point))


def _ray_from_direction(
    form: _StandardForm, tableau: _Tableau, entering: int
) -> Vector:
    direction = tableau.direction(entering)
    return tuple(
        sum((sign * direction[col] for col, sign in cols), ZERO)
        for cols in form.columns
    )


def is_feasible(
    a: Sequence[Vector],
    b: Sequence[Fraction],
    dim: Optional[int] = None,
) -> bool:
    """True when a x <= b has a rational solution."""
    return not isinstance(solve(LPProblem(a, b, dim=dim)), Infeasible)


def minimize(
    a: Sequence[Vector],
    b: Sequence[Fraction],
    objective: Vector,
) -> LPOutcome:
    """Minimizes objective . x over a x <= b."""
    return solve(LPProblem(a, b, objective, Sense.MIN, dim=len(objective)))


def maximize(
    a: Sequence[Vector],
    b: Sequence[Fraction],
    objective: Vector,
) -> LPOutcome:
    """Maximizes objective . x over a x <= b."""
    return solve(LPProblem(a, b, objective, Sense.MAX, dim=len(objective)))


def implies(
    a: Sequence[Vector],
    b: Sequence[Fraction],
    row: Vector,
    rhs: Fraction,
) -> bool:
    """True when row . x <= rhs holds on every solution of a x <= b.

    An infeasible system implies everything.
    """
    outcome = maximize(a, b, row)
    if isinstance(outcome, Infeasible):
        return True
    if isinstance(outcome, Unbounded):
        return False
    return outcome.value <= rhs  # type: ignore


def _slack_rows(
    a: Sequence[Vector], b: Sequence[Fraction], point: Vector
) -> Set[int]:
    return {
        i for i, (row, rhs) in enumerate(zip(a, b)) if dot(row, point) < rhs
    }


def implied_equalities(
    a: Sequence[Vector],
    b: Sequence[Fraction],
    dim: Optional[int] = None,
) -> Set[int]:
    """Rows of a x <= b that hold with equality on every solution.

    Row i is implied when min{a_i x | a x <= b} = b_i; the maximum is b_i as
    well since a_i x <= b_i is a constraint. Rows seen slack at any
    computed point are skipped.

    Raises:
        InfeasibleInputError: the system has no solution
    """
    problem = LPProblem(a, b, dim=dim)
    outcome = solve(problem)
    if isinstance(outcome, Infeasible):
        raise InfeasibleInputError("implied equalities of an empty system")
    slack = _slack_rows(problem.a, problem.b, outcome.point)  # type: ignore
    implied: Set[int] = set()
    for i, row in enumerate(problem.a):
        if i in slack:
            continue
        result = solve(problem.with_objective(row, Sense.MIN))
        point = result.point  # type: ignore
        slack |= _slack_rows(problem.a, problem.b, point)
        if isinstance(result, Optimal) and result.value == problem.b[i]:
            implied.add(i)
    logger.trace(  # type: ignore # pylint: disable=no-member
        "%d implied equalities out of %d rows", len(implied), len(problem.a)
    )
    return implied


def iis(
    a: Sequence[Vector],
    b: Sequence[Fraction],
    dim: Optional[int] = None,
) -> List[int]:
    """Irreducible infeasible subsystem of a x <= b.

    Starts from the support of a basic Farkas certificate (at most d + 1
    rows) and deletes rows one at a time while the rest stays infeasible.

    Returns:
        List[int]: sorted row indices

    Raises:
        FeasibleInputError: the system has a solution
    """
    problem = LPProblem(a, b, dim=dim)
    outcome = solve(problem)
    if not isinstance(outcome, Infeasible):
        raise FeasibleInputError("an IIS needs an infeasible system")
    current = [i for i, y in enumerate(outcome.certificate) if y > 0]
    for index in list(current):
        trial = [i for i in current if i != index]
        if not is_feasible(
            [problem.a[i] for i in trial],
            [problem.b[i] for i in trial],
            problem.d,
        ):
            current = trial
    logger.debug("IIS of %d rows out of %d", len(current), len(problem.a))
    return current
