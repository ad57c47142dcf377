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
"""Loop files, their syntax tree and the transition polyhedra of a loop.

A loop file declares the variables and one block per path::

    vars: x1 x2
    path:
      guard: x2 - x1 <= 0; x1 + x2 >= 1
      update: x2' = x2 - 2*x1 + 1; x1' = x1

A path relates the state x to the next state x' (primed names). Its
transition polyhedron lives in 2n coordinates: x first, then x'.
"""
import logging
import re
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Dict
from typing import List
from typing import Optional
from typing import Sequence
from typing import Tuple

from ..exceptions import LoopSyntaxError
from ..exceptions import PreconditionError
from ..geometry import lp
from ..geometry.linalg import format_rational
from ..geometry.linalg import Vector
from ..geometry.linalg import vector
from ..geometry.linalg import ZERO
from ..geometry.polyhedra import ConstraintPoly
from ..geometry.polyhedra import contains_origin

logger = logging.getLogger(__name__)

_TOKEN = re.compile(
    r"\s*(?:(?P<num>\d+(?:\.\d+|/\d+)?)"
    r"|(?P<var>[A-Za-z_][A-Za-z0-9_]*'?)"
    r"|(?P<op><=|>=|=|<|>)"
    r"|(?P<sym>[-+*]))"
)
_SECTION = re.compile(r"^\s*(vars|path|guard|update)\s*:(.*)$")


class Domain(str, Enum):
    """Domain of the loop variables."""

    RATIONAL = "rational"
    INTEGER = "integer"

    @staticmethod
    def find_enum(name: str):
        """Find enum based on its value or a short name (Q, Z, rat, int)

        Args:
            name (str): "rational", "integer" or a short name

        Raises:
            ValueError: Unknown domain

        Returns:
            Domain: Enum
        """
        aliases = {
            "q": Domain.RATIONAL,
            "rat": Domain.RATIONAL,
            "z": Domain.INTEGER,
            "int": Domain.INTEGER,
        }
        key = name.lower()
        if key in aliases:
            return aliases[key]
        for member in Domain:
            if member.value == key:
                return member
        raise ValueError(f"Unknown domain {name}")


class Relation(str, Enum):
    """Relation of a constraint."""

    LE = "<="
    GE = ">="
    EQ = "="

    @staticmethod
    def find_enum(name: str):
        """Find enum based on its symbol

        Args:
            name (str): "<=", ">=" or "="

        Raises:
            ValueError: Unknown symbol

        Returns:
            Relation: Enum
        """
        for member in Relation:
            if member.value == name:
                return member
        raise ValueError(f"Unknown relation {name}")


@dataclass(frozen=True)
class LinearConstraint:
    """sum(coef * name) relation rhs, primed names end with a quote."""

    terms: Tuple[Tuple[str, Fraction], ...]
    relation: Relation
    rhs: Fraction

    def format(self) -> str:
        """Text of the constraint in the loop file syntax."""
        parts: List[str] = []
        for name, coef in self.terms:
            size = abs(coef)
            text = name if size == 1 else f"{format_rational(size)}*{name}"
            if not parts:
                parts.append(text if coef > 0 else f"-{text}")
            else:
                parts.append(("+ " if coef > 0 else "- ") + text)
        lhs = " ".join(parts) if parts else "0"
        return f"{lhs} {self.relation.value} {format_rational(self.rhs)}"

    def __str__(self) -> str:
        return self.format()


@dataclass(frozen=True)
class Path:
    """Guard over x and update over (x, x') of one path."""

    guard: Tuple[LinearConstraint, ...]
    update: Tuple[LinearConstraint, ...]


@dataclass(frozen=True)
class LoopSpec:
    """A single or multipath linear-constraint loop."""

    variables: Tuple[str, ...]
    paths: Tuple[Path, ...]

    @property
    def n(self) -> int:
        """The number of variables.

        :getter: Returns the number of declared variables
        :type: int
        """
        return len(self.variables)


@dataclass(frozen=True)
class TransitionSystem:
    """Transition polyhedra of the paths over 2n coordinates."""

    n: int
    polys: Tuple[ConstraintPoly, ...]
    empty: Tuple[bool, ...]
    names: Tuple[str, ...] = ()

    @property
    def k(self) -> int:
        """The number of paths.

        :getter: Returns the number of paths
        :type: int
        """
        return len(self.polys)

    def variable_names(self) -> Tuple[str, ...]:
        """Names of the 2n coordinates."""
        names = self.names or tuple(f"x{i + 1}" for i in range(self.n))
        return tuple(names) + tuple(f"{name}'" for name in names)

    def nonempty(self) -> List[int]:
        """Indices of the paths with at least one transition."""
        return [i for i in range(self.k) if not self.empty[i]]


@dataclass(frozen=True)
class QuickChecks:
    """Cheap facts about each path."""

    origin_fixpoint: Tuple[bool, ...]
    empty: Tuple[bool, ...]


class _Cursor:
    """Tokens of one constraint with their column in the source line."""

    def __init__(self, text: str, line: int, offset: int):
        self.line = line
        self.tokens: List[Tuple[str, str, int]] = []
        position = 0
        while position < len(text):
            if text[position:].strip() == "":
                break
            match = _TOKEN.match(text, position)
            if match is None or match.lastgroup is None:
                rest = text[position:]
                column = offset + position + len(rest) - len(rest.lstrip())
                raise LoopSyntaxError(
                    f"unexpected character '{rest.lstrip()[0]}'",
                    line,
                    column + 1,
                )
            kind = match.lastgroup
            start = match.start(kind)
            self.tokens.append((kind, match.group(kind), offset + start + 1))
            position = match.end()
        self.index = 0
        self.end_column = offset + len(text.rstrip()) + 1

    def peek(self) -> Optional[Tuple[str, str, int]]:
        if self.index < len(self.tokens):
            return self.tokens[self.index]
        return None

    def take(self) -> Tuple[str, str, int]:
        token = self.peek()
        if token is None:
            raise LoopSyntaxError(
                "unexpected end of constraint", self.line, self.end_column
            )
        self.index += 1
        return token


def _number(text: str, line: int, column: int) -> Fraction:
    try:
        return Fraction(text)
    except ZeroDivisionError as error:
        raise LoopSyntaxError("division by zero", line, column) from error


def _expression(
    cursor: _Cursor,
) -> Tuple[Dict[str, Fraction], Fraction, List[Tuple[str, int]]]:
    """Affine expression up to a relation or the end of the constraint."""
    coeffs: Dict[str, Fraction] = {}
    constant = ZERO
    names: List[Tuple[str, int]] = []
    sign = Fraction(1)
    token = cursor.peek()
    if token is not None and token[0] == "sym" and token[1] in "+-":
        cursor.take()
        sign = Fraction(-1 if token[1] == "-" else 1)
    while True:
        kind, text, column = cursor.take()
        if kind == "num":
            value = _number(text, cursor.line, column)
            following = cursor.peek()
            if following is not None and following[1] == "*":
                cursor.take()
                kind, text, column = cursor.take()
                if kind != "var":
                    raise LoopSyntaxError(
                        "a variable is expected after '*'",
                        cursor.line,
                        column,
                    )
                coeffs[text] = coeffs.get(text, ZERO) + sign * value
                names.append((text, column))
            else:
                constant += sign * value
        elif kind == "var":
            coeffs[text] = coeffs.get(text, ZERO) + sign
            names.append((text, column))
        else:
            raise LoopSyntaxError(
                f"unexpected '{text}'", cursor.line, column
            )
        following = cursor.peek()
        if following is None or following[0] == "op":
            return coeffs, constant, names
        if following[0] != "sym" or following[1] == "*":
            raise LoopSyntaxError(
                f"unexpected '{following[1]}'", cursor.line, following[2]
            )
        cursor.take()
        sign = Fraction(-1 if following[1] == "-" else 1)


def _constraint(
    text: str, line: int, offset: int
) -> Tuple[LinearConstraint, List[Tuple[str, int]]]:
    cursor = _Cursor(text, line, offset)
    left, left_constant, names = _expression(cursor)
    kind, symbol, column = cursor.take()
    if kind != "op":
        raise LoopSyntaxError(f"unexpected '{symbol}'", line, column)
    if symbol in ("<", ">"):
        raise LoopSyntaxError(
            f"strict inequality '{symbol}' is not supported, loops only "
            "use <=, >= and =",
            line,
            column,
        )
    right, right_constant, more = _expression(cursor)
    if cursor.peek() is not None:
        token = cursor.peek()
        raise LoopSyntaxError(
            "a constraint has a single relation",
            line,
            token[2],  # type: ignore
        )
    terms: Dict[str, Fraction] = dict(left)
    for name, coef in right.items():
        terms[name] = terms.get(name, ZERO) - coef
    constraint = LinearConstraint(
        tuple((name, coef) for name, coef in terms.items() if coef != 0),
        Relation.find_enum(symbol),
        right_constant - left_constant,
    )
    return constraint, names + more


def _check_names(
    names: List[Tuple[str, int]],
    declared: Sequence[str],
    line: int,
    allow_primed: bool,
):
    for name, column in names:
        base = name[:-1] if name.endswith("'") else name
        if base not in declared:
            raise LoopSyntaxError(f"unknown variable '{base}'", line, column)
        if name.endswith("'") and not allow_primed:
            raise LoopSyntaxError(
                f"primed variable '{name}' in a guard", line, column
            )


def _constraints(
    body: str, line: int, offset: int, declared: Sequence[str], primed: bool
) -> List[LinearConstraint]:
    result: List[LinearConstraint] = []
    start = 0
    for piece in body.split(";"):
        if piece.strip():
            constraint, names = _constraint(piece, line, offset + start)
            _check_names(names, declared, line, primed)
            result.append(constraint)
        start += len(piece) + 1
    return result


def parse_loop(text: str) -> LoopSpec:
    """Parses a loop in the loop file format.

    Args:
        text (str): content of a loop file

    Returns:
        LoopSpec: the loop

    Raises:
        LoopSyntaxError: with the line and column of the first error
    """
    variables: Optional[Tuple[str, ...]] = None
    paths: List[Tuple[List[LinearConstraint], List[LinearConstraint]]] = []
    last_line = 0
    for number, raw in enumerate(text.splitlines(), start=1):
        last_line = number
        source = raw.split("#", 1)[0]
        if not source.strip():
            continue
        match = _SECTION.match(source)
        if match is None:
            column = len(source) - len(source.lstrip()) + 1
            raise LoopSyntaxError(
                "expected 'vars:', 'path:', 'guard:' or 'update:'",
                number,
                column,
            )
        keyword, body = match.group(1), match.group(2)
        offset = match.start(2)
        if keyword == "vars":
            if variables is not None:
                raise LoopSyntaxError("variables declared twice", number, 1)
            variables = _declare(body, number, offset)
            continue
        if variables is None:
            raise LoopSyntaxError(
                "the variables must be declared first", number, 1
            )
        if keyword == "path":
            if body.strip():
                raise LoopSyntaxError(
                    "nothing may follow 'path:'", number, offset + 1
                )
            paths.append(([], []))
            continue
        if not paths:
            raise LoopSyntaxError(
                f"'{keyword}:' outside of a path", number, 1
            )
        constraints = _constraints(
            body, number, offset, variables, keyword == "update"
        )
        paths[-1][0 if keyword == "guard" else 1].extend(constraints)
    if variables is None:
        raise LoopSyntaxError("missing 'vars:' declaration", last_line, 1)
    if not paths:
        raise LoopSyntaxError("a loop needs at least one path", last_line, 1)
    spec = LoopSpec(
        variables,
        tuple(Path(tuple(guard), tuple(update)) for guard, update in paths),
    )
    logger.debug(
        "loop parsed: %d variables, %d paths", spec.n, len(spec.paths)
    )
    return spec


def _declare(body: str, line: int, offset: int) -> Tuple[str, ...]:
    names: List[str] = []
    for match in re.finditer(r"\S+", body):
        name = match.group(0)
        column = offset + match.start() + 1
        if not re.fullmatch(r"[A-Za-z_][A-Za-z0-9_]*", name):
            raise LoopSyntaxError(
                f"invalid variable name '{name}'", line, column
            )
        if name in names:
            raise LoopSyntaxError(f"duplicate variable '{name}'", line, column)
        names.append(name)
    if not names:
        raise LoopSyntaxError("at least one variable is needed", line, 1)
    return tuple(names)


def format_loop(spec: LoopSpec) -> str:
    """Loop file text of a loop; parsing it gives the same LoopSpec."""
    lines = ["vars: " + " ".join(spec.variables)]
    for path in spec.paths:
        lines.append("path:")
        lines.append(
            "  guard: " + "; ".join(c.format() for c in path.guard)
        )
        lines.append(
            "  update: " + "; ".join(c.format() for c in path.update)
        )
    return "\n".join(lines) + "\n"


def _rows(
    constraint: LinearConstraint, index: Dict[str, int], size: int
) -> List[Tuple[Vector, Fraction]]:
    row = [ZERO] * size
    for name, coef in constraint.terms:
        row[index[name]] += coef
    vec = tuple(row)
    negated = tuple(-x for x in row)
    if constraint.relation == Relation.LE:
        return [(vec, constraint.rhs)]
    if constraint.relation == Relation.GE:
        return [(negated, -constraint.rhs)]
    return [(vec, constraint.rhs), (negated, -constraint.rhs)]


def build_transition_system(spec: LoopSpec) -> TransitionSystem:
    """Transition polyhedra of every path, x first and x' last.

    Equalities become pairs of inequalities. Paths without any transition
    are flagged as empty.
    """
    n = spec.n
    index = {name: i for i, name in enumerate(spec.variables)}
    index.update({f"{name}'": n + i for i, name in enumerate(spec.variables)})
    polys: List[ConstraintPoly] = []
    empty: List[bool] = []
    for number, path in enumerate(spec.paths):
        rows: List[Tuple[Vector, Fraction]] = []
        for constraint in path.guard + path.update:
            rows.extend(_rows(constraint, index, 2 * n))
        poly = ConstraintPoly(
            tuple(row for row, _ in rows), tuple(rhs for _, rhs in rows), 2 * n
        )
        polys.append(poly)
        empty.append(poly.is_empty())
        if empty[-1]:
            logger.debug("path %d has no transition", number)
    return TransitionSystem(n, tuple(polys), tuple(empty), spec.variables)


def quick_checks(ts: TransitionSystem) -> QuickChecks:
    """Origin membership and emptiness of each path.

    A path containing the origin (x = x' = 0) makes the loop
    non-terminating.
    """
    return QuickChecks(
        tuple(contains_origin(poly) for poly in ts.polys), ts.empty
    )


def _restrict(poly: ConstraintPoly, x: Vector, n: int) -> ConstraintPoly:
    rows = [row[n:] for row in poly.a]
    rhs = [
        bound - sum((c * v for c, v in zip(row[:n], x)), ZERO)
        for row, bound in poly.rows()
    ]
    return ConstraintPoly(rows, rhs, n)


def _unique_point(poly: ConstraintPoly) -> Optional[Vector]:
    point: List[Fraction] = []
    for j in range(poly.d):
        objective = tuple(Fraction(1 if i == j else 0) for i in range(poly.d))
        low = poly.minimum(objective)
        high = poly.maximum(objective)
        if not isinstance(low, lp.Optimal) or not isinstance(high, lp.Optimal):
            return None
        if low.value != high.value:
            return None
        point.append(low.value)
    return tuple(point)


def deterministic_successor(
    ts: TransitionSystem, x: Sequence[Fraction]
) -> Optional[Vector]:
    """The next state from x, None when no path is enabled.

    Raises:
        PreconditionError: an enabled path does not determine x', or two
        enabled paths disagree
    """
    state = vector(x)
    successor: Optional[Vector] = None
    for number in ts.nonempty():
        restricted = _restrict(ts.polys[number], state, ts.n)
        if restricted.is_empty():
            continue
        point = _unique_point(restricted)
        if point is None:
            raise PreconditionError(
                f"path {number} does not determine the next state"
            )
        if successor is not None and successor != point:
            raise PreconditionError("two enabled paths disagree")
        successor = point
    return successor


def simulate(
    ts: TransitionSystem, x0: Sequence[Fraction], limit: int = 100000
) -> int:
    """Number of iterations of a deterministic loop from x0.

    Raises:
        PreconditionError: the loop is not deterministic or does not stop
        within `limit` iterations
    """
    state: Optional[Vector] = vector(x0)
    count = 0
    while True:
        state = deterministic_successor(ts, state)  # type: ignore
        if state is None:
            return count
        count += 1
        if count > limit:
            raise PreconditionError(f"no termination after {limit} steps")
