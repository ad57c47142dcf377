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
"""Analysis reports as pydantic models, rationals written as "p/q"."""
from fractions import Fraction
from typing import Annotated
from typing import List
from typing import Optional
from typing import Sequence

from pydantic import AfterValidator  # pylint: disable=E0611
from pydantic import BaseModel  # pylint: disable=E0611
from pydantic import ConfigDict  # pylint: disable=E0611
from pydantic import Field  # pylint: disable=E0611

from ..business.lrf import Witness
from ..business.lrf import WitnessPath
from ..geometry.inthull import HullReport
from ..geometry.linalg import AffineFunc
from ..geometry.linalg import format_rational
from ..geometry.linalg import to_rational
from ..geometry.linalg import Vector


def _check_rational(value: str) -> str:
    try:
        Fraction(value)
    except (ValueError, ZeroDivisionError) as error:
        raise ValueError(f"{value!r} is not a rational") from error
    return value


RationalStr = Annotated[str, AfterValidator(_check_rational)]


def rationals(values: Sequence[Fraction]) -> List[str]:
    """Rationals as "p/q" strings."""
    return [format_rational(value) for value in values]


def parse_rationals(values: Sequence[str]) -> Vector:
    """Vector of "p/q" strings."""
    return tuple(to_rational(value) for value in values)


class FunctionModel(BaseModel):  # pylint: disable=R0903
    """Affine function lambda . x + lambda0."""

    model_config = ConfigDict(populate_by_name=True)

    lambda0: RationalStr
    coeffs: List[RationalStr] = Field(alias="lambda")

    @classmethod
    def from_affine(cls, f: AffineFunc) -> "FunctionModel":
        """Model of an affine function."""
        return cls(
            lambda0=format_rational(f.lambda0), coeffs=rationals(f.coeffs)
        )

    def to_affine(self) -> AffineFunc:
        """The affine function of the model."""
        return AffineFunc(
            to_rational(self.lambda0), parse_rationals(self.coeffs)
        )


class PathWitnessModel(BaseModel):  # pylint: disable=R0903
    """Points and rays of one path."""

    points: List[List[RationalStr]] = []
    rays: List[List[RationalStr]] = []


class WitnessModel(BaseModel):  # pylint: disable=R0903
    """Witness of nonexistence, one entry per path."""

    paths: List[PathWitnessModel]
    size: int = 0

    @classmethod
    def from_witness(cls, witness: Witness) -> "WitnessModel":
        """Model of a witness."""
        return cls(
            paths=[
                PathWitnessModel(
                    points=[rationals(p) for p in path.points],
                    rays=[rationals(r) for r in path.rays],
                )
                for path in witness.paths
            ],
            size=witness.size,
        )

    def to_witness(self) -> Witness:
        """The witness of the model."""
        return Witness(
            tuple(
                WitnessPath(
                    tuple(parse_rationals(p) for p in path.points),
                    tuple(parse_rationals(r) for r in path.rays),
                )
                for path in self.paths
            )
        )


class AddedRowModel(BaseModel):  # pylint: disable=R0903
    """Constraint row . x <= rhs added by an integer hull."""

    row: List[RationalStr]
    rhs: RationalStr


class HullComponentModel(BaseModel):  # pylint: disable=R0903
    """How one block of variables was hulled."""

    model_config = ConfigDict(populate_by_name=True)

    variables: List[int]
    hull_class: str = Field(alias="class")
    added: List[AddedRowModel]
    exact: bool
    escalated: bool


class PathHullModel(BaseModel):  # pylint: disable=R0903
    """Integer hull report of one path."""

    path: int
    exact: bool
    eliminated: List[int]
    components: List[HullComponentModel]

    @classmethod
    def from_report(cls, path: int, report: HullReport) -> "PathHullModel":
        """Model of the hull report of a path."""
        return cls(
            path=path,
            exact=report.exact,
            eliminated=list(report.eliminated),
            components=[
                HullComponentModel(
                    variables=list(component.variables),
                    hull_class=component.hull_class.value,
                    added=[
                        AddedRowModel(
                            row=rationals(row), rhs=format_rational(rhs)
                        )
                        for row, rhs in component.added
                    ],
                    exact=component.exact,
                    escalated=component.escalated,
                )
                for component in report.components
            ],
        )


class NormalizedModel(BaseModel):  # pylint: disable=R0903
    """Strong function scaled so that every decrease exceeds 1."""

    scale: RationalStr
    functions: List[FunctionModel]
    deltas: List[RationalStr]


class BoundModel(BaseModel):  # pylint: disable=R0903
    """Iteration bound from a start state."""

    start: List[RationalStr]
    value: int
    terms: List[int]
    negative_component: Optional[int] = None
    literal_differs: bool = False


class CheckModel(BaseModel):  # pylint: disable=R0903
    """Outcome of a candidate check."""

    kind: str
    valid: bool
    reason: Optional[str] = None
    path: Optional[int] = None


class AnalysisReport(BaseModel):  # pylint: disable=R0903
    """Report of one loop file."""

    model_config = ConfigDict(populate_by_name=True)

    schema_version: int = Field(1, alias="schema")
    file: str
    mode: str
    domain: str
    engine: Optional[str] = None
    verdict: Optional[str] = None
    kind: Optional[str] = None
    functions: List[FunctionModel] = []
    deltas: List[RationalStr] = []
    weak: List[FunctionModel] = []
    normalized: Optional[NormalizedModel] = None
    witness: Optional[WitnessModel] = None
    hull: List[PathHullModel] = []
    bound: Optional[BoundModel] = None
    check: Optional[CheckModel] = None
    self_check: Optional[bool] = None
    error: Optional[str] = None
    timing: float = 0.0
