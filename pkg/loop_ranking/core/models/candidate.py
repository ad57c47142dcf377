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
"""Candidate files given to the checks."""
from typing import List
from typing import Literal
from typing import Optional

from pydantic import BaseModel  # pylint: disable=E0611
from pydantic import model_validator  # pylint: disable=E0611

from .report import FunctionModel
from .report import PathWitnessModel
from .report import RationalStr


class CheckCandidate(BaseModel):  # pylint: disable=R0903
    """A ranking function, a lexicographic one or a witness to check.

    A lexicographic candidate without deltas is checked as a weak
    function, with deltas by sampling as a strong one.
    """

    kind: Literal["lrf", "llrf", "witness", "lex_witness"]
    functions: List[FunctionModel] = []
    deltas: Optional[List[RationalStr]] = None
    paths: List[PathWitnessModel] = []

    @model_validator(mode="after")
    def _consistent(self) -> "CheckCandidate":
        if self.kind == "lrf" and len(self.functions) != 1:
            raise ValueError("an lrf candidate holds exactly one function")
        if self.kind == "llrf" and not self.functions:
            raise ValueError("an llrf candidate holds at least one function")
        if self.deltas is not None and len(self.deltas) != len(
            self.functions
        ):
            raise ValueError("one delta is needed per function")
        if self.kind in ("witness", "lex_witness") and not self.paths:
            raise ValueError("a witness candidate holds its paths")
        return self
