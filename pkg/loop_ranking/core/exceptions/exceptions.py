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
"""Library exceptions"""


class LoopRankingError(Exception):
    """Base class of every error raised by the library."""


class DimensionError(LoopRankingError):
    """Vectors, matrices or polyhedra of incompatible sizes."""


class InfeasibleInputError(LoopRankingError):
    """The operation needs a feasible system."""


class FeasibleInputError(LoopRankingError):
    """The operation needs an infeasible system."""


class EmptyPolyhedronError(LoopRankingError):
    """The operation needs a nonempty polyhedron."""


class WrongHullClassError(LoopRankingError):
    """A specialised hull was called on a polyhedron outside its class."""


class InvalidHyperplaneError(LoopRankingError):
    """The hyperplane does not support the polyhedron."""


class PreconditionError(LoopRankingError):
    """An algorithmic precondition does not hold."""


class LpSolverError(LoopRankingError):
    """An LP result failed its exact check."""


class LoopSyntaxError(LoopRankingError):
    """Syntax error in a loop file.

    Args:
        message (str): description of the error
        line (int): line number, starting at 1
        column (int): column number, starting at 1
    """

    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"line {line}, column {column}: {message}")
        self.__message = message
        self.__line = line
        self.__column = column

    @property
    def message(self) -> str:
        """The error message without location.

        :getter: Returns the message
        :type: str
        """
        return self.__message

    @property
    def line(self) -> int:
        """The line of the error.

        :getter: Returns the line number
        :type: int
        """
        return self.__line

    @property
    def column(self) -> int:
        """The column of the error.

        :getter: Returns the column number
        :type: int
        """
        return self.__column
