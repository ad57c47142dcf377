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
"""Config of the integer hull"""
from typing import Literal

from pydantic import Field
from pydantic_settings import SettingsConfigDict

from .base import BaseSettings


class HullSettings(BaseSettings):  # pylint: disable=too-few-public-methods
    """Integer hull env values

    Every field can be overridden by an environment variable prefixed by
    ``HULL_``, for instance ``HULL_CUT_ROUND_CAP=40``.
    """

    model_config = SettingsConfigDict(env_prefix="HULL_")

    cut_round_cap: int = Field(25, ge=1)
    octagon_mode: Literal["exact", "closure"] = "exact"
    enumeration_limit: int = Field(20000, ge=0)
    tu_max_order: int = Field(6, ge=1)

    @classmethod
    def generate(cls):
        """Generate the integer hull settings from the environment"""
        return HullSettings()
