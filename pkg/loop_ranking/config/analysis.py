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
"""Config of the ranking function synthesis"""
from typing import Literal

from pydantic_settings import SettingsConfigDict

from .base import BaseSettings
from .cfg import JSON_INDENT
from .cfg import REPORT_SCHEMA_VERSION
from .cfg import SELF_CHECK


class AnalysisSettings(BaseSettings):  # pylint: disable=too-few-public-methods
    """Analysis env values, prefixed by ``ANALYSIS_``"""

    model_config = SettingsConfigDict(env_prefix="ANALYSIS_")

    engine: Literal["eq29", "constraints", "generators"] = "eq29"
    self_check: bool = SELF_CHECK
    json_indent: int = JSON_INDENT
    schema_version: int = REPORT_SCHEMA_VERSION

    @classmethod
    def generate(cls):
        """Generate the analysis settings from the environment"""
        return AnalysisSettings()
