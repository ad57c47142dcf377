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
"""Config of application"""
from .analysis import AnalysisSettings
from .hull import HullSettings

hull_config = HullSettings.generate()
analysis_config = AnalysisSettings.generate()
