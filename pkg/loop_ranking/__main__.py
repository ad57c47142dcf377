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
"""Main program."""
import sys

from .cli import Analyzer
from .cli import parse_cli


def run():
    """Run the program"""
    options_cli = parse_cli()
    analyzer = Analyzer(options_cli)
    sys.exit(analyzer.run())


if __name__ == "__main__":
    # execute only if run as a script
    run()
