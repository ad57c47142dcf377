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
"""Linear and lexicographic ranking functions for linear-constraint loops"""
import logging.config
import os
from logging import debug
from logging import getLogger
from logging import NullHandler
from logging import setLogRecordFactory
from logging import warning

from ._version import __author__
from ._version import __author_email__
from ._version import __copyright__
from ._version import __description__
from ._version import __license__
from ._version import __name_soft__
from ._version import __title__
from ._version import __url__
from ._version import __version__
from .custom_logging import LogRecord
from .custom_logging import UtilsLogs

getLogger(__name__).addHandler(NullHandler())

UtilsLogs.add_logging_level("TRACE", 15)
# LOOP_RANKING_LOGGING_CONF replaces the packaged configuration
LOGGING_CONF = os.environ.get(
    "LOOP_RANKING_LOGGING_CONF",
    os.path.join(os.path.dirname(os.path.realpath(__file__)), "logging.conf"),
)
try:
    logging.config.fileConfig(LOGGING_CONF, disable_existing_loggers=False)
    debug("file %s loaded", LOGGING_CONF)
except Exception as exception:  # pylint: disable=broad-except
    warning("cannot load %s : %s", LOGGING_CONF, exception)
setLogRecordFactory(LogRecord)  # pylint: disable=no-member

from .loop_ranking import LoopRankingLib  # noqa: E402 pylint: disable=C0413
