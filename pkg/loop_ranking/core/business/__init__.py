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
"""Business - loops and their ranking functions"""
from .llrf import extract_lex_witness
from .llrf import iteration_bound
from .llrf import Llrf
from .llrf import llrf_int
from .llrf import llrf_rat
from .llrf import LlrfKind
from .llrf import LlrfVerdict
from .llrf import synth_llrf
from .llrf import verify_lex_witness
from .llrf import verify_strong_llrf
from .llrf import verify_weak_llrf
from .llrf import weak_to_strong
from .loopmodel import build_transition_system
from .loopmodel import Domain
from .loopmodel import LoopSpec
from .loopmodel import parse_loop
from .loopmodel import TransitionSystem
from .lrf import extract_lrf_witness
from .lrf import LrfQuery
from .lrf import LrfVerdict
from .lrf import synth_lrf
from .lrf import VerdictKind
from .lrf import verify_lrf
from .lrf import verify_lrf_witness
from .lrf import Witness

__all__ = [
    "build_transition_system",
    "Domain",
    "LoopSpec",
    "parse_loop",
    "TransitionSystem",
    "extract_lrf_witness",
    "LrfQuery",
    "LrfVerdict",
    "synth_lrf",
    "VerdictKind",
    "verify_lrf",
    "verify_lrf_witness",
    "Witness",
    "extract_lex_witness",
    "iteration_bound",
    "Llrf",
    "llrf_int",
    "llrf_rat",
    "LlrfKind",
    "LlrfVerdict",
    "synth_llrf",
    "verify_lex_witness",
    "verify_strong_llrf",
    "verify_weak_llrf",
    "weak_to_strong",
]
