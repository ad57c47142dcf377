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
"""This module contains the library."""
import logging
import time
from pathlib import Path
from typing import Optional
from typing import Sequence
from typing import Tuple

from ._version import __name_soft__
from .config import analysis_config
from .config import AnalysisSettings
from .config import hull_config
from .config import HullSettings
from .core.business.llrf import iteration_bound
from .core.business.llrf import Llrf
from .core.business.llrf import LlrfKind
from .core.business.llrf import LlrfVerdict
from .core.business.llrf import normalize_llrf
from .core.business.llrf import synth_llrf
from .core.business.llrf import verify_lex_witness
from .core.business.llrf import verify_strong_llrf
from .core.business.llrf import verify_weak_llrf
from .core.business.loopmodel import build_transition_system
from .core.business.loopmodel import Domain
from .core.business.loopmodel import LoopSpec
from .core.business.loopmodel import parse_loop
from .core.business.loopmodel import TransitionSystem
from .core.business.lrf import Engine
from .core.business.lrf import LrfQuery
from .core.business.lrf import LrfVerdict
from .core.business.lrf import synth_lrf
from .core.business.lrf import VerdictKind
from .core.business.lrf import verify_lrf
from .core.business.lrf import verify_lrf_witness
from .core.exceptions import DimensionError
from .core.geometry.linalg import AffineFunc
from .core.geometry.linalg import format_rational
from .core.geometry.linalg import Vector
from .core.models import AnalysisReport
from .core.models import BoundModel
from .core.models import CheckCandidate
from .core.models import CheckModel
from .core.models import FunctionModel
from .core.models import NormalizedModel
from .core.models import PathHullModel
from .core.models import WitnessModel
from .core.models.report import rationals

logger = logging.getLogger(__name__)


class LoopRankingLib:
    """The library"""

    def __init__(self, *args, **kwargs):
        # pylint: disable=unused-argument
        if "level" in kwargs:
            LoopRankingLib._parse_level(kwargs["level"])
        self.__hull_settings: HullSettings = (
            kwargs.get("hull_settings") or hull_config
        )
        self.__analysis_settings: AnalysisSettings = (
            kwargs.get("analysis_settings") or analysis_config
        )

    @staticmethod
    def _parse_level(level: str):
        """Parse level name and set the right level for the logger.
        If the level is not known, the INFO level is set

        Args:
            level (str): level name
        """
        logger_main = logging.getLogger(__name_soft__)
        if level == "INFO":
            logger_main.setLevel(logging.INFO)
        elif level == "DEBUG":
            logger_main.setLevel(logging.DEBUG)
        elif level == "WARNING":
            logger_main.setLevel(logging.WARNING)
        elif level == "ERROR":
            logger_main.setLevel(logging.ERROR)
        elif level == "CRITICAL":
            logger_main.setLevel(logging.CRITICAL)
        elif level == "TRACE":
            logger_main.setLevel(logging.TRACE)  # type: ignore # pylint: disable=no-member
        else:
            logger_main.warning(
                "Unknown level name : %s - setting level to INFO", level
            )
            logger_main.setLevel(logging.INFO)

    @property
    def hull_settings(self) -> HullSettings:
        """The integer hull settings.

        :getter: Returns the integer hull settings
        :type: HullSettings
        """
        return self.__hull_settings

    @property
    def analysis_settings(self) -> AnalysisSettings:
        """The analysis settings.

        :getter: Returns the analysis settings
        :type: AnalysisSettings
        """
        return self.__analysis_settings

    @staticmethod
    def load(path: str) -> Tuple[LoopSpec, TransitionSystem]:
        """Reads a loop file.

        Raises:
            OSError: the file cannot be read
            LoopSyntaxError: the file is not a loop
        """
        logger.debug("Reading the loop from %s", path)
        spec = parse_loop(Path(path).read_text(encoding="utf-8"))
        return spec, build_transition_system(spec)

    def _lrf_report(
        self,
        report: AnalysisReport,
        ts: TransitionSystem,
        domain: Domain,
        verdict: LrfVerdict,
    ) -> Optional[Llrf]:
        report.kind = "lrf"
        checks = []
        llrf = None
        if verdict.rho is not None:
            report.functions = [FunctionModel.from_affine(verdict.rho)]
            report.deltas = ["1"]
            llrf = Llrf((verdict.rho,), (1,), LlrfKind.STRONG, domain)
            if verdict.kind == VerdictKind.FOUND:
                checks.append(
                    verify_lrf(verdict.rho, ts, domain, self.hull_settings)
                )
        if verdict.witness is not None:
            report.witness = WitnessModel.from_witness(verdict.witness)
            checks.append(verify_lrf_witness(verdict.witness, ts).valid)
        self._self_check(report, checks)
        return llrf

    def _llrf_report(
        self,
        report: AnalysisReport,
        ts: TransitionSystem,
        domain: Domain,
        verdict: LlrfVerdict,
    ) -> Optional[Llrf]:
        checks = []
        llrf = verdict.llrf
        if llrf is not None:
            report.kind = LlrfKind.STRONG.value
            report.functions = [
                FunctionModel.from_affine(rho) for rho in llrf.components
            ]
            report.deltas = rationals(llrf.deltas)
            report.weak = [
                FunctionModel.from_affine(rho) for rho in verdict.weak
            ]
            if domain == Domain.RATIONAL and llrf.d:
                scale, scaled = normalize_llrf(llrf)
                report.normalized = NormalizedModel(
                    scale=format_rational(scale),
                    functions=[
                        FunctionModel.from_affine(rho)
                        for rho in scaled.components
                    ],
                    deltas=rationals(scaled.deltas),
                )
            if verdict.kind == VerdictKind.FOUND:
                weak = (
                    verdict.weak
                    if domain == Domain.RATIONAL
                    else llrf.components
                )
                checks.append(
                    verify_weak_llrf(weak, ts, domain, self.hull_settings)
                )
                checks.append(
                    verify_strong_llrf(llrf, ts, self.hull_settings)
                )
        if verdict.witness is not None:
            report.witness = WitnessModel.from_witness(verdict.witness)
            checks.append(verify_lex_witness(verdict.witness, ts).valid)
        self._self_check(report, checks)
        return llrf

    def _self_check(self, report: AnalysisReport, checks):
        if not self.analysis_settings.self_check or not checks:
            return
        report.self_check = all(checks)
        if not report.self_check:
            logger.error("%s: a reported result fails its check", report.file)

    def analyze(  # pylint: disable=too-many-arguments
        self,
        ts: TransitionSystem,
        mode: str,
        domain: Domain,
        witness: bool = False,
        bound: Optional[Sequence] = None,
        engine: Optional[str] = None,
        file: str = "",
    ) -> AnalysisReport:
        """Runs a synthesis and builds its report.

        Args:
            ts (TransitionSystem): the loop
            mode (str): "lrf" or "llrf"
            domain (Domain): integers or rationals
            witness (bool): whether a witness of nonexistence is wanted
            bound (Optional[Sequence]): start state of an iteration bound
            engine (Optional[str]): linear synthesis engine
            file (str): name of the loop file in the report

        Raises:
            DimensionError: the start state does not have n entries
        """
        start = time.perf_counter()
        engine = Engine.find_enum(engine or self.analysis_settings.engine)
        report = AnalysisReport(
            schema_version=self.analysis_settings.schema_version,
            file=file,
            mode=mode,
            domain=domain.value,
            engine=engine.value if mode == "lrf" else None,
        )
        query = LrfQuery(ts, domain, witness)
        verdict: LrfVerdict | LlrfVerdict
        if mode == "lrf":
            verdict = synth_lrf(query, self.hull_settings, engine)
            llrf = self._lrf_report(report, ts, domain, verdict)
        else:
            verdict = synth_llrf(query, self.hull_settings)
            llrf = self._llrf_report(report, ts, domain, verdict)
        report.verdict = verdict.kind.value
        report.hull = [
            PathHullModel.from_report(number, hull)
            for number, hull in enumerate(verdict.hulls)
            if hull is not None
        ]
        if bound is not None:
            report.bound = self._bound(ts, llrf, bound)
        report.timing = time.perf_counter() - start
        return report

    @staticmethod
    def _bound(
        ts: TransitionSystem, llrf: Optional[Llrf], x0: Sequence
    ) -> Optional[BoundModel]:
        state: Vector = tuple(x0)
        if len(state) != ts.n:
            raise DimensionError(
                f"start state with {len(state)} entries, loop over {ts.n}"
            )
        if llrf is None:
            return None
        result = iteration_bound(llrf, state)
        if result.literal_differs:
            logger.warning(
                "no component is negative at the start state: the bound "
                "counts the last component too"
            )
        return BoundModel(
            start=rationals(state),
            value=result.value,
            terms=list(result.terms),
            negative_component=result.negative_component,
            literal_differs=result.literal_differs,
        )

    def _functions(
        self, ts: TransitionSystem, candidate: CheckCandidate
    ) -> Tuple[AffineFunc, ...]:
        functions = tuple(f.to_affine() for f in candidate.functions)
        for rho in functions:
            if rho.n != ts.n:
                raise DimensionError(
                    f"function over {rho.n} variables, loop over {ts.n}"
                )
        return functions

    def check(
        self,
        ts: TransitionSystem,
        candidate: CheckCandidate,
        domain: Domain,
    ) -> CheckModel:
        """Checks a candidate function or witness against a loop.

        Raises:
            DimensionError: a function does not have n variables, or a
            linear candidate does not have exactly one function
        """
        if candidate.kind in ("witness", "lex_witness"):
            witness = WitnessModel(paths=candidate.paths).to_witness()
            if candidate.kind == "witness":
                outcome = verify_lrf_witness(witness, ts)
            else:
                outcome = verify_lex_witness(witness, ts)
            return CheckModel(
                kind=candidate.kind,
                valid=outcome.valid,
                reason=outcome.reason.value,
                path=outcome.path,
            )
        functions = self._functions(ts, candidate)
        if candidate.kind == "lrf":
            if len(functions) != 1:
                raise DimensionError(
                    f"lrf candidate with {len(functions)} functions"
                )
            valid = verify_lrf(functions[0], ts, domain, self.hull_settings)
        elif candidate.deltas is None:
            valid = verify_weak_llrf(
                functions, ts, domain, self.hull_settings
            )
        else:
            llrf = Llrf(functions, candidate.deltas, LlrfKind.STRONG, domain)
            valid = verify_strong_llrf(llrf, ts, self.hull_settings)
        return CheckModel(
            kind=candidate.kind,
            valid=valid,
            reason=None if valid else "not_ranking",
        )
