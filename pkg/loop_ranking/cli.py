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
"""Command line."""
import argparse
import json
import logging
import sys
from typing import Dict
from typing import List
from typing import Optional
from typing import Sequence
from typing import TextIO
from typing import Tuple

from pydantic import ValidationError

from ._version import __author__
from ._version import __copyright__
from ._version import __description__
from ._version import __version__
from .config import analysis_config
from .config import hull_config
from .config import HullSettings
from .core.business.loopmodel import Domain
from .core.business.loopmodel import TransitionSystem
from .core.exceptions import DimensionError
from .core.exceptions import LoopRankingError
from .core.exceptions import LoopSyntaxError
from .core.geometry.linalg import to_rational
from .core.models import AnalysisReport
from .core.models import CheckCandidate
from .loop_ranking import LoopRankingLib

logger = logging.getLogger(__name__)

EXIT_FOUND = 0
EXIT_NONE = 1
EXIT_NONTERMINATING = 2
EXIT_NONE_MODULO_HULL = 3
EXIT_USAGE = 64
EXIT_DATA = 65
EXIT_NO_INPUT = 66
EXIT_INTERNAL = 70

VERDICT_EXIT = {
    "found": EXIT_FOUND,
    "vacuous": EXIT_FOUND,
    "none": EXIT_NONE,
    "nonterminating": EXIT_NONTERMINATING,
    "none_modulo_hull": EXIT_NONE_MODULO_HULL,
}

HULL_KEYS = {
    "octagon": "octagon_mode",
    "octagon_mode": "octagon_mode",
    "cut_round_cap": "cut_round_cap",
    "enumeration_limit": "enumeration_limit",
    "tu_max_order": "tu_max_order",
}


class SmartFormatter(argparse.HelpFormatter):
    """Smart formatter for argparse - The lines are split for long text"""

    def _split_lines(self, text, width):
        if text.startswith("R|"):
            return text[2:].splitlines()
        # this is the RawTextHelpFormatter._split_lines
        return argparse.HelpFormatter._split_lines(self, text, width)


class UsageParser(argparse.ArgumentParser):
    """Argument parser exiting with the usage error code."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def str2bool(string_to_test: str) -> bool:
    """Checks if a given string is a boolean

    Args:
        string_to_test (str): string to test

    Returns:
        bool: True when the string is a boolean otherwise False
    """
    return string_to_test.lower() in ("yes", "true", "True", "t", "1")


def parse_bound(text: str) -> Tuple:
    """Start state given as comma-separated rationals.

    Raises:
        argparse.ArgumentTypeError: an entry is not a rational
    """
    try:
        return tuple(to_rational(item.strip()) for item in text.split(","))
    except (ValueError, ZeroDivisionError) as error:
        raise argparse.ArgumentTypeError(
            f"{text!r} is not a list of rationals"
        ) from error


def parse_hull(text: str) -> Dict[str, str]:
    """Hull overrides given as key=value[,key=value].

    Raises:
        argparse.ArgumentTypeError: unknown key or missing value
    """
    overrides: Dict[str, str] = {}
    for item in text.split(","):
        key, sep, value = item.partition("=")
        key = key.strip()
        if not sep or key not in HULL_KEYS:
            raise argparse.ArgumentTypeError(f"unknown hull option {item!r}")
        overrides[HULL_KEYS[key]] = value.strip()
    return overrides


def parse_cli(argv: Optional[Sequence[str]] = None) -> argparse.Namespace:
    """Parse command line inputs.

    A leading `analyze` word is accepted and dropped.

    Returns
    -------
    argparse.Namespace
        Command line options
    """
    parser = UsageParser(
        description=__description__,
        formatter_class=SmartFormatter,
        epilog=__author__ + " - " + __copyright__,
    )

    parser.register("type", "bool", str2bool)  # add type keyword to registries

    parser.add_argument(
        "-v", "--version", action="version", version="%(prog)s " + __version__
    )

    parser.add_argument(
        "--level",
        choices=[
            "INFO",
            "DEBUG",
            "WARNING",
            "ERROR",
            "CRITICAL",
            "TRACE",
        ],
        default="INFO",
        help="set Level log (default: %(default)s)",
    )

    parser.add_argument(
        "--mode",
        choices=["lrf", "llrf"],
        default="lrf",
        help="R|lrf: linear ranking function\n"
        "llrf: lexicographic linear ranking function\n"
        "(default: %(default)s)",
    )

    parser.add_argument(
        "--domain",
        choices=["int", "rat"],
        default="int",
        help="Variables range over the integers or the rationals "
        "(default: %(default)s)",
    )

    parser.add_argument(
        "--witness",
        action="store_true",
        help="Report a witness when no function exists over the integers",
    )

    parser.add_argument(
        "--bound",
        type=parse_bound,
        default=None,
        help="Start state, as comma-separated rationals, of an iteration "
        "bound",
    )

    parser.add_argument(
        "--engine",
        choices=["eq29", "constraints", "generators"],
        default=analysis_config.engine,
        help="Linear synthesis from the constraints (eq29, alias "
        "constraints) or from the generators (default: %(default)s)",
    )

    parser.add_argument(
        "--hull",
        type=parse_hull,
        default={},
        help="R|Integer hull options key=value[,key=value]:\n"
        "octagon=exact|closure, cut_round_cap=N,\n"
        "enumeration_limit=N, tu_max_order=N",
    )

    parser.add_argument(
        "--format",
        choices=["text", "json"],
        default="text",
        help="Output format (default: %(default)s)",
    )

    parser.add_argument(
        "--check",
        default=None,
        help="Candidate file (JSON) to check instead of synthesizing",
    )

    parser.add_argument(
        "--self_check",
        type="bool",  # type: ignore
        choices=[True, False],
        default=analysis_config.self_check,
        help="Check every reported result again (default: %(default)s)",
    )

    parser.add_argument("files", nargs="+", help="Loop files")
    args = list(sys.argv[1:] if argv is None else argv)
    if args[:1] == ["analyze"]:
        args = args[1:]
    options = parser.parse_args(args)
    try:
        options.hull_settings = HullSettings(
            **{**hull_config.model_dump(), **options.hull}
        )
    except ValidationError as error:
        parser.error(f"invalid hull option: {error.errors()[0]['msg']}")
    return options


class Analyzer:
    """Runs the analyses of the command line."""

    def __init__(self, options_cli: argparse.Namespace):
        """Init.

        Args:
            options_cli (argparse.Namespace): command line options
        """
        self.__options_cli = options_cli
        self.__lib = LoopRankingLib(
            level=options_cli.level,
            hull_settings=options_cli.hull_settings,
            analysis_settings=analysis_config.model_copy(
                update={"self_check": options_cli.self_check}
            ),
        )

    @property
    def options_cli(self) -> argparse.Namespace:
        """The options of the command line.

        :getter: Returns the argparse.Namespace
        :type: argparse.Namespace
        """
        return self.__options_cli

    @property
    def lib(self) -> LoopRankingLib:
        """The LoopRankingLib.

        :getter: Returns the LoopRankingLib
        :type: LoopRankingLib
        """
        return self.__lib

    @property
    def domain(self) -> Domain:
        """The domain of the variables.

        :getter: Returns the domain
        :type: Domain
        """
        return Domain.find_enum(self.options_cli.domain)

    def _report(self, path: str) -> AnalysisReport:
        return AnalysisReport(
            schema_version=self.lib.analysis_settings.schema_version,
            file=path,
            mode=self.options_cli.mode,
            domain=self.domain.value,
        )

    def _check(self, path: str, ts: TransitionSystem) -> AnalysisReport:
        with open(self.options_cli.check, encoding="utf-8") as candidate:
            parsed = CheckCandidate.model_validate_json(candidate.read())
        report = self._report(path)
        report.check = self.lib.check(ts, parsed, self.domain)
        report.verdict = "valid" if report.check.valid else "invalid"
        return report

    def analyze_file(self, path: str) -> Tuple[AnalysisReport, int]:
        """Analyzes one loop file.

        Returns:
            Tuple[AnalysisReport, int]: the report and the exit code
        """
        options = self.options_cli
        try:
            _, ts = self.lib.load(path)
            if options.check is not None:
                report = self._check(path, ts)
                valid = report.check is not None and report.check.valid
                return report, EXIT_FOUND if valid else EXIT_NONE
            report = self.lib.analyze(
                ts,
                options.mode,
                self.domain,
                witness=options.witness,
                bound=options.bound,
                engine=options.engine,
                file=path,
            )
        except OSError as error:
            logger.error("%s: %s", path, error)
            return self._failed(path, str(error)), EXIT_NO_INPUT
        except LoopSyntaxError as error:
            sys.stderr.write(
                f"{path}:{error.line}:{error.column}: {error.message}\n"
            )
            return self._failed(path, str(error)), EXIT_DATA
        except (DimensionError, ValidationError) as error:
            sys.stderr.write(f"{path}: {error}\n")
            return self._failed(path, str(error)), EXIT_DATA
        except LoopRankingError as error:
            logger.exception(error)
            return self._failed(path, str(error)), EXIT_INTERNAL
        if report.self_check is False:
            return report, EXIT_INTERNAL
        return report, VERDICT_EXIT[report.verdict]  # type: ignore

    def _failed(self, path: str, message: str) -> AnalysisReport:
        report = self._report(path)
        report.error = message
        return report

    def write(self, reports: List[AnalysisReport], out: TextIO):
        """Writes the reports in the requested format."""
        if self.options_cli.format == "json":
            payload = [
                report.model_dump(mode="json", by_alias=True)
                for report in reports
            ]
            document = payload[0] if len(payload) == 1 else payload
            out.write(
                json.dumps(
                    document,
                    sort_keys=True,
                    indent=self.lib.analysis_settings.json_indent,
                )
                + "\n"
            )
            return
        for report in reports:
            out.write(format_report(report))

    def run(self, out: TextIO = sys.stdout) -> int:
        """Analyzes every file and returns the exit code.

        The exit code is the largest of the per-file codes.
        """
        reports: List[AnalysisReport] = []
        code = EXIT_FOUND
        for path in self.options_cli.files:
            report, file_code = self.analyze_file(path)
            reports.append(report)
            code = max(code, file_code)
        self.write(reports, out)
        return code


def _point(values: Sequence[str]) -> str:
    return "(" + ", ".join(values) + ")"


def format_report(report: AnalysisReport) -> str:
    """Human readable form of a report."""
    lines = [f"{report.file}: {report.verdict or 'error'}"]
    if report.error:
        lines.append(f"  error: {report.error}")
    for number, function in enumerate(report.functions):
        rho = function.to_affine()
        delta = report.deltas[number] if report.deltas else "1"
        lines.append(f"  rho{number + 1} = {rho}  (decrease >= {delta})")
    if report.normalized is not None:
        lines.append(f"  normalized by {report.normalized.scale}")
    if report.witness is not None:
        for number, path in enumerate(report.witness.paths):
            if not path.points and not path.rays:
                continue
            points = " ".join(_point(p) for p in path.points)
            rays = " ".join(_point(r) for r in path.rays)
            lines.append(f"  witness path {number}: points {points}")
            if rays:
                lines.append(f"  witness path {number}: rays {rays}")
    for hull in report.hull:
        if not hull.exact:
            lines.append(f"  path {hull.path}: integer hull not exact")
    if report.bound is not None:
        lines.append(f"  iteration bound: {report.bound.value}")
    if report.check is not None and report.check.reason:
        lines.append(f"  reason: {report.check.reason}")
    if report.self_check is False:
        lines.append("  self check failed")
    return "\n".join(lines) + "\n"
