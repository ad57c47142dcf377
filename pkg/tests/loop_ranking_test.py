# -*- coding: utf-8 -*-
import logging

import pytest

import loop_ranking
from conftest import loop_path
from loop_ranking import __name_soft__
from loop_ranking.config import AnalysisSettings
from loop_ranking.config import HullSettings
from loop_ranking.core.business.loopmodel import Domain
from loop_ranking.core.exceptions import DimensionError
from loop_ranking.core.models import CheckCandidate
from loop_ranking.loop_ranking import LoopRankingLib


@pytest.fixture(scope="module")
def lib():
    return LoopRankingLib(level="DEBUG")


def test_name():
    print("Test name")
    assert __name_soft__ == "loop_ranking"
    assert loop_ranking.__version__
    assert loop_ranking.LoopRankingLib is LoopRankingLib


def test_logger_level():
    LoopRankingLib(level="WARNING")
    assert logging.getLogger(__name_soft__).level == logging.WARNING
    LoopRankingLib(level="TRACE")
    assert logging.getLogger(__name_soft__).level == 15
    LoopRankingLib(level="VERBOSE")
    assert logging.getLogger(__name_soft__).level == logging.INFO


def test_settings():
    custom = LoopRankingLib(
        hull_settings=HullSettings(cut_round_cap=3),
        analysis_settings=AnalysisSettings(self_check=False),
    )
    assert custom.hull_settings.cut_round_cap == 3
    assert not custom.analysis_settings.self_check


def test_settings_from_environment(monkeypatch):
    monkeypatch.setenv("HULL_OCTAGON_MODE", "closure")
    assert HullSettings().octagon_mode == "closure"


def test_analyze(lib):
    spec, ts = lib.load(loop_path("shrinking_gap"))
    assert spec.variables == ("x1", "x2")
    report = lib.analyze(ts, "lrf", Domain.INTEGER, file="shrinking_gap")
    assert report.verdict == "found"
    assert report.kind == "lrf"
    assert report.self_check is True
    assert report.hull and report.hull[0].exact
    report = lib.analyze(ts, "lrf", Domain.RATIONAL)
    assert report.verdict == "none"
    assert report.functions == []


def test_analyze_llrf_with_bound(lib):
    _, ts = lib.load(loop_path("countdown"))
    report = lib.analyze(ts, "llrf", Domain.INTEGER, bound=(5,))
    assert report.verdict == "found"
    assert report.bound.value == 6
    assert report.bound.literal_differs
    assert report.engine is None
    with pytest.raises(DimensionError):
        lib.analyze(ts, "llrf", Domain.INTEGER, bound=(5, 1))


def test_bound_without_function(lib):
    _, ts = lib.load(loop_path("unbounded_decrease"))
    report = lib.analyze(ts, "llrf", Domain.INTEGER, bound=(0,))
    assert report.verdict == "none"
    assert report.bound is None


def test_check(lib):
    _, ts = lib.load(loop_path("two_counters"))
    witness = CheckCandidate.model_validate(
        {
            "kind": "witness",
            "paths": [
                {
                    "points": [["0", "0", "-1", "0"]],
                    "rays": [["0", "0", "0", "1"]],
                },
                {"points": [["0", "0", "0", "-1"]]},
            ],
        }
    )
    check = lib.check(ts, witness, Domain.INTEGER)
    assert check.valid
    assert check.reason == "ok"
    weak = CheckCandidate.model_validate(
        {
            "kind": "llrf",
            "functions": [
                {"lambda0": "0", "lambda": ["1", "0"]},
                {"lambda0": "0", "lambda": ["0", "1"]},
            ],
        }
    )
    assert lib.check(ts, weak, Domain.INTEGER).valid
    strong = weak.model_copy(update={"deltas": ["1", "1"]})
    assert lib.check(ts, strong, Domain.INTEGER).valid
    wrong = CheckCandidate.model_validate(
        {"kind": "lrf", "functions": [{"lambda0": "0", "lambda": ["1"]}]}
    )
    with pytest.raises(DimensionError):
        lib.check(ts, wrong, Domain.INTEGER)


def test_check_linear_candidate_needs_one_function(lib):
    _, ts = lib.load(loop_path("two_counters"))
    pair = CheckCandidate.model_validate(
        {
            "kind": "llrf",
            "functions": [
                {"lambda0": "0", "lambda": ["1", "0"]},
                {"lambda0": "0", "lambda": ["0", "1"]},
            ],
        }
    )
    with pytest.raises(DimensionError):
        lib.check(ts, pair.model_copy(update={"kind": "lrf"}), Domain.INTEGER)
    with pytest.raises(DimensionError):
        lib.check(
            ts,
            CheckCandidate.model_construct(kind="lrf", functions=[]),
            Domain.INTEGER,
        )


def test_analyze_engine_alias(lib):
    _, ts = lib.load(loop_path("countdown"))
    report = lib.analyze(ts, "lrf", Domain.INTEGER, engine="constraints")
    assert report.engine == "eq29"
    assert report.verdict == "found"
    report = lib.analyze(ts, "lrf", Domain.INTEGER, engine="generators")
    assert report.engine == "generators"
    assert report.verdict == "found"
