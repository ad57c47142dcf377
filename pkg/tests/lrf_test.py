# -*- coding: utf-8 -*-
import random
from fractions import Fraction

import pytest

from conftest import random_loop
from loop_ranking.core.business.loopmodel import build_transition_system
from loop_ranking.core.business.loopmodel import Domain
from loop_ranking.core.business.loopmodel import parse_loop
from loop_ranking.core.business.lrf import bounded_below
from loop_ranking.core.business.lrf import Engine
from loop_ranking.core.business.lrf import extract_lrf_witness
from loop_ranking.core.business.lrf import LrfQuery
from loop_ranking.core.business.lrf import path_polyhedra
from loop_ranking.core.business.lrf import pr_system
from loop_ranking.core.business.lrf import synth_lrf
from loop_ranking.core.business.lrf import synth_lrf_generators
from loop_ranking.core.business.lrf import VerdictKind
from loop_ranking.core.business.lrf import verify_lrf
from loop_ranking.core.business.lrf import verify_lrf_witness
from loop_ranking.core.business.lrf import Witness
from loop_ranking.core.business.lrf import WitnessPath
from loop_ranking.core.business.lrf import WitnessReason
from loop_ranking.core.exceptions import FeasibleInputError
from loop_ranking.core.exceptions import PreconditionError
from loop_ranking.core.geometry import lp
from loop_ranking.core.geometry.linalg import AffineFunc
from loop_ranking.core.geometry.linalg import vector

RANKED_OVER_INTEGERS_ONLY = [
    "shrinking_gap",
    "integer_division",
    "fixed_step",
    "rotation",
    "mixed_paths",
]


def _synth(ts, domain, witness=False, engine=None):
    return synth_lrf(LrfQuery(ts, domain, witness), engine=engine)


def test_verdict_enum():
    print("Test verdict kind")
    assert VerdictKind.find_enum("none_modulo_hull") == (
        VerdictKind.NONE_MODULO_HULL
    )
    with pytest.raises(ValueError):
        VerdictKind.find_enum("maybe")


def test_countdown(loop):
    ts = loop("countdown")
    for domain in Domain:
        verdict = _synth(ts, domain)
        assert verdict.kind == VerdictKind.FOUND
        assert verdict.found
        assert verdict.rho == AffineFunc(0, (1,))


@pytest.mark.parametrize("name", RANKED_OVER_INTEGERS_ONLY)
def test_ranked_over_integers_only(loop, name):
    ts = loop(name)
    verdict = _synth(ts, Domain.INTEGER)
    assert verdict.kind == VerdictKind.FOUND
    assert verify_lrf(verdict.rho, ts, Domain.INTEGER)
    assert all(report is None or report.exact for report in verdict.hulls)
    assert _synth(ts, Domain.RATIONAL).kind == VerdictKind.NONE


def test_known_functions_check(loop):
    known = {
        "shrinking_gap": AffineFunc(-1, (1, 1)),
        "integer_division": AffineFunc(-1, (1, 0)),
        "fixed_step": AffineFunc(-1, (2, 1, 0)),
        "rotation": AffineFunc(12, (-3, -4, -2)),
        "mixed_paths": AffineFunc(-2, (3, 1)),
    }
    for name, rho in known.items():
        ts = loop(name)
        assert verify_lrf(rho, ts, Domain.INTEGER), name
        assert not verify_lrf(rho, ts, Domain.RATIONAL), name


def test_tight_condition_is_ranked_over_rationals(loop):
    ts = loop("shrinking_gap_tight")
    verdict = _synth(ts, Domain.RATIONAL)
    assert verdict.kind == VerdictKind.FOUND
    assert verify_lrf(verdict.rho, ts, Domain.RATIONAL)


def test_generator_engine_agrees(loop):
    for name in ["countdown", "shrinking_gap", "mixed_paths", "two_counters"]:
        ts = loop(name)
        by_constraints = _synth(ts, Domain.INTEGER, engine="eq29")
        by_generators = _synth(ts, Domain.INTEGER, engine="generators")
        assert by_constraints.kind == by_generators.kind
        if by_generators.rho is not None:
            assert verify_lrf(by_generators.rho, ts, Domain.INTEGER)


def test_engine_enum():
    assert Engine.find_enum("eq29") == Engine.EQ29
    assert Engine.find_enum("constraints") == Engine.EQ29
    assert Engine.find_enum("Generators") == Engine.GENERATORS
    with pytest.raises(ValueError):
        Engine.find_enum("simplex")


def test_engines_agree_on_random_loops():
    rng = random.Random(29)
    found = 0
    for _ in range(200):
        ts = random_loop(rng, n=2, k=rng.randint(1, 2), exact=False)
        by_constraints = _synth(ts, Domain.INTEGER, engine="eq29")
        by_generators = _synth(ts, Domain.INTEGER, engine="generators")
        assert by_constraints.kind == by_generators.kind
        if by_generators.kind == VerdictKind.FOUND:
            found += 1
            assert verify_lrf(by_constraints.rho, ts, Domain.INTEGER)
            assert verify_lrf(by_generators.rho, ts, Domain.INTEGER)
    assert found


def test_synth_lrf_generators_needs_input():
    with pytest.raises(PreconditionError):
        synth_lrf_generators([])


@pytest.mark.parametrize("name", ["two_counters", "accelerating"])
def test_no_function_with_witness(loop, name):
    ts = loop(name)
    verdict = _synth(ts, Domain.INTEGER, witness=True)
    assert verdict.kind == VerdictKind.NONE
    assert not verdict.found
    check = verify_lrf_witness(verdict.witness, ts)
    assert check.valid
    assert check.reason == WitnessReason.OK
    assert verdict.witness.size <= 2 * ts.n + 3


def test_no_witness_over_rationals(loop):
    verdict = _synth(loop("shrinking_gap"), Domain.RATIONAL, witness=True)
    assert verdict.kind == VerdictKind.NONE
    assert verdict.witness is None


def test_nonterminating_and_vacuous():
    at_origin = build_transition_system(
        parse_loop("vars: x\npath:\n  guard: x >= 0\n  update: x' = x\n")
    )
    assert _synth(at_origin, Domain.INTEGER).kind == (
        VerdictKind.NONTERMINATING
    )
    no_transition = build_transition_system(
        parse_loop("vars: x\npath:\n  guard: x >= 1; x <= 0\n  update:\n")
    )
    verdict = _synth(no_transition, Domain.RATIONAL)
    assert verdict.kind == VerdictKind.VACUOUS
    assert verdict.found
    assert verdict.rho == AffineFunc.zero(1)


def test_vacuous_over_integers_only():
    # 1/3 <= x <= 2/3 has no integer point
    ts = build_transition_system(
        parse_loop(
            "vars: x\npath:\n  guard: 3*x >= 1; 3*x <= 2\n"
            "  update: x' = x - 1\n"
        )
    )
    assert _synth(ts, Domain.INTEGER).kind == VerdictKind.VACUOUS
    assert _synth(ts, Domain.RATIONAL).kind == VerdictKind.FOUND


def test_accelerating_witness(loop):
    ts = loop("accelerating")
    witness = Witness(
        (WitnessPath(((0, 2, 2, 1),), ((1, -2, -1, -2),)),)
    )
    assert verify_lrf_witness(witness, ts).valid
    moved = Witness((WitnessPath(((0, 2, 2, 2),), ((1, -2, -1, -2),)),))
    check = verify_lrf_witness(moved, ts)
    assert not check.valid
    assert check.reason == WitnessReason.POINT_NOT_IN_PATH
    assert check.path == 0


def test_two_counters_witness(loop):
    ts = loop("two_counters")
    witness = Witness(
        (
            WitnessPath(((0, 0, -1, 0),), ((0, 0, 0, 1),)),
            WitnessPath(((0, 0, 0, -1),)),
        )
    )
    assert verify_lrf_witness(witness, ts).valid
    without_ray = Witness(
        (WitnessPath(((0, 0, -1, 0),)), WitnessPath(((0, 0, 0, -1),)))
    )
    check = verify_lrf_witness(without_ray, ts)
    assert not check.valid
    assert check.reason == WitnessReason.SYSTEM_FEASIBLE


def test_malformed_witnesses(loop):
    ts = loop("accelerating")
    point = (0, 2, 2, 1)
    cases = [
        (Witness(()), WitnessReason.DIMENSION_MISMATCH),
        (
            Witness((WitnessPath(((0, 2, 2),)),)),
            WitnessReason.DIMENSION_MISMATCH,
        ),
        (
            Witness((WitnessPath((("1/2", 2, "5/2", 1),)),)),
            WitnessReason.NOT_INTEGRAL,
        ),
        (
            Witness((WitnessPath((point,), ((-1, 0, -1, -1),)),)),
            WitnessReason.RAY_NOT_IN_RECESSION_CONE,
        ),
        (
            Witness((WitnessPath((), ((1, -2, -1, -2),)),)),
            WitnessReason.RAY_WITHOUT_POINT,
        ),
    ]
    for witness, reason in cases:
        check = verify_lrf_witness(witness, ts)
        assert not check.valid
        assert check.reason == reason


def test_extract_lrf_witness(loop):
    ts = loop("two_counters")
    witness = extract_lrf_witness(ts)
    assert verify_lrf_witness(witness, ts).valid
    with pytest.raises(FeasibleInputError):
        extract_lrf_witness(loop("countdown"))


def test_verify_lrf_rejects(loop):
    ts = loop("countdown")
    assert verify_lrf(AffineFunc(0, (2,)), ts, Domain.INTEGER)
    assert not verify_lrf(AffineFunc(-1, (1,)), ts, Domain.INTEGER)
    assert not verify_lrf(AffineFunc(0, ("1/2",)), ts, Domain.RATIONAL)


def test_pr_system(loop):
    tight = loop("shrinking_gap_tight").polys[0]
    assert lp.is_feasible(*pr_system(tight, 2).expanded())
    loose = loop("shrinking_gap").polys[0]
    assert not lp.is_feasible(*pr_system(loose, 2).expanded())


def test_path_polyhedra(loop):
    ts = loop("shrinking_gap")
    polys, reports = path_polyhedra(ts, Domain.RATIONAL)
    assert polys == [ts.polys[0]]
    assert reports == [None]
    polys, reports = path_polyhedra(ts, Domain.INTEGER)
    assert reports[0].exact
    hull = polys[0]
    assert bounded_below(hull, vector([1, 0, 0, 0]), Fraction(1))
    assert not bounded_below(ts.polys[0], vector([1, 0, 0, 0]), Fraction(1))


@pytest.mark.parametrize("name", ["two_counters_first", "two_counters_second"])
def test_each_counter_alone_is_ranked(loop, name):
    ts = loop(name)
    verdict = _synth(ts, Domain.INTEGER)
    assert verdict.kind == VerdictKind.FOUND
    assert verify_lrf(verdict.rho, ts, Domain.INTEGER)
