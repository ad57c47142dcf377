# -*- coding: utf-8 -*-
import os
import random
from fractions import Fraction

import pytest

from conftest import load_loop
from conftest import random_loop
from loop_ranking.core.business.llrf import check_components
from loop_ranking.core.business.llrf import extract_lex_witness
from loop_ranking.core.business.llrf import find_nontrivial_quasi_lrf
from loop_ranking.core.business.llrf import is_ranked
from loop_ranking.core.business.llrf import iteration_bound
from loop_ranking.core.business.llrf import Llrf
from loop_ranking.core.business.llrf import LlrfKind
from loop_ranking.core.business.llrf import llrf_syn
from loop_ranking.core.business.llrf import normalize_llrf
from loop_ranking.core.business.llrf import quasi_space
from loop_ranking.core.business.llrf import sample_transitions
from loop_ranking.core.business.llrf import synth_llrf
from loop_ranking.core.business.llrf import verify_lex_witness
from loop_ranking.core.business.llrf import verify_strong_llrf
from loop_ranking.core.business.llrf import verify_weak_llrf
from loop_ranking.core.business.llrf import weak_to_strong
from loop_ranking.core.business.loopmodel import build_transition_system
from loop_ranking.core.business.loopmodel import Domain
from loop_ranking.core.business.loopmodel import parse_loop
from loop_ranking.core.business.loopmodel import simulate
from loop_ranking.core.business.lrf import LrfQuery
from loop_ranking.core.business.lrf import path_polyhedra
from loop_ranking.core.business.lrf import synth_lrf
from loop_ranking.core.business.lrf import VerdictKind
from loop_ranking.core.business.lrf import Witness
from loop_ranking.core.business.lrf import WitnessPath
from loop_ranking.core.business.lrf import WitnessReason
from loop_ranking.core.exceptions import DimensionError
from loop_ranking.core.exceptions import FeasibleInputError
from loop_ranking.core.exceptions import PreconditionError
from loop_ranking.core.geometry.linalg import AffineFunc
from loop_ranking.core.geometry.linalg import independent_subset
from loop_ranking.core.geometry.linalg import vector

X1 = AffineFunc(0, (1, 0, 0))
THREE_PHASES_WEAK = (X1, AffineFunc(0, (-1, 1, 0)), AffineFunc(0, (0, 0, 1)))
THREE_PHASES_STRONG = Llrf(
    (X1, AffineFunc(1, (1, 1, 0)), AffineFunc(2, (1, 1, 1))),
    (1, Fraction(1, 2), Fraction(1, 3)),
    LlrfKind.STRONG,
    Domain.RATIONAL,
)


def _synth(ts, domain, witness=False):
    return synth_llrf(LrfQuery(ts, domain, witness))


def test_llrf_kind_enum():
    print("Test llrf kind")
    assert LlrfKind.find_enum("weak") == LlrfKind.WEAK
    with pytest.raises(ValueError):
        LlrfKind.find_enum("partial")


def test_llrf_type():
    llrf = Llrf((AffineFunc(0, (1, 0)), AffineFunc(-1, (0, 1))), (1, 1))
    assert llrf.d == 2
    assert str(llrf) == "<x1, x2 - 1>"
    assert llrf.format(["a", "b"]) == "<a, b - 1>"
    with pytest.raises(DimensionError):
        Llrf((AffineFunc(0, (1,)),), (1, 1))


def test_countdown_bound_matches_simulation(loop):
    ts = loop("countdown")
    for domain in Domain:
        verdict = _synth(ts, domain)
        assert verdict.kind == VerdictKind.FOUND
        assert verdict.llrf.components == (AffineFunc(0, (1,)),)
        assert verdict.llrf.deltas == vector([1])
        bound = iteration_bound(verdict.llrf, vector([5]))
        assert bound.value == 6
        assert bound.value == simulate(ts, vector([5]))
        assert bound.negative_component is None
        assert bound.literal_differs


@pytest.mark.parametrize("domain", list(Domain))
def test_transfer(loop, domain):
    ts = loop("transfer")
    verdict = _synth(ts, domain)
    assert verdict.kind == VerdictKind.FOUND
    assert verdict.llrf.d == 2
    assert verdict.chain.depth == 3
    assert verdict.chain.reach(0) == 2
    assert verify_weak_llrf(verdict.weak, ts, domain)
    assert verify_strong_llrf(verdict.llrf, ts)


def test_check_components():
    x1 = AffineFunc(0, (1, 0))
    x2 = AffineFunc(0, (0, 1))
    check_components([x1, x2], 2)
    with pytest.raises(PreconditionError):
        check_components([x1, x2, AffineFunc(1, (1, 1))], 2)
    with pytest.raises(PreconditionError):
        check_components([x1, AffineFunc(3, (2, 0))], 2)


@pytest.mark.parametrize("domain", list(Domain))
def test_components_are_minimal_and_independent(loops_dir, domain):
    names = sorted(
        os.path.splitext(name)[0]
        for name in os.listdir(loops_dir)
        if name.endswith(".lcl")
    )
    for name in names:
        ts = load_loop(name)
        linear = synth_lrf(LrfQuery(ts, domain))
        verdict = _synth(ts, domain)
        if linear.kind == VerdictKind.FOUND:
            assert verdict.kind == VerdictKind.FOUND, name
            assert verdict.llrf.d == 1, name
        if verdict.kind == VerdictKind.FOUND:
            coeffs = [rho.coeffs for rho in verdict.llrf.components]
            assert len(coeffs) <= ts.n, name
            assert len(independent_subset(coeffs)) == len(coeffs), name
            assert verdict.chain.depth <= ts.n + 1, name


def test_bound_holds_on_random_loops():
    rng = random.Random(41)
    ranked = 0
    for _ in range(2000):
        ts = random_loop(rng, n=2)
        verdict = _synth(ts, Domain.INTEGER)
        if verdict.kind != VerdictKind.FOUND:
            continue
        ranked += 1
        for _ in range(20):
            x0 = vector([rng.randint(-10, 10), rng.randint(-10, 10)])
            bound = iteration_bound(verdict.llrf, x0)
            assert simulate(ts, x0) <= bound.value, (str(verdict.llrf), x0)
        if ranked == 50:
            break
    assert ranked == 50


def test_transfer_weak_function(loop):
    ts = loop("transfer")
    weak = (AffineFunc(0, (0, 1, 0)), AffineFunc(0, (0, 0, 1)))
    assert verify_weak_llrf(weak, ts)
    assert not verify_weak_llrf(weak[1:], ts)
    assert not verify_weak_llrf(weak[:1], ts)
    with pytest.raises(DimensionError):
        verify_weak_llrf((AffineFunc(0, (1,)),), ts)


@pytest.mark.parametrize("domain", list(Domain))
def test_transfer_needs_its_guard(loop, domain):
    verdict = _synth(loop("transfer_unguarded"), domain)
    assert verdict.kind == VerdictKind.NONE
    assert not verdict.found
    assert verdict.llrf is None


def test_two_counters_over_integers(loop):
    ts = loop("two_counters")
    verdict = _synth(ts, Domain.INTEGER)
    assert verdict.kind == VerdictKind.FOUND
    assert verdict.llrf.d == 2
    assert verdict.llrf.deltas == vector([1, 1])
    assert verify_strong_llrf(verdict.llrf, ts)


@pytest.mark.parametrize("domain", list(Domain))
def test_three_phases(loop, domain):
    ts = loop("three_phases")
    verdict = _synth(ts, domain)
    assert verdict.kind == VerdictKind.FOUND
    assert verdict.llrf.d == 3
    assert verify_weak_llrf(verdict.weak, ts, domain)
    assert verify_strong_llrf(verdict.llrf, ts)


def test_three_phases_known_functions(loop):
    ts = loop("three_phases")
    assert verify_weak_llrf(THREE_PHASES_WEAK, ts)
    assert verify_strong_llrf(THREE_PHASES_STRONG, ts)
    assert not verify_weak_llrf(THREE_PHASES_WEAK[:2], ts)


def test_weak_to_strong(loop):
    ts = loop("three_phases")
    polys, _ = path_polyhedra(ts, Domain.RATIONAL)
    result = llrf_syn(polys, ts.n)
    assert result.found
    llrf = weak_to_strong(result.components, result.chain, polys)
    assert llrf.kind == LlrfKind.STRONG
    assert llrf.domain == Domain.RATIONAL
    assert all(delta > 0 for delta in llrf.deltas)
    assert verify_strong_llrf(llrf, ts)
    empty = weak_to_strong((), result.chain, polys)
    assert empty.d == 0


def test_normalize_llrf():
    factor, scaled = normalize_llrf(THREE_PHASES_STRONG)
    assert factor == 4
    assert scaled.deltas == vector([4, 2, "4/3"])
    assert all(delta > 1 for delta in scaled.deltas)
    assert scaled.components[1] == AffineFunc(4, (4, 4, 0))


def test_is_ranked():
    # second path of three_phases: x2 drops by one, x3 is reset
    assert is_ranked(THREE_PHASES_STRONG, vector([0, 1, 0, 0, 0, 5])) == 1
    assert is_ranked(THREE_PHASES_STRONG, vector([2, 2, 0, 1, 2, 0])) == 0
    assert is_ranked(THREE_PHASES_STRONG, vector([0, 0, 0, 1, 0, 0])) is None
    assert is_ranked(THREE_PHASES_STRONG, vector([-1, 0, 0, -2, 0, 0])) is None


def test_iteration_bound():
    x = AffineFunc(0, (1,))
    llrf = Llrf((x, x.shifted(-10)), (1, Fraction(1, 2)))
    bound = iteration_bound(llrf, vector([5]))
    assert bound.value == 6
    assert bound.terms == (6,)
    assert bound.negative_component == 1
    assert not bound.literal_differs
    bound = iteration_bound(llrf, vector([12]))
    assert bound.terms == (13, 5)
    assert bound.literal_differs
    weak = Llrf((x,), (1,), LlrfKind.WEAK)
    with pytest.raises(PreconditionError):
        iteration_bound(weak, vector([1]))


def test_quasi_lrf(loop):
    polys, _ = path_polyhedra(loop("countdown"), Domain.RATIONAL)
    rho = find_nontrivial_quasi_lrf(polys, 1)
    assert rho is not None
    assert rho.coeffs[0] > 0
    assert quasi_space(polys, 1).poly.d == quasi_space(polys, 1).problem.d
    polys, _ = path_polyhedra(loop("unbounded_decrease"), Domain.RATIONAL)
    assert find_nontrivial_quasi_lrf(polys, 1) is None


def test_sample_transitions(loop):
    ts = loop("three_phases")
    polys, _ = path_polyhedra(ts, Domain.RATIONAL)
    samples = sample_transitions(polys, per_path=8)
    assert samples
    assert len(samples) <= 8 * ts.k
    for xpp in samples:
        assert any(poly.contains(xpp) for poly in polys)


@pytest.mark.parametrize("name", ["unbounded_decrease", "free_counters"])
def test_no_lexicographic_function_with_witness(loop, name):
    ts = loop(name)
    verdict = _synth(ts, Domain.INTEGER, witness=True)
    assert verdict.kind == VerdictKind.NONE
    check = verify_lex_witness(verdict.witness, ts)
    assert check.valid
    assert verdict.witness.size <= 6 * ts.n + 2


def test_unguarded_transfer_witness(loop):
    ts = loop("transfer_unguarded")
    verdict = _synth(ts, Domain.INTEGER, witness=True)
    assert verify_lex_witness(verdict.witness, ts).valid


def test_unbounded_decrease_witness(loop):
    ts = loop("unbounded_decrease")
    witness = Witness((WitnessPath(((0, -1),), ((1, 1), (-1, -1))),))
    assert verify_lex_witness(witness, ts).valid
    check = verify_lex_witness(Witness((WitnessPath(((0, -1),)),)), ts)
    assert not check.valid
    assert check.reason == WitnessReason.SYSTEM_FEASIBLE


def test_free_counters_witness(loop):
    ts = loop("free_counters")
    witness = Witness(
        (
            WitnessPath(((0, 0, -1, 0),), ((0, 0, 0, 1),)),
            WitnessPath(((0, 0, 0, -1),), ((0, 0, 1, 0),)),
        )
    )
    assert verify_lex_witness(witness, ts).valid
    outside = Witness(
        (
            WitnessPath(((0, 0, -1, 0),), ((0, 0, 0, 1),)),
            WitnessPath(((0, 0, 0, -1),), ((0, -1, 1, 0),)),
        )
    )
    check = verify_lex_witness(outside, ts)
    assert check.reason == WitnessReason.RAY_NOT_IN_RECESSION_CONE
    assert check.path == 1


def test_extract_lex_witness_of_ranked_loop(loop):
    polys, _ = path_polyhedra(loop("countdown"), Domain.INTEGER)
    with pytest.raises(FeasibleInputError):
        extract_lex_witness(polys, 1)


def test_vacuous_and_nonterminating():
    at_origin = build_transition_system(
        parse_loop("vars: x\npath:\n  guard: x >= 0\n  update: x' <= x\n")
    )
    assert _synth(at_origin, Domain.RATIONAL).kind == (
        VerdictKind.NONTERMINATING
    )
    no_transition = build_transition_system(
        parse_loop("vars: x\npath:\n  guard: 2*x = 1\n  update: x' = x\n")
    )
    verdict = _synth(no_transition, Domain.INTEGER)
    assert verdict.kind == VerdictKind.VACUOUS
    assert verdict.llrf.d == 0
