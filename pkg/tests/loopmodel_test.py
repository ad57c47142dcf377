# -*- coding: utf-8 -*-
from fractions import Fraction

import pytest

from loop_ranking.core.business.loopmodel import build_transition_system
from loop_ranking.core.business.loopmodel import deterministic_successor
from loop_ranking.core.business.loopmodel import Domain
from loop_ranking.core.business.loopmodel import format_loop
from loop_ranking.core.business.loopmodel import parse_loop
from loop_ranking.core.business.loopmodel import quick_checks
from loop_ranking.core.business.loopmodel import Relation
from loop_ranking.core.business.loopmodel import simulate
from loop_ranking.core.exceptions import LoopSyntaxError
from loop_ranking.core.exceptions import PreconditionError
from loop_ranking.core.geometry.linalg import vector

TWO_PATHS = """
# comment line
vars: x y
path:
  guard: x >= 0; 2*x + 1/2*y <= 3   # trailing comment
  update: x' = x - 1; y' <= y
path:
  guard: y >= 1
  update: y' = y - 1; x' = x
"""


def test_domain_enum():
    print("Test domain")
    assert Domain.find_enum("int") == Domain.INTEGER
    assert Domain.find_enum("Z") == Domain.INTEGER
    assert Domain.find_enum("rat") == Domain.RATIONAL
    assert Domain.find_enum("rational") == Domain.RATIONAL
    with pytest.raises(ValueError):
        Domain.find_enum("real")


def test_relation_enum():
    assert Relation.find_enum("<=") == Relation.LE
    with pytest.raises(ValueError):
        Relation.find_enum("<")


def test_parse_loop():
    spec = parse_loop(TWO_PATHS)
    assert spec.variables == ("x", "y")
    assert spec.n == 2
    assert len(spec.paths) == 2
    guard = spec.paths[0].guard
    assert guard[1].terms == (("x", Fraction(2)), ("y", Fraction(1, 2)))
    assert guard[1].relation == Relation.LE
    assert guard[1].rhs == 3
    assert str(guard[0]) == "x >= 0"


def test_format_loop_parses_back():
    spec = parse_loop(TWO_PATHS)
    assert parse_loop(format_loop(spec)) == spec


def test_build_transition_system():
    ts = build_transition_system(parse_loop(TWO_PATHS))
    assert ts.n == 2
    assert ts.k == 2
    assert ts.nonempty() == [0, 1]
    assert ts.variable_names() == ("x", "y", "x'", "y'")
    first = ts.polys[0]
    assert first.d == 4
    assert first.contains(vector([1, 0, 0, 0]))
    assert not first.contains(vector([1, 0, 1, 0]))
    assert not first.contains(vector([-1, 0, -2, 0]))


def test_empty_path():
    ts = build_transition_system(
        parse_loop("vars: x\npath:\n  guard: x >= 1; x <= 0\n  update:\n")
    )
    assert ts.empty == (True,)
    assert ts.nonempty() == []


@pytest.mark.parametrize(
    "text,line,column",
    [
        ("vars: x\npath:\n  guard: x < 1\n", 3, 12),
        ("vars: x\npath:\n  guard: y >= 1\n", 3, 10),
        ("vars: x\npath:\n  guard: x' >= 1\n", 3, 10),
        ("path:\n", 1, 1),
        ("vars: x\n", 1, 1),
        ("vars: x x\n", 1, 9),
        ("vars: x\nguard: x >= 0\n", 2, 1),
        ("vars: x\npath:\n  guard: x >= 0 >= 1\n", 3, 17),
        ("vars: x\npath:\n  loop: x >= 0\n", 3, 3),
    ],
)
def test_syntax_errors(text, line, column):
    with pytest.raises(LoopSyntaxError) as error:
        parse_loop(text)
    assert error.value.line == line
    assert error.value.column == column


def test_strict_inequality_message():
    with pytest.raises(LoopSyntaxError) as error:
        parse_loop("vars: x\npath:\n  guard: x > 1\n")
    assert "strict" in error.value.message


def test_quick_checks(loop):
    checks = quick_checks(loop("countdown"))
    assert checks.origin_fixpoint == (False,)
    assert checks.empty == (False,)
    loops_at_origin = build_transition_system(
        parse_loop("vars: x\npath:\n  guard: x >= 0\n  update: x' = 2*x\n")
    )
    assert quick_checks(loops_at_origin).origin_fixpoint == (True,)


def test_deterministic_successor(loop):
    ts = loop("countdown")
    assert deterministic_successor(ts, vector([3])) == vector([2])
    assert deterministic_successor(ts, vector([-1])) is None
    with pytest.raises(PreconditionError):
        deterministic_successor(loop("transfer"), vector([1, 1, 1]))


def test_simulate(loop):
    assert simulate(loop("countdown"), vector([5])) == 6
    assert simulate(loop("oscillating"), vector([2])) == 2
    assert simulate(loop("two_counters_second"), vector([0, 1])) == 2
    growing = build_transition_system(
        parse_loop("vars: x\npath:\n  guard: x >= 0\n  update: x' = x + 1\n")
    )
    with pytest.raises(PreconditionError):
        simulate(growing, vector([0]), limit=10)
