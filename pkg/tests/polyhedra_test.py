# -*- coding: utf-8 -*-
import random
from fractions import Fraction

import pytest

from loop_ranking.core.exceptions import DimensionError
from loop_ranking.core.exceptions import EmptyPolyhedronError
from loop_ranking.core.exceptions import InvalidHyperplaneError
from loop_ranking.core.geometry import lp
from loop_ranking.core.geometry import polyhedra
from loop_ranking.core.geometry.linalg import matrix
from loop_ranking.core.geometry.linalg import primitive
from loop_ranking.core.geometry.linalg import vector
from loop_ranking.core.geometry.polyhedra import ConstraintPoly
from loop_ranking.core.geometry.polyhedra import GeneratorRep


@pytest.fixture(scope="module")
def square():
    return ConstraintPoly(
        matrix([[1, 0], [0, 1], [-1, 0], [0, -1]]), vector([1, 1, 0, 0]), 2
    )


def test_constraint_poly_basics(square):
    print("Test polyhedron")
    assert square.m == 4
    assert not square.is_empty()
    assert square.contains(vector(["1/2", 1]))
    assert not square.contains(vector([2, 0]))
    assert ConstraintPoly.empty(2).is_empty()
    assert not ConstraintPoly.universe(3).is_empty()
    with pytest.raises(DimensionError):
        square.contains(vector([0]))
    with pytest.raises(DimensionError):
        ConstraintPoly(matrix([[1, 0]]), vector([1]), 3)


def test_optimum_over_polyhedron(square):
    outcome = square.maximum(vector([1, 1]))
    assert isinstance(outcome, lp.Optimal)
    assert outcome.value == 2
    assert isinstance(
        ConstraintPoly.universe(1).minimum(vector([1])), lp.Unbounded
    )


def test_square_generators(square):
    gens = polyhedra.to_generators(square)
    assert gens.vertices == matrix([[0, 0], [0, 1], [1, 0], [1, 1]])
    assert gens.rays == ()
    assert polyhedra.set_equal(polyhedra.to_constraints(gens), square)


def test_cone_generators():
    quadrant = ConstraintPoly(matrix([[-1, 0], [0, -1]]), vector([0, 0]), 2)
    gens = polyhedra.to_generators(quadrant)
    assert gens.vertices == matrix([[0, 0]])
    assert gens.rays == matrix([[0, 1], [1, 0]])


def test_lines_as_opposite_rays():
    half_plane = ConstraintPoly(matrix([[0, -1]]), vector([0]), 2)
    gens = polyhedra.to_generators(half_plane)
    assert len(gens.vertices) == 1
    assert gens.vertices[0][1] == 0
    assert set(gens.rays) == set(matrix([[-1, 0], [1, 0], [0, 1]]))
    assert polyhedra.set_equal(polyhedra.to_constraints(gens), half_plane)


def test_rays_are_primitive():
    p = ConstraintPoly(matrix([[-2, 1], [0, -1]]), vector([0, 0]), 2)
    gens = polyhedra.to_generators(p)
    assert set(gens.rays) == set(matrix([[1, 0], [1, 2]]))


def test_empty_generators():
    gens = polyhedra.to_generators(ConstraintPoly.empty(2))
    assert gens.is_empty
    assert polyhedra.to_constraints(GeneratorRep((), (), 2)).is_empty()


def test_dim():
    segment = ConstraintPoly(
        matrix([[1, 0], [-1, 0], [0, 1], [0, -1]]), vector([1, 0, 0, 0]), 2
    )
    assert polyhedra.dim(segment) == 1
    assert polyhedra.dim(ConstraintPoly.empty(2)) == -1
    assert polyhedra.dim(ConstraintPoly.universe(2)) == 2
    assert polyhedra.implied_rows(segment) == frozenset({2, 3})


def test_remove_redundant(square):
    loose = square.add_rows([vector([1, 1])], [Fraction(5)])
    tight = polyhedra.remove_redundant(loose)
    assert tight.m == 4
    assert polyhedra.set_equal(tight, square)
    assert polyhedra.includes(loose, square)


def test_includes(square):
    small = square.add_rows([vector([1, 1])], [Fraction(1)])
    assert polyhedra.includes(square, small)
    assert not polyhedra.includes(small, square)
    with pytest.raises(DimensionError):
        polyhedra.includes(square, ConstraintPoly.universe(3))


def test_recession_cone_and_origin(square):
    cone = polyhedra.recession_cone(square)
    assert cone.b == vector([0, 0, 0, 0])
    assert polyhedra.contains_origin(square)
    shifted = ConstraintPoly(matrix([[-1]]), vector([-1]), 1)
    assert not polyhedra.contains_origin(shifted)


def test_pick_value():
    assert polyhedra.pick_value(None, None) == 0
    assert polyhedra.pick_value(Fraction(2), None) == 3
    assert polyhedra.pick_value(Fraction(2), None, strict=False) == 2
    assert polyhedra.pick_value(Fraction(-3), Fraction(-1)) == -2
    assert polyhedra.pick_value(Fraction(1), Fraction(1)) == 1
    assert polyhedra.pick_value(Fraction(1, 3), Fraction(2, 3)) == Fraction(
        1, 2
    )


def test_relative_interior_point(square):
    assert polyhedra.relative_interior_point(square) == vector(
        ["1/2", "1/2"]
    )
    with pytest.raises(EmptyPolyhedronError):
        polyhedra.relative_interior_point(ConstraintPoly.empty(2))


def test_sweep_fix(square):
    fixed = polyhedra.sweep_fix(square.problem(), [0, 1], strict=False)
    outcome = lp.solve(fixed)
    assert isinstance(outcome, lp.Feasible)
    assert outcome.point == vector([0, 0])


def test_face(square):
    spec = polyhedra.face(square, vector([1, 0]), Fraction(1))
    assert not spec.empty
    assert spec.tight_rows == frozenset({0})
    edge = spec.polyhedron()
    assert edge.contains(vector([1, "1/2"]))
    assert not edge.contains(vector([0, 0]))
    assert polyhedra.face(square, vector([1, 0]), Fraction(2)).empty
    with pytest.raises(InvalidHyperplaneError):
        polyhedra.face(square, vector([1, 0]), Fraction(1, 2))


def _random_poly(rng: random.Random) -> ConstraintPoly:
    d = rng.randint(1, 4)
    rows = []
    rhs = []
    for _ in range(rng.randint(1, 6)):
        rows.append([rng.randint(-3, 3) for _ in range(d)])
        rhs.append(Fraction(rng.randint(-4, 4), rng.randint(1, 2)))
    if rng.random() < 0.2:
        rows.append([-x for x in rows[0]])
        rhs.append(-rhs[0])
    return ConstraintPoly(matrix(rows), vector(rhs), d)


def test_generators_round_trip():
    rng = random.Random(7)
    for _ in range(200):
        p = _random_poly(rng)
        gens = polyhedra.to_generators(p)
        assert gens.is_empty == p.is_empty()
        cone = polyhedra.recession_cone(p)
        for vertex in gens.vertices:
            assert p.contains(vertex)
        for ray in gens.rays:
            assert cone.contains(ray)
            assert ray == primitive(ray)
        assert list(gens.vertices) == sorted(gens.vertices)
        assert polyhedra.set_equal(polyhedra.to_constraints(gens), p)
