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
"""Lexicographic linear ranking functions.

A lexicographic function is built one component at a time. Each
component is a quasi ranking function (nonnegative, non-increasing) that
decreases on some transition; the next component only has to rank the
transitions the previous ones leave unchanged. The transitions left form
a face of every path polyhedron, so the construction walks down a chain
of faces until nothing is left or no component decreases.

Over the integers the construction runs on the integer hulls and every
component is scaled to integer coefficients, which makes each strict
decrease at least 1. Over the rationals the weak function found is
combined into a strong one with explicit decreases.
"""
import logging
from dataclasses import dataclass
from dataclasses import field
from enum import Enum
from fractions import Fraction
from itertools import combinations
from itertools import islice
from itertools import product
from math import ceil
from math import floor
from typing import Dict
from typing import List
from typing import Optional
from typing import Sequence
from typing import Tuple

from ...config import HullSettings
from ...monitoring import UtilsMonitoring
from ..exceptions import DimensionError
from ..exceptions import PreconditionError
from ..geometry import lp
from ..geometry.inthull import HullReport
from ..geometry.linalg import add
from ..geometry.linalg import AffineFunc
from ..geometry.linalg import independent_subset
from ..geometry.linalg import is_integral
from ..geometry.linalg import neg
from ..geometry.linalg import scale
from ..geometry.linalg import sub
from ..geometry.linalg import unit
from ..geometry.linalg import Vector
from ..geometry.linalg import vector
from ..geometry.linalg import ZERO
from ..geometry.linalg import zeros
from ..geometry.polyhedra import ConstraintPoly
from ..geometry.polyhedra import contains_origin
from ..geometry.polyhedra import face
from ..geometry.polyhedra import FaceSpec
from ..geometry.polyhedra import GeneratorRep
from ..geometry.polyhedra import to_generators
from .loopmodel import Domain
from .loopmodel import TransitionSystem
from .lrf import bounded_below
from .lrf import check_witness_members
from .lrf import LrfQuery
from .lrf import path_polyhedra
from .lrf import pick_function
from .lrf import ranking_space
from .lrf import VerdictKind
from .lrf import Witness
from .lrf import WitnessCheck
from .lrf import WitnessPath
from .lrf import WitnessReason

logger = logging.getLogger(__name__)

LexWitness = Witness


class LlrfKind(str, Enum):
    """Weak functions only decrease; strong ones decrease by delta_i."""

    WEAK = "weak"
    STRONG = "strong"

    @staticmethod
    def find_enum(name: str):
        """Find enum based on its value

        Args:
            name (str): enum value

        Raises:
            ValueError: Unknown value

        Returns:
            LlrfKind: Enum
        """
        for member in LlrfKind:
            if member.value == name.lower():
                return member
        raise ValueError(f"Unknown kind {name}")


@dataclass(frozen=True)
class QuasiSpace:
    """Quasi ranking functions of paths with their Farkas multipliers.

    The first n + 1 variables of `problem` are (lambda0, lambda).
    """

    problem: lp.LPProblem
    n: int

    @property
    def poly(self) -> ConstraintPoly:
        """The space as a polyhedron of rows ``<=``.

        :getter: Returns the expanded constraints of the problem
        :type: ConstraintPoly
        """
        a, b = self.problem.expanded()
        return ConstraintPoly(a, b, self.problem.d)


@dataclass(frozen=True)
class Llrf:
    """Tuple of affine components with their minimal decreases."""

    components: Tuple[AffineFunc, ...]
    deltas: Tuple[Fraction, ...]
    kind: LlrfKind = LlrfKind.STRONG
    domain: Domain = Domain.INTEGER

    def __post_init__(self):
        object.__setattr__(self, "components", tuple(self.components))
        object.__setattr__(self, "deltas", vector(self.deltas))
        if len(self.components) != len(self.deltas):
            raise DimensionError("one delta is needed per component")

    @property
    def d(self) -> int:
        """The number of components.

        :getter: Returns the dimension of the lexicographic function
        :type: int
        """
        return len(self.components)

    def format(self, names: Optional[Sequence[str]] = None) -> str:
        """Human readable form such as "<x1, x2 - 1>"."""
        return (
            "<"
            + ", ".join(rho.format(names) for rho in self.components)
            + ">"
        )

    def __str__(self) -> str:
        return self.format()


def _empty_face(d: int) -> FaceSpec:
    return FaceSpec(ConstraintPoly.empty(d), frozenset(), True)


@dataclass(frozen=True)
class RankingChain:
    """Faces of the paths met by the construction.

    ``levels[t][i]`` is the part of path i left to rank by component t:
    level 0 is the path itself, level t + 1 the face of level t where
    component t does not decrease.
    """

    levels: Tuple[Tuple[FaceSpec, ...], ...]

    @property
    def depth(self) -> int:
        """The number of levels.

        :getter: Returns the number of levels
        :type: int
        """
        return len(self.levels)

    def polyhedra(self, level: int) -> List[Optional[ConstraintPoly]]:
        """Faces of one level, None for the empty ones."""
        return [
            None if spec.empty else spec.polyhedron()
            for spec in self.levels[level]
        ]

    def reach(self, path: int) -> int:
        """Number of leading levels where the path is not empty."""
        count = 0
        for level in self.levels:
            if level[path].empty:
                break
            count += 1
        return count


@dataclass(frozen=True)
class LlrfSynResult:
    """Components found, or None, with the chain of faces."""

    components: Optional[Tuple[AffineFunc, ...]]
    chain: RankingChain

    @property
    def found(self) -> bool:
        """Whether the chain ends with empty faces.

        :getter: Returns True when a weak function was found
        :type: bool
        """
        return self.components is not None

    @property
    def failing(self) -> List[Optional[ConstraintPoly]]:
        """Faces with no decreasing quasi ranking function.

        :getter: Returns the last level of the chain
        :type: List[Optional[ConstraintPoly]]
        """
        return self.chain.polyhedra(self.chain.depth - 1)


@dataclass(frozen=True)
class LlrfVerdict:
    """Result of a lexicographic synthesis."""

    kind: VerdictKind
    llrf: Optional[Llrf] = None
    weak: Tuple[AffineFunc, ...] = ()
    witness: Optional[LexWitness] = None
    hulls: Tuple[Optional[HullReport], ...] = field(default=())
    chain: Optional[RankingChain] = None

    @property
    def found(self) -> bool:
        """Whether a function is reported.

        :getter: Returns True for found and vacuous verdicts
        :type: bool
        """
        return self.kind in (VerdictKind.FOUND, VerdictKind.VACUOUS)


@dataclass(frozen=True)
class IterationBound:
    """Bound on the iterations of a loop from a start state."""

    value: int
    terms: Tuple[int, ...]
    negative_component: Optional[int]
    literal_differs: bool


def quasi_space(polys: Sequence[ConstraintPoly], n: int) -> QuasiSpace:
    """Space of functions nonnegative and non-increasing on every path."""
    return QuasiSpace(ranking_space(polys, n, decrease=ZERO), n)


def _decreases_somewhere(poly: ConstraintPoly, rho: AffineFunc) -> bool:
    outcome = poly.maximum(rho.delta_row())
    if isinstance(outcome, lp.Unbounded):
        return True
    if isinstance(outcome, lp.Optimal):
        return outcome.value > 0
    return False


def find_nontrivial_quasi_lrf(
    polys: Sequence[ConstraintPoly], n: int
) -> Optional[AffineFunc]:
    """Quasi ranking function decreasing on as many transitions as possible.

    lambda is taken in the relative interior of the projection of the
    space, so no other quasi ranking function decreases on a transition
    this one leaves unchanged.

    Returns:
        Optional[AffineFunc]: None when every quasi ranking function is
        constant along the transitions
    """
    rho = pick_function(quasi_space(polys, n).problem, n, strict=True)
    if rho is None:
        return None
    if any(_decreases_somewhere(poly, rho) for poly in polys):
        return rho
    return None


def _next_face(poly: Optional[ConstraintPoly], rho: AffineFunc, d: int):
    if poly is None:
        return _empty_face(d)
    return face(poly, neg(rho.delta_row()), ZERO)


def check_components(components: Sequence[AffineFunc], n: int):
    """At most n components with independent coefficient vectors."""
    if len(components) > n:
        raise PreconditionError(
            f"{len(components)} components for {n} variables"
        )
    coeffs = [rho.coeffs for rho in components]
    if len(independent_subset(coeffs)) != len(coeffs):
        raise PreconditionError("components are linearly dependent")


@UtilsMonitoring.time_spend(level=logging.DEBUG)
def llrf_syn(
    polys: Sequence[Optional[ConstraintPoly]], n: int
) -> LlrfSynResult:
    """Weak lexicographic function of the paths.

    Args:
        polys (Sequence[Optional[ConstraintPoly]]): path polyhedra over
            2n variables, None for paths without transition
        n (int): number of variables

    Returns:
        LlrfSynResult: the components and the chain of faces; without
        components the last level of the chain holds the faces where
        nothing decreases

    Raises:
        PreconditionError: more than n components, or components with
        linearly dependent coefficients
    """
    d = 2 * n
    current: List[Optional[ConstraintPoly]] = list(polys)
    levels = [
        tuple(
            _empty_face(d) if p is None else FaceSpec(p, frozenset())
            for p in current
        )
    ]
    components: List[AffineFunc] = []
    while True:
        active = [p for p in current if p is not None]
        chain = RankingChain(tuple(levels))
        if not active:
            logger.debug("chain closed after %d components", len(components))
            check_components(components, n)
            return LlrfSynResult(tuple(components), chain)
        if len(components) > n:
            raise PreconditionError("more than n components")
        rho = find_nontrivial_quasi_lrf(active, n)
        if rho is None:
            logger.debug(
                "no decreasing quasi ranking function at level %d",
                len(components),
            )
            return LlrfSynResult(None, chain)
        logger.trace(  # type: ignore # pylint: disable=no-member
            "component %d: %s", len(components), rho
        )
        components.append(rho)
        faces = tuple(_next_face(p, rho, d) for p in current)
        levels.append(faces)
        current = [None if spec.empty else spec.polyhedron() for spec in faces]


def _guarded(ts: TransitionSystem) -> Optional[LlrfVerdict]:
    active = ts.nonempty()
    if not active:
        logger.info("no path has a transition: vacuous")
        return LlrfVerdict(VerdictKind.VACUOUS, Llrf((), ()))
    if any(contains_origin(ts.polys[i]) for i in active):
        logger.info("a path loops on the origin: nonterminating")
        return LlrfVerdict(VerdictKind.NONTERMINATING)
    return None


@UtilsMonitoring.time_spend(level=logging.DEBUG)
def llrf_int(
    ts: TransitionSystem,
    settings: Optional[HullSettings] = None,
    witness_wanted: bool = False,
) -> LlrfVerdict:
    """Lexicographic ranking function of a loop over the integers.

    Components found on the integer hulls are scaled to integer
    coefficients; each of them then decreases by at least 1.
    """
    early = _guarded(ts)
    if early is not None:
        return early
    polys, reports = path_polyhedra(ts, Domain.INTEGER, settings)
    hulls = tuple(reports)
    if all(poly is None for poly in polys):
        logger.info("no path has an integer transition: vacuous")
        return LlrfVerdict(
            VerdictKind.VACUOUS, Llrf((), ()), hulls=hulls
        )
    result = llrf_syn(polys, ts.n)
    if result.components is not None:
        components = tuple(
            rho.integer_scale()[0] for rho in result.components
        )
        llrf = Llrf(
            components,
            (Fraction(1),) * len(components),
            LlrfKind.STRONG,
            Domain.INTEGER,
        )
        logger.info("lexicographic ranking function %s", llrf.format(ts.names))
        return LlrfVerdict(
            VerdictKind.FOUND,
            llrf,
            result.components,
            hulls=hulls,
            chain=result.chain,
        )
    if not all(report is None or report.exact for report in reports):
        logger.warning("no lexicographic function modulo inexact hulls")
        return LlrfVerdict(
            VerdictKind.NONE_MODULO_HULL, hulls=hulls, chain=result.chain
        )
    logger.info("no lexicographic linear ranking function")
    witness = None
    if witness_wanted:
        witness = extract_lex_witness(result.failing, ts.n)
    return LlrfVerdict(
        VerdictKind.NONE, witness=witness, hulls=hulls, chain=result.chain
    )


@UtilsMonitoring.time_spend(level=logging.DEBUG)
def llrf_rat(ts: TransitionSystem) -> LlrfVerdict:
    """Lexicographic ranking function of a loop over the rationals.

    The weak function of :func:`llrf_syn` is returned in `weak`; the
    strong one of :func:`weak_to_strong` in `llrf`.
    """
    early = _guarded(ts)
    if early is not None:
        return early
    polys, _ = path_polyhedra(ts, Domain.RATIONAL)
    result = llrf_syn(polys, ts.n)
    if result.components is None:
        logger.info("no lexicographic linear ranking function")
        return LlrfVerdict(VerdictKind.NONE, chain=result.chain)
    llrf = weak_to_strong(result.components, result.chain, polys)
    logger.info("lexicographic ranking function %s", llrf.format(ts.names))
    return LlrfVerdict(
        VerdictKind.FOUND, llrf, result.components, chain=result.chain
    )


def synth_llrf(
    query: LrfQuery, settings: Optional[HullSettings] = None
) -> LlrfVerdict:
    """Lexicographic ranking function over the domain of the query."""
    if query.domain == Domain.INTEGER:
        return llrf_int(query.ts, settings, query.witness_wanted)
    return llrf_rat(query.ts)


def _combination_factor(
    poly: ConstraintPoly, a: Vector, b: Vector
) -> Fraction:
    """Least xi >= 0 with (a + xi b)(x - x') >= 0 on the polyhedron.

    Farkas multipliers mu >= 0 of the rows give -mu A + xi (-b, b) =
    (a, -a) and mu . c <= 0.
    """
    m = poly.m
    dim = m + 1
    target = a + neg(a)
    direction = neg(b) + b
    eq_rows = [
        tuple(-row[col] for row in poly.a) + (direction[col],)
        for col in range(poly.d)
    ]
    problem = lp.LPProblem(
        (poly.b + (ZERO,),),
        (ZERO,),
        unit(dim, m),
        lp.Sense.MIN,
        eq_rows,
        target,
        frozenset(range(dim)),
        dim,
    )
    outcome = lp.solve(problem)
    if not isinstance(outcome, lp.Optimal):
        raise PreconditionError("components cannot be combined on a path")
    return outcome.value


def _combine(
    components: Sequence[AffineFunc],
    chain: RankingChain,
    polys: Sequence[Optional[ConstraintPoly]],
) -> List[AffineFunc]:
    """f_1 = rho_1 and f_t = rho_t + (xi_t + 1) f_(t-1), non-increasing."""
    combined = [components[0]]
    for t in range(1, len(components)):
        xi = ZERO
        for number, spec in enumerate(chain.levels[t]):
            poly = polys[number]
            if spec.empty or poly is None:
                continue
            xi = max(
                xi,
                _combination_factor(
                    poly, components[t].coeffs, combined[-1].coeffs
                ),
            )
        logger.trace(  # type: ignore # pylint: disable=no-member
            "component %d combined with factor %s", t, xi
        )
        combined.append(components[t].plus(combined[-1].scaled(xi + 1)))
    return combined


def _piece(
    level: ConstraintPoly,
    combined: Sequence[AffineFunc],
    deltas: Dict[int, Fraction],
    i: int,
    upto: int,
    above: Optional[int],
) -> ConstraintPoly:
    """Transitions of a level with small decreases of the later functions.

    Levels and functions are counted from 1. Rows: (f_j(x) - f_j(x')) <=
    i delta_j for i < j < upto, and f_above(x) <= -(above - i).
    """
    n = combined[0].n
    rows: List[Vector] = []
    rhs: List[Fraction] = []
    for j in range(i + 1, upto):
        rows.append(combined[j - 1].delta_row())
        rhs.append(i * deltas[j])
    if above is not None:
        f_above = combined[above - 1]
        rows.append(f_above.coeffs + zeros(n))
        rhs.append(-f_above.lambda0 - (above - i))
    return level.add_rows(rows, rhs)


def _least_decrease(poly: ConstraintPoly, f: AffineFunc) -> Fraction:
    outcome = poly.minimum(f.delta_row())
    if not isinstance(outcome, lp.Optimal) or outcome.value <= 0:
        raise PreconditionError("a combined component does not decrease")
    return outcome.value


def _path_deltas(
    chain: RankingChain, combined: Sequence[AffineFunc], number: int
) -> Dict[int, Fraction]:
    """Decreases delta_1..delta_r of one path reaching r levels."""
    reach = chain.reach(number)
    levels = {
        i: chain.levels[i - 1][number].polyhedron()
        for i in range(1, reach + 1)
    }
    deltas: Dict[int, Fraction] = {
        reach: _least_decrease(levels[reach], combined[reach - 1]) / reach
    }
    for i in range(reach - 1, 0, -1):
        pieces = [_piece(levels[i], combined, deltas, i, reach + 1, None)]
        pieces += [
            _piece(levels[i], combined, deltas, i, above, above)
            for above in range(i + 1, reach + 1)
        ]
        least: Optional[Fraction] = None
        for piece in pieces:
            if piece.is_empty():
                continue
            value = _least_decrease(piece, combined[i - 1])
            least = value if least is None else min(least, value)
        deltas[i] = deltas[i + 1] if least is None else least / i
    return deltas


@UtilsMonitoring.time_spend(level=logging.DEBUG)
def weak_to_strong(
    components: Sequence[AffineFunc],
    chain: RankingChain,
    polys: Sequence[Optional[ConstraintPoly]],
) -> Llrf:
    """Strong lexicographic function over the rationals from a weak one.

    Components are first combined so that every one is non-increasing on
    all paths. Then component i is shifted by i - 1 and delta_i is the
    least decrease it makes, divided by i, on the transitions it has to
    rank.

    Args:
        components (Sequence[AffineFunc]): weak function of
            :func:`llrf_syn`
        chain (RankingChain): its chain of faces
        polys (Sequence[Optional[ConstraintPoly]]): the path polyhedra

    Raises:
        PreconditionError: the components are not a weak function of the
            chain
    """
    if not components:
        return Llrf((), (), LlrfKind.STRONG, Domain.RATIONAL)
    combined = _combine(components, chain, polys)
    per_path = [
        _path_deltas(chain, combined, number)
        for number, poly in enumerate(polys)
        if poly is not None
    ]
    deltas = []
    for i in range(1, len(combined) + 1):
        values = [found[i] for found in per_path if i in found]
        if not values:
            raise PreconditionError(f"no path reaches level {i}")
        deltas.append(min(values))
    shifted = tuple(f.shifted(i) for i, f in enumerate(combined))
    return Llrf(shifted, tuple(deltas), LlrfKind.STRONG, Domain.RATIONAL)


def normalize_llrf(llrf: Llrf) -> Tuple[Fraction, Llrf]:
    """Scales a strong function so that every decrease exceeds 1.

    Returns:
        Tuple[Fraction, Llrf]: the factor ceil(1 / min delta) + 1 and the
        scaled function
    """
    if not llrf.deltas:
        return Fraction(1), llrf
    factor = Fraction(ceil(1 / min(llrf.deltas)) + 1)
    return factor, Llrf(
        tuple(rho.scaled(factor) for rho in llrf.components),
        tuple(factor * delta for delta in llrf.deltas),
        llrf.kind,
        llrf.domain,
    )


def is_ranked(llrf: Llrf, xpp: Sequence[Fraction]) -> Optional[int]:
    """Index of the component ranking a transition, None if none does.

    Component i ranks x'' = (x, x') when components 0..i are nonnegative
    at x, components before i do not increase and component i decreases
    by at least its delta.
    """
    xpp = vector(xpp)
    for index, (rho, delta) in enumerate(zip(llrf.components, llrf.deltas)):
        if rho.evaluate(xpp[: rho.n]) < 0:
            return None
        change = rho.delta(xpp)
        if change >= delta:
            return index
        if change < 0:
            return None
    return None


def _near_integers(point: Vector, limit: int) -> List[Vector]:
    choices = [sorted({floor(x), ceil(x)}) for x in point]
    return [vector(c) for c in islice(product(*choices), limit)]


def sample_transitions(
    polys: Sequence[Optional[ConstraintPoly]], per_path: int = 64
) -> List[Vector]:
    """Transitions of each path built from its generators.

    Vertices, vertices moved along rays, midpoints of vertices and
    integer points around vertices are kept when they lie in the path.
    """
    samples: List[Vector] = []
    for poly in polys:
        if poly is None:
            continue
        gens = to_generators(poly)
        candidates = list(gens.vertices)
        for vertex in gens.vertices:
            for ray in gens.rays:
                candidates += [add(vertex, scale(t, ray)) for t in (1, 3, 10)]
        for v, w in combinations(gens.vertices, 2):
            candidates.append(scale(Fraction(1, 2), add(v, w)))
        for vertex in gens.vertices:
            candidates += _near_integers(vertex, 16)
        kept: List[Vector] = []
        for point in candidates:
            if point not in kept and poly.contains(point):
                kept.append(point)
            if len(kept) == per_path:
                break
        samples += kept
    return samples


def verify_strong_llrf(
    llrf: Llrf,
    ts: TransitionSystem,
    settings: Optional[HullSettings] = None,
    per_path: int = 64,
) -> bool:
    """Checks that every sampled transition is ranked by some component.

    Over the integers only integer samples of the hulls are checked.
    """
    polys, _ = path_polyhedra(ts, llrf.domain, settings)
    for xpp in sample_transitions(polys, per_path):
        if llrf.domain == Domain.INTEGER and not is_integral(xpp):
            continue
        if is_ranked(llrf, xpp) is None:
            logger.debug("transition %s is not ranked", xpp)
            return False
    return True


def verify_weak_llrf(
    components: Sequence[AffineFunc],
    ts: TransitionSystem,
    domain: Domain = Domain.RATIONAL,
    settings: Optional[HullSettings] = None,
) -> bool:
    """Checks a weak lexicographic function by LP along its chain of faces.

    Each component must be nonnegative and non-increasing on what is left
    of every path; what it leaves unchanged is passed to the next one and
    nothing may remain at the end.

    Raises:
        DimensionError: a component does not have n variables
    """
    polys, _ = path_polyhedra(ts, domain, settings)
    current = [poly for poly in polys if poly is not None]
    for rho in components:
        if rho.n != ts.n:
            raise DimensionError(
                f"component over {rho.n} variables, loop over {ts.n}"
            )
        value_row = rho.coeffs + zeros(ts.n)
        remaining = []
        for poly in current:
            if not bounded_below(poly, value_row, -rho.lambda0):
                return False
            if not bounded_below(poly, rho.delta_row(), ZERO):
                return False
            spec = face(poly, neg(rho.delta_row()), ZERO)
            if not spec.empty:
                remaining.append(spec.polyhedron())
        current = remaining
    return not current


def _lex_witness_system(
    gens: Sequence[Optional[GeneratorRep]], n: int, independent: bool
) -> Tuple[
    List[Vector],
    List[Fraction],
    List[Optional[Tuple[int, str, int]]],
    List[Tuple[int, str, int]],
]:
    """Rows over (lambda0, lambda) of a decreasing quasi ranking function.

    Per point x'': lambda . x + lambda0 >= 0 and lambda . (x - x') >= 0.
    Per ray y'': lambda . y >= 0 and lambda . (y - y') >= 0. A last row
    asks lambda . (z - z') summed over generators z to be at least 1;
    with `independent` the sum runs over a maximal linearly independent
    subset, which defines the same set.

    Returns:
        rows, right-hand sides, generator behind each row (None for the
        last one) and the generators of the sum
    """
    rows: List[Vector] = []
    rhs: List[Fraction] = []
    origin: List[Optional[Tuple[int, str, int]]] = []
    members: List[Tuple[int, str, int]] = []
    vectors: List[Vector] = []
    for number, gen in enumerate(gens):
        if gen is None:
            continue
        for kind, items in (("point", gen.vertices), ("ray", gen.rays)):
            for index, item in enumerate(items):
                head, tail = item[:n], item[n:]
                lead = Fraction(-1) if kind == "point" else ZERO
                rows.append((lead,) + neg(head))
                rows.append((ZERO,) + neg(sub(head, tail)))
                rhs += [ZERO, ZERO]
                origin += [(number, kind, index)] * 2
                members.append((number, kind, index))
                vectors.append(item)
    chosen = (
        independent_subset(vectors) if independent else range(len(vectors))
    )
    total = zeros(n)
    for i in chosen:
        total = add(total, sub(vectors[i][:n], vectors[i][n:]))
    rows.append((ZERO,) + neg(total))
    rhs.append(Fraction(-1))
    origin.append(None)
    return rows, rhs, origin, [members[i] for i in chosen]


@UtilsMonitoring.time_spend(level=logging.DEBUG)
def extract_lex_witness(
    failing: Sequence[Optional[ConstraintPoly]], n: int
) -> LexWitness:
    """Witness that no lexicographic function exists over the integers.

    Args:
        failing (Sequence[Optional[ConstraintPoly]]): the integral faces
            where no quasi ranking function decreases, None when empty
        n (int): number of variables

    Raises:
        FeasibleInputError: some quasi ranking function decreases
    """
    gens = [None if p is None else to_generators(p) for p in failing]
    rows, rhs, origin, members = _lex_witness_system(gens, n, independent=True)
    chosen = set(members)
    for i in lp.iis(rows, rhs, n + 1):
        if origin[i] is not None:
            chosen.add(origin[i])  # type: ignore
    paths = []
    for number, gen in enumerate(gens):
        if gen is None:
            paths.append(WitnessPath())
            continue
        mine = [(k, i) for p, k, i in chosen if p == number]
        points = sorted(i for k, i in mine if k == "point")
        rays = sorted(i for k, i in mine if k == "ray")
        if rays and not points:
            points = [0]
        paths.append(
            WitnessPath(
                tuple(gen.vertices[i] for i in points),
                tuple(gen.rays[i] for i in rays),
            )
        )
    witness = Witness(tuple(paths))
    logger.debug("lexicographic witness of size %d", witness.size)
    return witness


def verify_lex_witness(w: LexWitness, ts: TransitionSystem) -> WitnessCheck:
    """Checks a witness that no lexicographic function exists over Z.

    Besides the point and ray checks of a linear witness, no
    nonnegative, non-increasing function of the points and rays may
    decrease on any of them.
    """
    failed = check_witness_members(w, ts)
    if failed is not None:
        return failed
    size = 2 * ts.n
    gens = [
        GeneratorRep(path.points, path.rays, size) if path.points else None
        for path in w.paths
    ]
    rows, rhs, _, _ = _lex_witness_system(gens, ts.n, independent=False)
    if lp.is_feasible(rows, rhs, ts.n + 1):
        return WitnessCheck(False, WitnessReason.SYSTEM_FEASIBLE)
    return WitnessCheck(True, WitnessReason.OK)


def iteration_bound(llrf: Llrf, x0: Sequence[Fraction]) -> IterationBound:
    """Bound on the iterations of the loop started at x0.

    With j the first component negative at x0, the bound is the sum over
    i < j of floor(rho_i(x0) / delta_i) + 1. When no component is
    negative the sum runs over all of them and `literal_differs` is set.

    Raises:
        PreconditionError: the function is not strong
        DimensionError: x0 does not have n entries
    """
    if llrf.kind != LlrfKind.STRONG:
        raise PreconditionError("an iteration bound needs a strong function")
    x0 = vector(x0)
    values = [rho.evaluate(x0) for rho in llrf.components]
    negative = next((i for i, v in enumerate(values) if v < 0), None)
    upto = len(values) if negative is None else negative
    terms = tuple(
        floor(values[i] / llrf.deltas[i]) + 1 for i in range(upto)
    )
    return IterationBound(sum(terms), terms, negative, negative is None)
