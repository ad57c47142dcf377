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
"""Linear ranking functions of single and multipath loops.

Over the rationals, a linear ranking function rho(x) = lambda . x + lambda0
exists iff a linear system over Farkas multipliers is feasible. Over the
integers the same system is solved on the integer hulls of the paths, or
directly on their generators. When no function exists over the integers,
a small set of transitions and rays proves it.
"""
import logging
from dataclasses import dataclass
from dataclasses import field
from enum import Enum
from fractions import Fraction
from typing import List
from typing import Optional
from typing import Sequence
from typing import Tuple

from ...config import analysis_config
from ...config import HullSettings
from ...monitoring import UtilsMonitoring
from ..exceptions import PreconditionError
from ..geometry import lp
from ..geometry.inthull import HullReport
from ..geometry.inthull import integer_hull
from ..geometry.linalg import AffineFunc
from ..geometry.linalg import is_integral
from ..geometry.linalg import neg
from ..geometry.linalg import sub
from ..geometry.linalg import Vector
from ..geometry.linalg import vector
from ..geometry.linalg import ZERO
from ..geometry.polyhedra import ConstraintPoly
from ..geometry.polyhedra import contains_origin
from ..geometry.polyhedra import GeneratorRep
from ..geometry.polyhedra import sweep_fix
from ..geometry.polyhedra import to_generators
from .loopmodel import Domain
from .loopmodel import TransitionSystem

logger = logging.getLogger(__name__)


class VerdictKind(str, Enum):
    """Outcome of a synthesis."""

    FOUND = "found"
    NONE = "none"
    NONE_MODULO_HULL = "none_modulo_hull"
    NONTERMINATING = "nonterminating"
    VACUOUS = "vacuous"

    @staticmethod
    def find_enum(name: str):
        """Find enum based on its value

        Args:
            name (str): enum value

        Raises:
            ValueError: Unknown value

        Returns:
            VerdictKind: Enum
        """
        for member in VerdictKind:
            if member.value == name.lower():
                return member
        raise ValueError(f"Unknown verdict {name}")


class Engine(str, Enum):
    """Linear synthesis engine."""

    EQ29 = "eq29"
    GENERATORS = "generators"

    @staticmethod
    def find_enum(name: str):
        """Find enum based on its value; "constraints" names EQ29

        Args:
            name (str): "eq29", "constraints" or "generators"

        Raises:
            ValueError: Unknown engine

        Returns:
            Engine: Enum
        """
        key = name.lower()
        if key == "constraints":
            return Engine.EQ29
        for member in Engine:
            if member.value == key:
                return member
        raise ValueError(f"Unknown engine {name}")


class WitnessReason(str, Enum):
    """Result of a witness check."""

    OK = "ok"
    DIMENSION_MISMATCH = "dimension_mismatch"
    NOT_INTEGRAL = "not_integral"
    POINT_NOT_IN_PATH = "point_not_in_path"
    RAY_NOT_IN_RECESSION_CONE = "ray_not_in_recession_cone"
    RAY_WITHOUT_POINT = "ray_without_point"
    SYSTEM_FEASIBLE = "system_feasible"


@dataclass(frozen=True)
class WitnessPath:
    """Integer transitions and rays of one path."""

    points: Tuple[Vector, ...] = ()
    rays: Tuple[Vector, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "points", tuple(map(vector, self.points)))
        object.__setattr__(self, "rays", tuple(map(vector, self.rays)))


@dataclass(frozen=True)
class Witness:
    """Per path sets X_i and Y_i proving that no ranking function exists."""

    paths: Tuple[WitnessPath, ...]

    @property
    def size(self) -> int:
        """Total number of points and rays.

        :getter: Returns the sum of |X_i| + |Y_i|
        :type: int
        """
        return sum(len(p.points) + len(p.rays) for p in self.paths)


@dataclass(frozen=True)
class WitnessCheck:
    """Outcome of :func:`verify_lrf_witness`."""

    valid: bool
    reason: WitnessReason
    path: Optional[int] = None


@dataclass(frozen=True)
class LrfQuery:
    """What to synthesize."""

    ts: TransitionSystem
    domain: Domain = Domain.INTEGER
    witness_wanted: bool = False


@dataclass(frozen=True)
class LrfVerdict:
    """Result of a linear ranking function synthesis."""

    kind: VerdictKind
    rho: Optional[AffineFunc] = None
    witness: Optional[Witness] = None
    hulls: Tuple[Optional[HullReport], ...] = field(default=())

    @property
    def found(self) -> bool:
        """Whether a function is reported.

        :getter: Returns True for found and vacuous verdicts
        :type: bool
        """
        return self.kind in (VerdictKind.FOUND, VerdictKind.VACUOUS)


def _blocks(q: ConstraintPoly, n: int) -> Tuple[List[Vector], List[Vector]]:
    """Column blocks A (x part) and A' (x' part) of the rows."""
    return [row[:n] for row in q.a], [row[n:] for row in q.a]


def _column(rows: Sequence[Vector], j: int) -> Vector:
    return tuple(row[j] for row in rows)


def pr_system(q: ConstraintPoly, n: int) -> lp.LPProblem:
    """Farkas system of one path over (mu, eta), both nonnegative.

    mu A' = 0, (mu - eta) A = 0, eta (A + A') = 0 and eta . c <= -1. It
    is feasible iff the path has a linear ranking function over the
    rationals.
    """
    m = q.m
    block_a, block_p = _blocks(q, n)
    eq_rows: List[Vector] = []
    for j in range(n):
        eq_rows.append(_column(block_p, j) + (ZERO,) * m)
    for j in range(n):
        column = _column(block_a, j)
        eq_rows.append(column + neg(column))
    for j in range(n):
        both = zip(_column(block_a, j), _column(block_p, j))
        eq_rows.append((ZERO,) * m + tuple(a + b for a, b in both))
    return lp.LPProblem(
        ((ZERO,) * m + q.b,),
        (Fraction(-1),),
        eq_a=tuple(eq_rows),
        eq_b=(ZERO,) * len(eq_rows),
        nonneg=frozenset(range(2 * m)),
        dim=2 * m,
    )


def _sparse_row(dim: int, pairs) -> Vector:
    entries = [ZERO] * dim
    for index, value in pairs:
        entries[index] += value
    return tuple(entries)


def ranking_space(
    polys: Sequence[ConstraintPoly], n: int, decrease: Fraction = Fraction(1)
) -> lp.LPProblem:
    """Shared (lambda0, lambda) of all paths with their Farkas multipliers.

    The variables are lambda0, lambda_1..lambda_n, then mu_i and eta_i of
    every path. For each path the system of :func:`pr_system` is stated
    with eta . c <= -decrease, lambda = eta A' and mu . c <= lambda0. With
    decrease 1 the projection on (lambda0, lambda) is the set of linear
    ranking functions; with 0 it is the set of quasi ranking functions
    (nonnegative and non-increasing).
    """
    dim = 1 + n + sum(2 * q.m for q in polys)
    rows: List[Vector] = []
    rhs: List[Fraction] = []
    eq_rows: List[Vector] = []
    nonneg = set()
    start = 1 + n
    for q in polys:
        m = q.m
        mu = list(range(start, start + m))
        eta = list(range(start + m, start + 2 * m))
        nonneg.update(mu + eta)
        block_a, block_p = _blocks(q, n)
        for j in range(n):
            column_a = _column(block_a, j)
            column_p = _column(block_p, j)
            eq_rows.append(_sparse_row(dim, zip(mu, column_p)))
            eq_rows.append(
                _sparse_row(
                    dim,
                    list(zip(mu, column_a)) + list(zip(eta, neg(column_a))),
                )
            )
            eq_rows.append(
                _sparse_row(
                    dim, list(zip(eta, column_a)) + list(zip(eta, column_p))
                )
            )
            eq_rows.append(
                _sparse_row(
                    dim,
                    [(1 + j, Fraction(1))] + list(zip(eta, neg(column_p))),
                )
            )
        rows.append(_sparse_row(dim, zip(eta, q.b)))
        rhs.append(-decrease)
        rows.append(
            _sparse_row(dim, list(zip(mu, q.b)) + [(0, Fraction(-1))])
        )
        rhs.append(ZERO)
        start += 2 * m
    return lp.LPProblem(
        tuple(rows),
        tuple(rhs),
        eq_a=tuple(eq_rows),
        eq_b=(ZERO,) * len(eq_rows),
        nonneg=frozenset(nonneg),
        dim=dim,
    )


def pick_function(
    problem: lp.LPProblem, n: int, strict: bool
) -> Optional[AffineFunc]:
    """Small function of the space: lambda swept, then lambda0 minimized."""
    if isinstance(lp.solve(problem), lp.Infeasible):
        return None
    fixed = sweep_fix(problem, range(1, n + 1), strict=strict)
    objective = (Fraction(1),) + (ZERO,) * (problem.d - 1)
    outcome = lp.solve(fixed.with_objective(objective, lp.Sense.MIN))
    if not isinstance(outcome, lp.Optimal):
        return None
    point = outcome.point
    return AffineFunc(point[0], point[1:n + 1])


def _witness_system(
    gens: Sequence[Optional[GeneratorRep]], n: int
) -> Tuple[List[Vector], List[Fraction], List[Tuple[int, str, int]]]:
    """Rows over (lambda0, lambda) with the generator behind each row.

    Per vertex x'' = (x, x'): lambda . x + lambda0 >= 0 and
    lambda . (x - x') >= 1. Per ray y'' = (y, y'): lambda . y >= 0 and
    lambda . (y - y') >= 0.
    """
    rows: List[Vector] = []
    rhs: List[Fraction] = []
    origin: List[Tuple[int, str, int]] = []
    for number, gen in enumerate(gens):
        if gen is None:
            continue
        for index, point in enumerate(gen.vertices):
            x, xp = point[:n], point[n:]
            rows.append((Fraction(-1),) + neg(x))
            rhs.append(ZERO)
            origin.append((number, "point", index))
            rows.append((ZERO,) + neg(sub(x, xp)))
            rhs.append(Fraction(-1))
            origin.append((number, "point", index))
        for index, ray in enumerate(gen.rays):
            y, yp = ray[:n], ray[n:]
            rows.append((ZERO,) + neg(y))
            rhs.append(ZERO)
            origin.append((number, "ray", index))
            rows.append((ZERO,) + neg(sub(y, yp)))
            rhs.append(ZERO)
            origin.append((number, "ray", index))
    return rows, rhs, origin


@UtilsMonitoring.time_spend(level=logging.DEBUG)
def synth_lrf_generators(
    gens: Sequence[Optional[GeneratorRep]], n: Optional[int] = None
) -> LrfVerdict:
    """Linear ranking function from the generators of the paths.

    Empty generator representations and None entries stand for paths
    without transition.

    Raises:
        PreconditionError: no generator representation is given
    """
    if not gens:
        raise PreconditionError("no generator representation")
    if n is None:
        n = next(g.d for g in gens if g is not None) // 2
    rows, rhs, _ = _witness_system(gens, n)
    problem = lp.LPProblem(rows, rhs, dim=n + 1)
    rho = pick_function(problem, n, strict=False)
    if rho is None:
        return LrfVerdict(VerdictKind.NONE)
    return LrfVerdict(VerdictKind.FOUND, rho)


def _hulls(
    ts: TransitionSystem, settings: Optional[HullSettings]
) -> Tuple[List[Optional[ConstraintPoly]], List[Optional[HullReport]]]:
    polys: List[Optional[ConstraintPoly]] = []
    reports: List[Optional[HullReport]] = []
    for number, poly in enumerate(ts.polys):
        if ts.empty[number]:
            polys.append(None)
            reports.append(None)
            continue
        hull, report = integer_hull(poly, settings)
        logger.debug(
            "path %d: hull with %d rows, exact=%s",
            number,
            hull.m,
            report.exact,
        )
        polys.append(None if hull.is_empty() else hull)
        reports.append(report)
    return polys, reports


def path_polyhedra(
    ts: TransitionSystem,
    domain: Domain,
    settings: Optional[HullSettings] = None,
) -> Tuple[List[Optional[ConstraintPoly]], List[Optional[HullReport]]]:
    """Polyhedra to rank: Q_i over the rationals, I(Q_i) over the integers.

    Paths without transitions in the domain are None.
    """
    if domain == Domain.INTEGER:
        return _hulls(ts, settings)
    polys: List[Optional[ConstraintPoly]] = [
        None if ts.empty[i] else poly for i, poly in enumerate(ts.polys)
    ]
    return polys, [None] * ts.k


@UtilsMonitoring.time_spend(level=logging.DEBUG)
def synth_lrf(
    query: LrfQuery,
    settings: Optional[HullSettings] = None,
    engine: Optional[str] = None,
) -> LrfVerdict:
    """Linear ranking function of a loop.

    Args:
        query (LrfQuery): the loop, the domain and whether a witness of
            nonexistence is wanted
        settings (Optional[HullSettings]): integer hull options
        engine (Optional[str]): "eq29" (alias "constraints") or "generators"

    Returns:
        LrfVerdict: found, none, none_modulo_hull, nonterminating or
        vacuous
    """
    engine = Engine.find_enum(engine or analysis_config.engine)
    ts = query.ts
    active = ts.nonempty()
    if not active:
        logger.info("no path has a transition: vacuous")
        return LrfVerdict(VerdictKind.VACUOUS, AffineFunc.zero(ts.n))
    if any(contains_origin(ts.polys[i]) for i in active):
        logger.info("a path loops on the origin: nonterminating")
        return LrfVerdict(VerdictKind.NONTERMINATING)
    polys, reports = path_polyhedra(ts, query.domain, settings)
    hulls = tuple(reports)
    kept = [poly for poly in polys if poly is not None]
    if not kept:
        logger.info("no path has an integer transition: vacuous")
        return LrfVerdict(
            VerdictKind.VACUOUS, AffineFunc.zero(ts.n), hulls=hulls
        )
    if engine == Engine.GENERATORS:
        gens = [None if p is None else to_generators(p) for p in polys]
        rho = synth_lrf_generators(gens, ts.n).rho
    else:
        rho = pick_function(ranking_space(kept, ts.n), ts.n, strict=False)
    if rho is not None:
        logger.info("linear ranking function %s", rho.format(ts.names))
        return LrfVerdict(VerdictKind.FOUND, rho, hulls=hulls)
    exact = all(report is None or report.exact for report in reports)
    if not exact:
        logger.warning("no linear ranking function modulo inexact hulls")
        return LrfVerdict(VerdictKind.NONE_MODULO_HULL, hulls=hulls)
    logger.info("no linear ranking function")
    witness = None
    if query.witness_wanted and query.domain == Domain.INTEGER:
        witness = _witness_of(polys, ts)
    return LrfVerdict(VerdictKind.NONE, witness=witness, hulls=hulls)


def _witness_of(
    polys: Sequence[Optional[ConstraintPoly]], ts: TransitionSystem
) -> Witness:
    gens = [None if p is None else to_generators(p) for p in polys]
    return witness_from_generators(gens, ts.n, ts.k)


def witness_from_generators(
    gens: Sequence[Optional[GeneratorRep]], n: int, k: Optional[int] = None
) -> Witness:
    """Witness from the generators of the integer hulls.

    An irreducible infeasible subsystem of the generator system selects
    the points and rays; a path left with rays only gets one of its
    vertices back.

    Raises:
        FeasibleInputError: a linear ranking function exists
    """
    rows, rhs, origin = _witness_system(gens, n)
    chosen = lp.iis(rows, rhs, n + 1)
    k = len(gens) if k is None else k
    points: List[List[int]] = [[] for _ in range(k)]
    rays: List[List[int]] = [[] for _ in range(k)]
    for i in chosen:
        number, kind, index = origin[i]
        target = points if kind == "point" else rays
        if index not in target[number]:
            target[number].append(index)
    paths = []
    for number in range(k):
        gen = gens[number] if number < len(gens) else None
        if gen is None:
            paths.append(WitnessPath())
            continue
        if rays[number] and not points[number]:
            points[number].append(0)
        paths.append(
            WitnessPath(
                tuple(gen.vertices[i] for i in sorted(points[number])),
                tuple(gen.rays[i] for i in sorted(rays[number])),
            )
        )
    witness = Witness(tuple(paths))
    logger.debug("witness of size %d", witness.size)
    return witness


@UtilsMonitoring.time_spend(level=logging.DEBUG)
def extract_lrf_witness(
    ts: TransitionSystem, settings: Optional[HullSettings] = None
) -> Witness:
    """Witness that the loop has no linear ranking function over Z.

    Raises:
        FeasibleInputError: a linear ranking function exists
    """
    polys, _ = _hulls(ts, settings)
    return _witness_of(polys, ts)


def bounded_below(
    poly: ConstraintPoly, objective: Vector, least: Fraction
) -> bool:
    """True when objective . x >= least on the whole polyhedron."""
    outcome = poly.minimum(objective)
    if isinstance(outcome, lp.Infeasible):
        return True
    if isinstance(outcome, lp.Unbounded):
        return False
    return outcome.value >= least  # type: ignore


def verify_lrf(
    rho: AffineFunc,
    ts: TransitionSystem,
    domain: Domain,
    settings: Optional[HullSettings] = None,
) -> bool:
    """Checks rho(x) >= 0 and rho(x) - rho(x') >= 1 on every path by LP.

    Over the integers the checks run on the integer hulls; an inexact
    hull is an outer approximation, so a pass is still a proof.
    """
    polys, _ = path_polyhedra(ts, domain, settings)
    value_row = rho.coeffs + (ZERO,) * ts.n
    for poly in polys:
        if poly is None:
            continue
        if not bounded_below(poly, value_row, -rho.lambda0):
            return False
        if not bounded_below(poly, rho.delta_row(), Fraction(1)):
            return False
    return True


def check_witness_members(
    w: Witness, ts: TransitionSystem
) -> Optional[WitnessCheck]:
    """Failed check of the points and rays of a witness, None when valid.

    Points must be integer transitions of their path, rays integer rays
    of its recession cone, and a path with rays must have a point.
    """
    if len(w.paths) != ts.k:
        return WitnessCheck(False, WitnessReason.DIMENSION_MISMATCH)
    size = 2 * ts.n
    for number, (path, poly) in enumerate(zip(w.paths, ts.polys)):
        for gen in path.points + path.rays:
            if len(gen) != size:
                return WitnessCheck(
                    False, WitnessReason.DIMENSION_MISMATCH, number
                )
            if not is_integral(gen):
                return WitnessCheck(False, WitnessReason.NOT_INTEGRAL, number)
        for point in path.points:
            if not poly.contains(point):
                return WitnessCheck(
                    False, WitnessReason.POINT_NOT_IN_PATH, number
                )
        cone = ConstraintPoly(poly.a, (ZERO,) * poly.m, poly.d)
        for ray in path.rays:
            if not cone.contains(ray):
                return WitnessCheck(
                    False, WitnessReason.RAY_NOT_IN_RECESSION_CONE, number
                )
        if path.rays and not path.points:
            return WitnessCheck(False, WitnessReason.RAY_WITHOUT_POINT, number)
    return None


def verify_lrf_witness(w: Witness, ts: TransitionSystem) -> WitnessCheck:
    """Checks a witness that no linear ranking function exists over Z.

    Besides :func:`check_witness_members`, the generator system built
    from the points and rays must be infeasible.
    """
    failed = check_witness_members(w, ts)
    if failed is not None:
        return failed
    size = 2 * ts.n
    gens = [
        GeneratorRep(path.points, path.rays, size) if path.points else None
        for path in w.paths
    ]
    rows, rhs, _ = _witness_system(gens, ts.n)
    if lp.is_feasible(rows, rhs, ts.n + 1):
        return WitnessCheck(False, WitnessReason.SYSTEM_FEASIBLE)
    return WitnessCheck(True, WitnessReason.OK)
