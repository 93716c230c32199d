"""Exact rational polyhedra: the symbolic polyhedron, chamber polytopes and δ.

Vertices are found as unique solutions of tight constraint systems. When every
coordinate carries its own sign constraint the search is split by support: a
vertex with support P solves |P| independent non-sign constraints restricted to
P and is strictly positive there. Otherwise every choice of ``dimension``
constraints is tried.
"""

from __future__ import annotations

from collections.abc import Iterable, Iterator, Sequence
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
import logging
from typing import Literal

from .combinatorics import SimplicialComplex, is_full_simplex, mask_of
from .exactalg import QQ, ExactMatrix, rank

logger = logging.getLogger(__name__)

type Relation = Literal[">=", "<="]
type Point = tuple[Fraction, ...]


class PolyhedronError(ValueError):
    """A polyhedron that cannot be built or has no δ."""


@dataclass(frozen=True, slots=True)
class Constraint:
    coefficients: tuple[Fraction, ...]
    relation: Relation
    rhs: Fraction

    def value(self, point: Sequence[Fraction]) -> Fraction:
        return sum((c * x for c, x in zip(self.coefficients, point, strict=True)), Fraction(0))

    def holds(self, point: Sequence[Fraction]) -> bool:
        v = self.value(point)
        return v >= self.rhs if self.relation == ">=" else v <= self.rhs

    def is_sign_constraint(self) -> int | None:
        """Index j when this reads x_j ≥ 0."""
        if self.relation != ">=" or self.rhs != 0:
            return None
        nonzero = [j for j, c in enumerate(self.coefficients) if c != 0]
        if len(nonzero) == 1 and self.coefficients[nonzero[0]] > 0:
            return nonzero[0]
        return None

    def describe(self) -> str:
        terms = [
            (f"x{j + 1}" if c == 1 else f"{c}*x{j + 1}")
            for j, c in enumerate(self.coefficients)
            if c != 0
        ]
        return f"{' + '.join(terms) or '0'} {self.relation} {self.rhs}"


@dataclass(frozen=True, slots=True)
class RationalPolyhedron:
    """{x ∈ Q^dimension : every constraint holds}."""

    dimension: int
    constraints: tuple[Constraint, ...]

    def __post_init__(self) -> None:
        for c in self.constraints:
            if len(c.coefficients) != self.dimension:
                msg = f"constraint {c.describe()} does not have {self.dimension} coefficients"
                raise PolyhedronError(msg)

    def contains(self, point: Sequence[Fraction]) -> bool:
        return all(c.holds(point) for c in self.constraints)

    def describe(self) -> list[str]:
        return [c.describe() for c in self.constraints]


@dataclass(frozen=True, slots=True)
class DeltaResult:
    delta: Fraction
    witness: Point


def _constraint(
    coefficients: Iterable[int | Fraction], relation: Relation, rhs: int | Fraction
) -> Constraint:
    return Constraint(tuple(Fraction(c) for c in coefficients), relation, Fraction(rhs))


def _nonnegativity(r: int) -> list[Constraint]:
    return [_constraint((1 if j == i else 0 for j in range(r)), ">=", 0) for i in range(r)]


def _complement_rows(delta: SimplicialComplex) -> list[tuple[int, ...]]:
    return [
        tuple(0 if j + 1 in facet else 1 for j in range(delta.r)) for facet in delta.facets
    ]


def symbolic_polyhedron(delta: SimplicialComplex) -> RationalPolyhedron:
    """SP(I_Δ) = {x ≥ 0 : Σ_{i∉F} x_i ≥ 1 for every facet F}."""
    if delta.is_void:
        msg = "the void complex has no symbolic polyhedron"
        raise PolyhedronError(msg)
    if is_full_simplex(delta):
        msg = "the full simplex has the zero ideal; its symbolic polyhedron has no constraints"
        raise PolyhedronError(msg)
    rows = [_constraint(row, ">=", 1) for row in _complement_rows(delta)]
    return RationalPolyhedron(delta.r, (*rows, *_nonnegativity(delta.r)))


def _facet_subset_polyhedron(
    delta: SimplicialComplex, selected: Iterable[int], upper: int, lower: int
) -> RationalPolyhedron:
    chosen = set(selected)
    if not chosen:
        msg = "the selected facet set must be nonempty"
        raise PolyhedronError(msg)
    if any(not 0 <= j < len(delta.facets) for j in chosen):
        msg = f"facet indices {sorted(chosen)} out of range for {len(delta.facets)} facets"
        raise PolyhedronError(msg)
    rows = [
        _constraint(row, "<=", upper) if j in chosen else _constraint(row, ">=", lower)
        for j, row in enumerate(_complement_rows(delta))
    ]
    return RationalPolyhedron(delta.r, (*rows, *_nonnegativity(delta.r)))


def chamber_polytope(
    delta: SimplicialComplex, selected: Iterable[int], m: int
) -> RationalPolyhedron:
    """C_m: Σ_{i∉F_j} x_i ≤ m for selected facets j, ≥ m for the others, x ≥ 0.

    ``selected`` holds 0-based positions in ``delta.facets``.
    """
    return _facet_subset_polyhedron(delta, selected, m, m)


def pm_polyhedron(
    delta: SimplicialComplex, selected: Iterable[int], m: int
) -> RationalPolyhedron:
    """P_m: ≤ m − 1 on the selected facets, ≥ m on the others, x ≥ 0."""
    return _facet_subset_polyhedron(delta, selected, m - 1, m)


def _tight_solutions(
    rows: Sequence[tuple[tuple[Fraction, ...], Fraction]], width: int
) -> Iterator[list[Fraction]]:
    """Unique solutions of every nonsingular choice of ``width`` rows.

    Depth-first over row choices, keeping the chosen rows in reduced echelon
    form and pruning a prefix as soon as it becomes dependent.
    """
    if width == 0:
        yield []
        return

    def extend(
        start: int, echelon: list[tuple[int, list[Fraction]]]
    ) -> Iterator[list[Fraction]]:
        if len(echelon) == width:
            solution = [Fraction(0)] * width
            for col, row in echelon:
                solution[col] = row[width]
            yield solution
            return
        for k in range(start, len(rows) - (width - len(echelon)) + 1):
            coeffs, rhs = rows[k]
            row = [*coeffs, rhs]
            for col, pivot_row in echelon:
                if row[col] != 0:
                    f = row[col]
                    row = [x - f * y for x, y in zip(row, pivot_row, strict=True)]
            pivot = next((c for c in range(width) if row[c] != 0), None)
            if pivot is None:
                continue
            lead = row[pivot]
            row = [x / lead for x in row]
            reduced = []
            for col, pivot_row in echelon:
                if pivot_row[pivot] != 0:
                    f = pivot_row[pivot]
                    pivot_row = [x - f * y for x, y in zip(pivot_row, row, strict=True)]
                reduced.append((col, pivot_row))
            reduced.append((pivot, row))
            yield from extend(k + 1, reduced)

    yield from extend(0, [])


def _vertices_by_bases(poly: RationalPolyhedron) -> set[Point]:
    rows = sorted({(c.coefficients, c.rhs) for c in poly.constraints})
    found: set[Point] = set()
    for solution in _tight_solutions(rows, poly.dimension):
        if poly.contains(solution):
            found.add(tuple(solution))
    return found


def _vertices_by_support(poly: RationalPolyhedron, others: Sequence[Constraint]) -> set[Point]:
    r = poly.dimension
    found: set[Point] = set()
    origin = tuple(Fraction(0) for _ in range(r))
    if poly.contains(origin):
        found.add(origin)
    for size in range(1, r + 1):
        for support in combinations(range(r), size):
            restricted = sorted(
                {
                    (tuple(c.coefficients[j] for j in support), c.rhs)
                    for c in others
                    if any(c.coefficients[j] != 0 for j in support)
                }
            )
            for solution in _tight_solutions(restricted, size):
                if any(x <= 0 for x in solution):
                    continue
                point = [Fraction(0)] * r
                for j, x in zip(support, solution, strict=True):
                    point[j] = x
                if poly.contains(point):
                    found.add(tuple(point))
    return found


def vertices(poly: RationalPolyhedron, *, by_support: bool | None = None) -> list[Point]:
    """All vertices of ``poly``, sorted lexicographically."""
    signed = {c.is_sign_constraint() for c in poly.constraints} - {None}
    use_support = len(signed) == poly.dimension if by_support is None else by_support
    if use_support:
        if len(signed) != poly.dimension:
            msg = "support enumeration needs x_j >= 0 for every coordinate"
            raise PolyhedronError(msg)
        others = [c for c in poly.constraints if c.is_sign_constraint() is None]
        found = _vertices_by_support(poly, others)
    else:
        found = _vertices_by_bases(poly)
    return sorted(found)


def _size(point: Sequence[Fraction]) -> Fraction:
    return sum(point, Fraction(0))


def polytope_delta(poly: RationalPolyhedron) -> DeltaResult:
    """δ = max |v| over the vertices of a bounded nonempty polyhedron."""
    if not is_bounded(poly):
        msg = "δ is only taken over bounded polyhedra here"
        raise PolyhedronError(msg)
    points = vertices(poly)
    if not points:
        msg = "the polyhedron is empty"
        raise PolyhedronError(msg)
    return _best_vertex(points)


def _best_vertex(points: Sequence[Point]) -> DeltaResult:
    best = max(_size(p) for p in points)
    witness = next(p for p in points if _size(p) == best)
    return DeltaResult(best, witness)


def delta_invariant(delta: SimplicialComplex) -> DeltaResult:
    """δ(I_Δ): the largest coordinate sum of a vertex of SP(I_Δ)."""
    points = vertices(symbolic_polyhedron(delta))
    logger.debug("symbolic polyhedron of %s has %d vertices", delta.facets, len(points))
    return _best_vertex(points)


def recession_cone_slice(poly: RationalPolyhedron) -> RationalPolyhedron:
    """Recession cone of ``poly`` intersected with d ≥ 0 and Σ d = 1."""
    r = poly.dimension
    zero = Fraction(0)
    homogeneous = [Constraint(c.coefficients, c.relation, zero) for c in poly.constraints]
    ones = tuple(Fraction(1) for _ in range(r))
    return RationalPolyhedron(
        r,
        (
            *homogeneous,
            *_nonnegativity(r),
            Constraint(ones, "<=", Fraction(1)),
            Constraint(ones, ">=", Fraction(1)),
        ),
    )


def is_bounded(poly: RationalPolyhedron) -> bool:
    """True when the recession cone is {0}.

    Only polyhedra inside the nonnegative orthant are supported, which covers every
    polyhedron built in this module.
    """
    signed = {c.is_sign_constraint() for c in poly.constraints} - {None}
    if len(signed) != poly.dimension:
        msg = "boundedness is decided for polyhedra with x >= 0 only"
        raise PolyhedronError(msg)
    return not vertices(recession_cone_slice(poly))


def affine_dimension(points: Sequence[Sequence[Fraction]]) -> int:
    """Dimension of the affine hull of a point set (−1 when empty)."""
    if not points:
        return -1
    base = points[0]
    diffs = [[x - y for x, y in zip(p, base, strict=True)] for p in points[1:]]
    if not diffs:
        return 0
    return rank(ExactMatrix.from_rows(diffs, QQ))


def selected_facets_for(delta: SimplicialComplex, chosen: Iterable[Iterable[int]]) -> list[int]:
    """Positions in ``delta.facets`` of the given facets."""
    wanted = {mask_of(f) for f in chosen}
    return [j for j, f in enumerate(delta.facet_masks) if f in wanted]
