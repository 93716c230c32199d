"""Exact linear algebra over Q or GF(p), and reduced simplicial homology.

Ranks over Q use fraction-free (Bareiss) elimination on integer rows; ranks over
GF(p) use vectorised modular elimination in numpy. Nothing here touches floats.
"""

from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
import logging
import math

import numpy as np
import sympy

from .combinatorics import InvalidComplexError, SimplicialComplex, face_masks

logger = logging.getLogger(__name__)

# Residues stay below 2**31 so products fit in int64.
MAX_CHARACTERISTIC = 2**31

type Scalar = Fraction | int


class FieldError(ValueError):
    """Unsupported coefficient field."""


@dataclass(frozen=True, slots=True)
class FieldSpec:
    """Coefficient field: characteristic 0 means Q, otherwise GF(p)."""

    characteristic: int = 0

    def __post_init__(self) -> None:
        p = self.characteristic
        if p == 0:
            return
        if p < 0 or not sympy.isprime(p):
            msg = f"characteristic must be 0 or a prime, got {p}"
            raise FieldError(msg)
        if p >= MAX_CHARACTERISTIC:
            msg = f"characteristic {p} is too large (must be below 2**31)"
            raise FieldError(msg)

    @classmethod
    def rationals(cls) -> FieldSpec:
        return cls(0)

    @property
    def is_rational(self) -> bool:
        return self.characteristic == 0

    def coerce(self, value: Scalar) -> Scalar:
        if self.is_rational:
            return Fraction(value)
        frac = Fraction(value)
        p = self.characteristic
        if frac.denominator % p == 0:
            msg = f"{value} has no image in GF({p})"
            raise FieldError(msg)
        return frac.numerator * pow(frac.denominator, -1, p) % p

    def __str__(self) -> str:
        return "Q" if self.is_rational else f"GF({self.characteristic})"


QQ = FieldSpec.rationals()


@dataclass(frozen=True, slots=True)
class ExactMatrix:
    """A dense row-major matrix with entries already coerced into ``field``."""

    rows: int
    cols: int
    entries: tuple[Scalar, ...]
    field: FieldSpec = QQ

    def __post_init__(self) -> None:
        if self.rows < 0 or self.cols < 0 or len(self.entries) != self.rows * self.cols:
            msg = f"{self.rows}x{self.cols} matrix needs {self.rows * self.cols} entries"
            raise ValueError(msg)

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[Scalar]], field: FieldSpec = QQ) -> ExactMatrix:
        width = len(rows[0]) if rows else 0
        if any(len(row) != width for row in rows):
            msg = "ragged rows"
            raise ValueError(msg)
        return cls(len(rows), width, tuple(field.coerce(x) for row in rows for x in row), field)

    def row(self, i: int) -> tuple[Scalar, ...]:
        return self.entries[i * self.cols : (i + 1) * self.cols]

    def to_rows(self) -> list[list[Scalar]]:
        return [list(self.row(i)) for i in range(self.rows)]


def _integer_rows(matrix: ExactMatrix) -> list[list[int]]:
    rows: list[list[int]] = []
    for i in range(matrix.rows):
        row = [Fraction(x) for x in matrix.row(i)]
        scale = math.lcm(*(x.denominator for x in row)) if row else 1
        rows.append([int(x * scale) for x in row])
    return rows


def _bareiss_rank(rows: list[list[int]]) -> int:
    """Rank of an integer matrix by fraction-free elimination (rows are consumed)."""
    rank = 0
    prev = 1
    ncols = len(rows[0]) if rows else 0
    for col in range(ncols):
        pivot = next((i for i in range(rank, len(rows)) if rows[i][col]), None)
        if pivot is None:
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        top = rows[rank]
        p = top[col]
        for i in range(rank + 1, len(rows)):
            row = rows[i]
            f = row[col]
            rows[i] = [(p * row[j] - f * top[j]) // prev for j in range(ncols)]
        prev = p
        rank += 1
    return rank


def _modular_rank(matrix: ExactMatrix) -> int:
    p = matrix.field.characteristic
    m = np.array(matrix.entries, dtype=np.int64).reshape(matrix.rows, matrix.cols) % p
    rank = 0
    for col in range(matrix.cols):
        if rank == matrix.rows:
            break
        nonzero = np.nonzero(m[rank:, col])[0]
        if nonzero.size == 0:
            continue
        pivot = rank + int(nonzero[0])
        if pivot != rank:
            m[[rank, pivot]] = m[[pivot, rank]]
        inv = pow(int(m[rank, col]), -1, p)
        m[rank] = m[rank] * inv % p
        below = m[rank + 1 :, col].copy()
        if below.any():
            m[rank + 1 :] = (m[rank + 1 :] - np.outer(below, m[rank])) % p
        rank += 1
    return rank


def rank(matrix: ExactMatrix) -> int:
    """Rank of ``matrix`` over its field."""
    if matrix.rows == 0 or matrix.cols == 0:
        return 0
    if matrix.field.is_rational:
        return _bareiss_rank(_integer_rows(matrix))
    return _modular_rank(matrix)


def solve(
    a: Sequence[Sequence[Fraction | int]], b: Sequence[Fraction | int]
) -> list[Fraction] | None:
    """Unique solution of a square system over Q, or ``None`` when ``a`` is singular."""
    n = len(a)
    aug = [[Fraction(x) for x in row] + [Fraction(rhs)] for row, rhs in zip(a, b, strict=True)]
    for col in range(n):
        pivot = next((i for i in range(col, n) if aug[i][col] != 0), None)
        if pivot is None:
            return None
        aug[col], aug[pivot] = aug[pivot], aug[col]
        lead = aug[col][col]
        aug[col] = [x / lead for x in aug[col]]
        for i in range(n):
            if i != col and aug[i][col] != 0:
                f = aug[i][col]
                aug[i] = [x - f * y for x, y in zip(aug[i], aug[col], strict=True)]
    return [row[n] for row in aug]


def _boundary_rank(lower: Sequence[int], upper: Sequence[int], field: FieldSpec) -> int:
    """Rank of the boundary map C(upper) -> C(lower); faces are masks of consecutive sizes."""
    if not lower or not upper:
        return 0
    index = {m: i for i, m in enumerate(lower)}
    rows: list[list[int]] = []
    for face in upper:
        row = [0] * len(lower)
        sign = 1
        bits = face
        while bits:
            low = bits & -bits
            row[index[face & ~low]] = sign
            sign = -sign
            bits &= bits - 1
        rows.append(row)
    if field.is_rational:
        return _bareiss_rank(rows)
    p = field.characteristic
    entries = tuple(x % p for row in rows for x in row)
    return _modular_rank(ExactMatrix(len(rows), len(lower), entries, field))


@lru_cache(maxsize=1 << 16)
def homology_of_masks(facet_masks: tuple[int, ...], field: FieldSpec = QQ) -> tuple[int, ...]:
    """Reduced Betti numbers of the complex with these facets, indexed from degree −1.

    Entry ``k`` is dim H̃_{k−1}. The void complex gives an empty tuple.
    """
    if not facet_masks:
        return ()
    by_size: dict[int, list[int]] = {}
    for m in face_masks(tuple(sorted(facet_masks))):
        by_size.setdefault(m.bit_count(), []).append(m)
    top = max(by_size)
    ranks = [
        _boundary_rank(sorted(by_size.get(k - 1, [])), sorted(by_size.get(k, [])), field)
        for k in range(top + 2)
    ]
    # ranks[k] is the rank of the map out of faces of size k; size 0 maps to nothing.
    ranks[0] = 0
    return tuple(
        len(by_size.get(k, [])) - ranks[k] - ranks[k + 1] for k in range(top + 1)
    )


def reduced_homology_dims(delta: SimplicialComplex, field: FieldSpec = QQ) -> dict[int, int]:
    """dim H̃_i(Δ; K) for i in −1..dim Δ."""
    if delta.is_void:
        msg = "reduced homology of the void complex is not defined"
        raise InvalidComplexError(msg)
    dims = homology_of_masks(tuple(sorted(delta.facet_masks)), field)
    return {k - 1: d for k, d in enumerate(dims)}


def reduced_euler_characteristic(delta: SimplicialComplex) -> int:
    """χ̃(Δ) = Σ (−1)^i f_i over faces, counting ∅ in degree −1."""
    all_faces = face_masks(tuple(sorted(delta.facet_masks)))
    return sum(1 if m.bit_count() % 2 else -1 for m in all_faces)
