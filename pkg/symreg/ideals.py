"""Monomial ideals, the Stanley–Reisner correspondence, symbolic powers and Betti numbers.

Exponent vectors are tuples of length ``r``; coordinate ``j`` holds the exponent of
``x_{j+1}``. The Betti oracle evaluates multigraded Betti numbers through the
upper Koszul complexes, independently of the local cohomology route.
"""

from __future__ import annotations

from collections.abc import Iterable, Iterator, Sequence
from dataclasses import dataclass, field
from itertools import product
import logging

from .combinatorics import (
    Face,
    Hypergraph,
    SimplicialComplex,
    mask_of,
    minimal_nonface_masks,
)
from .exactalg import QQ, FieldSpec, homology_of_masks

logger = logging.getLogger(__name__)

type Exponents = tuple[int, ...]
type BettiTable = dict[tuple[int, Exponents], int]


class InvalidIdealError(ValueError):
    """An ideal outside the domain of an operation (zero, unit, malformed)."""


def divides(b: Sequence[int], a: Sequence[int]) -> bool:
    """x^b divides x^a."""
    return all(x <= y for x, y in zip(b, a, strict=True))


def _degree_order(a: Exponents) -> tuple[int, Exponents]:
    return (sum(a), a)


def minimalize(vectors: Iterable[Exponents]) -> tuple[Exponents, ...]:
    """Minimal elements under divisibility, sorted by total degree then lexicographically."""
    kept: list[Exponents] = []
    for a in sorted(set(vectors), key=_degree_order):
        if not any(divides(b, a) for b in kept):
            kept.append(a)
    return tuple(kept)


@dataclass(frozen=True, slots=True)
class MonomialIdeal:
    """A monomial ideal in K[x_1..x_r] by its minimal generators.

    ``generators == ()`` is the zero ideal; ``((0,)*r,)`` is the unit ideal.
    """

    r: int
    generators: tuple[Exponents, ...]

    def __post_init__(self) -> None:
        if self.r < 0:
            msg = f"variable count must be nonnegative, got {self.r}"
            raise InvalidIdealError(msg)
        gens = tuple(tuple(g) for g in self.generators)
        for g in gens:
            if len(g) != self.r:
                msg = f"generator {list(g)} has length {len(g)}, expected {self.r}"
                raise InvalidIdealError(msg)
            if any(e < 0 for e in g):
                msg = f"generator {list(g)} has a negative exponent"
                raise InvalidIdealError(msg)
        minimal = minimalize(gens)
        if len(minimal) != len(gens):
            msg = "generators are not a minimal generating set"
            raise InvalidIdealError(msg)
        object.__setattr__(self, "generators", minimal)

    @classmethod
    def generated_by(cls, r: int, vectors: Iterable[Sequence[int]]) -> MonomialIdeal:
        return cls(r, minimalize(tuple(v) for v in vectors))

    @property
    def is_zero(self) -> bool:
        return not self.generators

    @property
    def is_unit(self) -> bool:
        return any(not any(g) for g in self.generators)

    @property
    def is_squarefree(self) -> bool:
        return all(e <= 1 for g in self.generators for e in g)

    def contains(self, a: Sequence[int]) -> bool:
        """x^a ∈ I."""
        return any(divides(g, a) for g in self.generators)

    def require_proper_nonzero(self) -> None:
        if self.is_zero:
            msg = "operation undefined for the zero ideal"
            raise InvalidIdealError(msg)
        if self.is_unit:
            msg = "operation undefined for the unit ideal"
            raise InvalidIdealError(msg)

    def to_json(self) -> dict[str, object]:
        return {"r": self.r, "generators": [list(g) for g in self.generators]}


@dataclass(frozen=True, slots=True)
class Contraction:
    """J = I R_σ ∩ S with the old-to-new variable map (both 1-based)."""

    ideal: MonomialIdeal
    sigma: Face
    index_map: dict[int, int] = field(hash=False)

    @property
    def kept(self) -> Face:
        return tuple(sorted(self.index_map))

    def restrict(self, alpha: Sequence[int]) -> tuple[int, ...]:
        """Re-index a length-r vector onto the kept variables."""
        return tuple(alpha[old - 1] for old in self.kept)


def stanley_reisner(delta: SimplicialComplex) -> MonomialIdeal:
    """I_Δ, generated by the minimal non-faces of Δ."""
    if delta.is_void:
        msg = "the void complex has the unit ideal; not accepted here"
        raise InvalidIdealError(msg)
    gens = (
        tuple(1 if m >> j & 1 else 0 for j in range(delta.r))
        for m in minimal_nonface_masks(delta)
    )
    return MonomialIdeal.generated_by(delta.r, gens)


def complex_of(ideal: MonomialIdeal) -> SimplicialComplex:
    """Δ(√I): the sets τ with x^τ ∉ √I, i.e. containing no generator support."""
    supports = [mask_of(j + 1 for j, e in enumerate(g) if e) for g in ideal.generators]
    if ideal.r == 0:
        msg = "complex of an ideal in zero variables"
        raise InvalidIdealError(msg)
    faces = (m for m in range(1 << ideal.r) if not any(s & m == s for s in supports))
    return SimplicialComplex.from_masks(ideal.r, faces)


def edge_ideal(hypergraph: Hypergraph) -> MonomialIdeal:
    """I(H) = (x^e : e ∈ E(H))."""
    return MonomialIdeal.generated_by(
        hypergraph.r,
        (tuple(1 if j + 1 in e else 0 for j in range(hypergraph.r)) for e in hypergraph.edges),
    )


def _complement_masks(delta: SimplicialComplex) -> list[int]:
    full = (1 << delta.r) - 1
    return [full & ~f for f in delta.facet_masks]


def contains(delta: SimplicialComplex, n: int, a: Sequence[int]) -> bool:
    """x^a ∈ I_Δ^(n): Σ_{i∉F} a_i ≥ n for every facet F."""
    return all(
        sum(a[j] for j in range(delta.r) if c >> j & 1) >= n for c in _complement_masks(delta)
    )


def symbolic_power(delta: SimplicialComplex, n: int) -> MonomialIdeal:
    """I_Δ^(n) by enumerating exponent vectors in {0..n}^r."""
    if delta.is_void:
        msg = "symbolic powers of the unit ideal are not taken"
        raise InvalidIdealError(msg)
    if n < 1:
        msg = f"symbolic power exponent must be positive, got {n}"
        raise InvalidIdealError(msg)
    complements = [[j for j in range(delta.r) if c >> j & 1] for c in _complement_masks(delta)]

    def member(a: Sequence[int]) -> bool:
        return all(sum(a[j] for j in c) >= n for c in complements)

    gens: list[Exponents] = []
    for a in product(range(n + 1), repeat=delta.r):
        if not member(a):
            continue
        # Minimal iff no single step down stays inside.
        if all(
            not member(a[:j] + (a[j] - 1,) + a[j + 1 :]) for j in range(delta.r) if a[j]
        ):
            gens.append(a)
    return MonomialIdeal(delta.r, minimalize(gens))


def contraction(ideal: MonomialIdeal, sigma: Iterable[int]) -> Contraction:
    """Set x_i = 1 for i ∈ σ and re-minimalize on the remaining variables."""
    sigma_t = tuple(sorted(set(sigma)))
    if any(not 1 <= i <= ideal.r for i in sigma_t):
        msg = f"σ={list(sigma_t)} is not a subset of 1..{ideal.r}"
        raise InvalidIdealError(msg)
    if len(sigma_t) == ideal.r:
        msg = "contraction by the full variable set is not allowed"
        raise InvalidIdealError(msg)
    kept = [i for i in range(1, ideal.r + 1) if i not in sigma_t]
    index_map = {old: new for new, old in enumerate(kept, start=1)}
    gens = (tuple(g[old - 1] for old in kept) for g in ideal.generators)
    return Contraction(MonomialIdeal.generated_by(len(kept), gens), sigma_t, index_map)


def max_gen_degree(ideal: MonomialIdeal) -> int:
    """d(I): the largest total degree of a minimal generator."""
    ideal.require_proper_nonzero()
    return max(sum(g) for g in ideal.generators)


def dim_quotient(delta: SimplicialComplex) -> int:
    """Krull dimension of K[Δ] = R/I_Δ, that is dim Δ + 1."""
    if delta.is_void:
        msg = "the void complex has no Stanley–Reisner ring"
        raise InvalidIdealError(msg)
    return max(len(f) for f in delta.facets)


def _lcm_lattice_candidates(ideal: MonomialIdeal) -> Iterator[Exponents]:
    values = [sorted({0} | {g[j] for g in ideal.generators}) for j in range(ideal.r)]
    for a in product(*values):
        if ideal.contains(a):
            yield a


def upper_koszul_facets(ideal: MonomialIdeal, a: Exponents) -> tuple[int, ...]:
    """Facets (as masks) of K^a(I) = {τ ⊆ supp(a) : x^(a−τ) ∈ I}."""
    support = mask_of(j + 1 for j, e in enumerate(a) if e)
    members: list[int] = []
    sub = support
    while True:
        shifted = tuple(e - (sub >> j & 1) for j, e in enumerate(a))
        if ideal.contains(shifted):
            members.append(sub)
        if sub == 0:
            break
        sub = (sub - 1) & support
    maximal: list[int] = []
    for m in sorted(members, key=lambda x: -x.bit_count()):
        if not any(m & k == m for k in maximal):
            maximal.append(m)
    return tuple(sorted(maximal))


def betti_table(ideal: MonomialIdeal, field: FieldSpec = QQ) -> BettiTable:
    """Nonzero multigraded Betti numbers β_{i,a}(I) = dim H̃_{i−1}(K^a(I))."""
    ideal.require_proper_nonzero()
    table: BettiTable = {}
    for a in _lcm_lattice_candidates(ideal):
        dims = homology_of_masks(upper_koszul_facets(ideal, a), field)
        for k, d in enumerate(dims):
            if d:
                table[k, a] = d
    logger.debug("betti table: %d generators, %d nonzero", len(ideal.generators), len(table))
    return table


def reg_via_betti(ideal: MonomialIdeal, field: FieldSpec = QQ) -> int:
    """reg(I) = max{|a| − i : β_{i,a} ≠ 0}."""
    return max(sum(a) - i for i, a in betti_table(ideal, field))


def pd_quotient_via_betti(ideal: MonomialIdeal, field: FieldSpec = QQ) -> int:
    """pd(R/I) = 1 + max{i : β_{i,·}(I) ≠ 0}."""
    return 1 + max(i for i, _ in betti_table(ideal, field))


def betti_csv_rows(table: BettiTable) -> list[list[int]]:
    """Rows (i, a_1..a_r, beta) sorted by i then multidegree."""
    return [[i, *a, beta] for (i, a), beta in sorted(table.items())]


def betti_csv_header(r: int) -> list[str]:
    return ["i", *(f"a_{j}" for j in range(1, r + 1)), "beta"]
