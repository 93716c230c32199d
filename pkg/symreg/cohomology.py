"""Degree complexes and the local cohomology of symbolic powers.

The a-invariants of R/I_Δ^(n) are read off degree complexes Δ_α: the graded
piece H^i_m(R/I^(n))_α has dimension dim H̃_{i−|G_α|−1}(Δ_α). The search runs over
G a face of Δ with α = −1 on G and α ∈ {0..n−1} off G; larger coordinates make
Δ_α a cone or void.

Values equal to −∞ are represented by ``None``.
"""

from __future__ import annotations

from collections.abc import Iterator, Sequence
from concurrent.futures import ProcessPoolExecutor
from contextlib import ExitStack
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import product
import logging

from .combinatorics import (
    InvalidComplexError,
    SimplicialComplex,
    face_masks,
    is_full_simplex,
    mask_of,
)
from .exactalg import QQ, FieldSpec, homology_of_masks
from .ideals import symbolic_power

logger = logging.getLogger(__name__)

type ExtInt = int | None

# Smaller searches stay in process.
PARALLEL_MIN_FACES = 16


def ext_max(values: Sequence[ExtInt]) -> ExtInt:
    """Maximum with ``None`` as −∞."""
    finite = [v for v in values if v is not None]
    return max(finite) if finite else None


@dataclass(frozen=True, slots=True)
class DegreeVector:
    """An integer degree α ∈ Z^r."""

    alpha: tuple[int, ...]

    @property
    def negative_support(self) -> tuple[int, ...]:
        """G_α = {i : α_i < 0}, 1-based."""
        return tuple(i + 1 for i, a in enumerate(self.alpha) if a < 0)

    @property
    def size(self) -> int:
        """|α| = Σ α_i."""
        return sum(self.alpha)

    def to_json(self) -> list[int]:
        return list(self.alpha)


@dataclass(frozen=True, slots=True)
class Witness:
    """A degree α with H^i_m(R/I^(n))_α ≠ 0."""

    i: int
    alpha: DegreeVector
    dimension: int


@dataclass(slots=True)
class AInvariantProfile:
    """a_i(R/I_Δ^(n)) for i = 0..r, with one witness per finite value."""

    r: int
    n: int
    values: dict[int, ExtInt] = field(default_factory=dict)
    witnesses: dict[int, Witness] = field(default_factory=dict)

    def a(self, i: int) -> ExtInt:
        return self.values.get(i)

    def regularity_quotient(self) -> ExtInt:
        """reg(R/I^(n)) = max_i (a_i + i)."""
        return ext_max([v + i for i, v in self.values.items() if v is not None])

    def regularity_witness(self) -> Witness | None:
        best: Witness | None = None
        for i in sorted(self.witnesses):
            w = self.witnesses[i]
            if best is None or w.alpha.size + i > best.alpha.size + best.i:
                best = w
        return best

    def to_json(self) -> dict[str, object]:
        return {
            str(i): ("-inf" if self.values.get(i) is None else self.values[i])
            for i in range(self.r + 1)
        }


def _qualifying_facets(
    link_facets: Sequence[int], alpha: Sequence[int], g_mask: int, n: int, r: int
) -> list[int]:
    full = (1 << r) - 1
    out: list[int] = []
    for f in link_facets:
        outside = full & ~(f | g_mask)
        if sum(alpha[j] for j in range(r) if outside >> j & 1) <= n - 1:
            out.append(f)
    return out


def _link_masks(delta: SimplicialComplex, g_mask: int) -> list[int]:
    kept = [f & ~g_mask for f in delta.facet_masks if f & g_mask == g_mask]
    return sorted(set(kept))


def degree_complex(delta: SimplicialComplex, n: int, alpha: DegreeVector) -> SimplicialComplex:
    """Δ_α(I_Δ^(n)) from the facets of lk_Δ(G_α)."""
    _require_nonvoid(delta)
    g_mask = mask_of(alpha.negative_support)
    link_facets = _link_masks(delta, g_mask)
    return SimplicialComplex.from_masks(
        delta.r, _qualifying_facets(link_facets, alpha.alpha, g_mask, n, delta.r)
    )


def direct_degree_complex(
    delta: SimplicialComplex, n: int, alpha: DegreeVector
) -> SimplicialComplex:
    """Δ_α from membership: F ∈ Δ_α iff F ∩ G_α = ∅ and x^α ∉ I^(n) R_{F∪G_α}."""
    _require_nonvoid(delta)
    r = delta.r
    gens = symbolic_power(delta, n).generators
    g_mask = mask_of(alpha.negative_support)
    free = ((1 << r) - 1) & ~g_mask
    members: list[int] = []
    sub = free
    while True:
        inverted = sub | g_mask
        hit = any(
            all(b[j] <= alpha.alpha[j] for j in range(r) if not inverted >> j & 1) for b in gens
        )
        if not hit:
            members.append(sub)
        if sub == 0:
            break
        sub = (sub - 1) & free
    return SimplicialComplex.from_masks(r, members)


def local_coh_dim(
    delta: SimplicialComplex, n: int, alpha: DegreeVector, i: int, field: FieldSpec = QQ
) -> int:
    """dim_K H^i_m(R/I_Δ^(n))_α."""
    if not 0 <= i <= delta.r:
        msg = f"cohomological index must lie in 0..{delta.r}, got {i}"
        raise ValueError(msg)
    complex_ = degree_complex(delta, n, alpha)
    if complex_.is_void:
        return 0
    dims = homology_of_masks(tuple(sorted(complex_.facet_masks)), field)
    k = i - len(alpha.negative_support)
    return dims[k] if 0 <= k < len(dims) else 0


def _is_cone_masks(masks: Sequence[int]) -> bool:
    common = ~0
    for m in masks:
        common &= m
    return common != 0


type _FaceBest = dict[int, tuple[int, tuple[int, ...], int]]


@dataclass(frozen=True, slots=True)
class _FaceSearch:
    """The degree search for one face G; picklable for worker processes."""

    delta: SimplicialComplex
    n: int
    field: FieldSpec

    def __call__(self, g_mask: int) -> tuple[int, _FaceBest]:
        r, n = self.delta.r, self.n
        link_facets = _link_masks(self.delta, g_mask)
        free = [j for j in range(r) if not g_mask >> j & 1]
        g_size = g_mask.bit_count()
        complements = [[j for j in free if not (f | g_mask) >> j & 1] for f in link_facets]
        # Best |α| on the free coordinates for each set of qualifying facets.
        best: dict[tuple[int, ...], tuple[int, tuple[int, ...]]] = {}
        searched = 0
        for values in product(range(n), repeat=len(free)):
            alpha = [0] * r
            for j, v in zip(free, values, strict=True):
                alpha[j] = v
            chosen = tuple(
                f for f, comp in zip(link_facets, complements, strict=True)
                if sum(alpha[j] for j in comp) <= n - 1
            )
            searched += 1
            if not chosen or _is_cone_masks(chosen):
                continue
            total = sum(values)
            if chosen not in best or total > best[chosen][0]:
                best[chosen] = (total, values)
        found: _FaceBest = {}
        for chosen, (total, values) in sorted(best.items()):
            dims = homology_of_masks(chosen, self.field)
            for k, d in enumerate(dims):
                i = k + g_size
                if not d or i > r:
                    continue
                size = total - g_size
                if i not in found or size > found[i][0]:
                    alpha = [-1 if g_mask >> j & 1 else 0 for j in range(r)]
                    for j, v in zip(free, values, strict=True):
                        alpha[j] = v
                    found[i] = (size, tuple(alpha), d)
        return searched, found


def a_invariants(
    delta: SimplicialComplex, n: int, field: FieldSpec = QQ, threads: int = 1
) -> AInvariantProfile:
    """Every a_i(R/I_Δ^(n)) by exhaustive search over degree complexes.

    With ``threads > 1`` the faces G are searched in worker processes; the merge
    runs in face order, so the profile and its witnesses do not depend on it.
    """
    _require_nonvoid(delta)
    if n < 1:
        msg = f"symbolic power exponent must be positive, got {n}"
        raise ValueError(msg)
    r = delta.r
    profile = AInvariantProfile(r, n, {i: None for i in range(r + 1)})
    faces = sorted(face_masks(delta.facet_masks), key=lambda m: (m.bit_count(), m))
    search = _FaceSearch(delta, n, field)
    searched = 0
    workers = 1
    results: Iterator[tuple[int, _FaceBest]]
    with ExitStack() as stack:
        if threads > 1 and len(faces) >= PARALLEL_MIN_FACES:
            workers = threads
            pool = stack.enter_context(ProcessPoolExecutor(max_workers=threads))
            results = pool.map(search, faces, chunksize=max(1, len(faces) // (threads * 4)))
        else:
            results = map(search, faces)
        for visited, found in results:
            searched += visited
            for i, (size, alpha, d) in sorted(found.items()):
                current = profile.values[i]
                if current is None or size > current:
                    profile.values[i] = size
                    profile.witnesses[i] = Witness(i, DegreeVector(alpha), d)
    logger.debug(
        "a-invariant search for r=%d n=%d visited %d degrees with %d worker(s)",
        r,
        n,
        searched,
        workers,
    )
    return profile


def reg_symbolic(
    delta: SimplicialComplex, n: int, field: FieldSpec = QQ, threads: int = 1
) -> ExtInt:
    """reg(I_Δ^(n)) = max_i (a_i + i) + 1; ``None`` for the zero ideal."""
    _require_nonvoid(delta)
    if is_full_simplex(delta):
        return None
    reg_quotient = a_invariants(delta, n, field, threads).regularity_quotient()
    return None if reg_quotient is None else reg_quotient + 1


def pd_symbolic(
    delta: SimplicialComplex, n: int, field: FieldSpec = QQ, threads: int = 1
) -> int:
    """pd(R/I_Δ^(n)) = r − min{i : H^i_m ≠ 0}."""
    profile = a_invariants(delta, n, field, threads)
    depth = min(i for i, v in profile.values.items() if v is not None)
    return delta.r - depth


@lru_cache(maxsize=1 << 16)
def reg_links_of_masks(facet_masks: tuple[int, ...], field: FieldSpec = QQ) -> int:
    """max{d : H̃_{d−1}(lk σ) ≠ 0 over faces σ} for a complex given by facet masks."""
    best = -1
    for sigma in face_masks(facet_masks):
        link = tuple(sorted({f & ~sigma for f in facet_masks if f & sigma == sigma}))
        dims = homology_of_masks(link, field)
        for k in range(len(dims) - 1, -1, -1):
            if dims[k]:
                # dims[k] is H̃_{k−1}, contributing d = k.
                best = max(best, k)
                break
    return best


def reg_links(delta: SimplicialComplex, field: FieldSpec = QQ) -> int:
    """reg(R/I_Δ) through Hochster's formula on links; reg(I_Δ) is one more."""
    _require_nonvoid(delta)
    if is_full_simplex(delta):
        msg = "the full simplex has the zero ideal; its regularity is −∞"
        raise InvalidComplexError(msg)
    return reg_links_of_masks(tuple(sorted(delta.facet_masks)), field)


def _require_nonvoid(delta: SimplicialComplex) -> None:
    if delta.is_void:
        msg = "the void complex is not accepted here"
        raise InvalidComplexError(msg)
