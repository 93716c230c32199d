"""Simplicial complexes, graphs and simple hypergraphs on the ground set ``1..r``.

Complexes are stored by their facets only. Faces are enumerated on demand by the
few operations that need them (homology, matroid test, link sweeps). Internally
subsets of ``1..r`` are handled as bit masks, vertex ``i`` being bit ``i - 1``.
"""

from __future__ import annotations

from collections.abc import Iterable, Iterator, Sequence
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations, permutations

type Face = tuple[int, ...]
type Edge = tuple[int, int]

# Exhaustive isomorphism reduction walks all r! relabellings.
MAX_ISO_VERTICES = 7


class InvalidComplexError(ValueError):
    """A facet list that does not describe a simplicial complex."""


class InvalidGraphError(ValueError):
    """An edge list that does not describe a simple graph."""


class InvalidHypergraphError(ValueError):
    """An edge list that does not describe a simple hypergraph."""


def mask_of(face: Iterable[int]) -> int:
    """Bit mask of a vertex set (vertex ``i`` is bit ``i - 1``)."""
    mask = 0
    for v in face:
        mask |= 1 << (v - 1)
    return mask


def face_of(mask: int) -> Face:
    """Ascending vertex tuple of a bit mask."""
    face: list[int] = []
    v = 1
    while mask:
        if mask & 1:
            face.append(v)
        mask >>= 1
        v += 1
    return tuple(face)


def _sort_key(face: Face) -> tuple[int, Face]:
    return (len(face), face)


def canonical_sets(sets: Iterable[Iterable[int]]) -> tuple[Face, ...]:
    """Sort sets by size, then lexicographically, dropping duplicates."""
    return tuple(sorted({tuple(sorted(s)) for s in sets}, key=_sort_key))


def maximal_masks(masks: Iterable[int]) -> list[int]:
    """Inclusion-maximal elements of a family of masks."""
    unique = sorted(set(masks), key=lambda m: -m.bit_count())
    kept: list[int] = []
    for m in unique:
        if not any(m & k == m for k in kept):
            kept.append(m)
    return kept


def minimal_masks(masks: Iterable[int]) -> list[int]:
    """Inclusion-minimal elements of a family of masks."""
    unique = sorted(set(masks), key=int.bit_count)
    kept: list[int] = []
    for m in unique:
        if not any(k & m == k for k in kept):
            kept.append(m)
    return kept


def _check_vertices(r: int, sets: Sequence[Face], what: str, error: type[ValueError]) -> None:
    if r < 1:
        msg = f"ground set size must be positive, got r={r}"
        raise error(msg)
    for s in sets:
        for v in s:
            if not 1 <= v <= r:
                msg = f"{what} {list(s)} has vertex {v} outside 1..{r}"
                raise error(msg)
        if len(set(s)) != len(s):
            msg = f"{what} {list(s)} repeats a vertex"
            raise error(msg)


def _first_nested_pair(sets: Sequence[Face]) -> tuple[Face, Face] | None:
    for a, b in combinations(sets, 2):
        small, big = (a, b) if len(a) <= len(b) else (b, a)
        if set(small) <= set(big):
            return small, big
    return None


@dataclass(frozen=True, slots=True)
class SimplicialComplex:
    """A simplicial complex on ``1..r`` given by its facet antichain.

    ``facets == ()`` is the void complex; ``facets == ((),)`` is ``{∅}``.
    Vertices of ``1..r`` lying in no facet are allowed.
    """

    r: int
    facets: tuple[Face, ...]

    def __post_init__(self) -> None:
        facets = tuple(tuple(sorted(f)) for f in self.facets)
        _check_vertices(self.r, facets, "facet", InvalidComplexError)
        canonical = canonical_sets(facets)
        if len(canonical) != len(facets):
            msg = "facet list contains a duplicate facet"
            raise InvalidComplexError(msg)
        if (pair := _first_nested_pair(canonical)) is not None:
            small, big = list(pair[0]), list(pair[1])
            msg = f"facets do not form an antichain: {small} is contained in {big}"
            raise InvalidComplexError(msg)
        object.__setattr__(self, "facets", canonical)

    @classmethod
    def generated_by(cls, r: int, sets: Iterable[Iterable[int]]) -> SimplicialComplex:
        """The complex generated by arbitrary sets (non-maximal ones are dropped)."""
        masks = maximal_masks(mask_of(s) for s in sets)
        return cls(r, tuple(face_of(m) for m in masks))

    @classmethod
    def from_masks(cls, r: int, masks: Iterable[int]) -> SimplicialComplex:
        return cls(r, tuple(face_of(m) for m in maximal_masks(masks)))

    @classmethod
    def void(cls, r: int) -> SimplicialComplex:
        return cls(r, ())

    @classmethod
    def simplex(cls, r: int, face: Iterable[int] | None = None) -> SimplicialComplex:
        """The full simplex on ``face`` (default: all of ``1..r``)."""
        return cls(r, (tuple(range(1, r + 1)) if face is None else tuple(face),))

    @property
    def facet_masks(self) -> tuple[int, ...]:
        return tuple(mask_of(f) for f in self.facets)

    @property
    def is_void(self) -> bool:
        return not self.facets

    def contains_face(self, face: Iterable[int]) -> bool:
        m = mask_of(face)
        return any(m & f == m for f in self.facet_masks)

    def to_json(self) -> dict[str, object]:
        return {"r": self.r, "facets": [list(f) for f in self.facets]}


@dataclass(frozen=True, slots=True)
class Graph:
    """A simple graph on the vertex set ``1..r``."""

    r: int
    edges: tuple[Edge, ...]

    def __post_init__(self) -> None:
        raw = tuple(tuple(sorted(e)) for e in self.edges)
        for e in raw:
            if len(e) != 2 or e[0] == e[1]:
                msg = f"edge {list(e)} must have exactly two distinct endpoints"
                raise InvalidGraphError(msg)
        _check_vertices(self.r, raw, "edge", InvalidGraphError)
        canonical = canonical_sets(raw)
        if len(canonical) != len(raw):
            msg = "edge list contains a duplicate edge"
            raise InvalidGraphError(msg)
        object.__setattr__(self, "edges", canonical)

    def neighbors(self, v: int) -> set[int]:
        return {u for e in self.edges if v in e for u in e if u != v}

    def closed_neighborhood(self, vertices: Iterable[int]) -> set[int]:
        """N_G[S]: the set together with all of its neighbors."""
        closed = set(vertices)
        for v in tuple(closed):
            closed |= self.neighbors(v)
        return closed

    def delete_closed_neighborhood(self, vertices: Iterable[int]) -> Graph:
        """G ∖ N_G[S] on the same vertex count (removed vertices become isolated)."""
        gone = self.closed_neighborhood(vertices)
        return Graph(self.r, tuple(e for e in self.edges if not gone & set(e)))

    def is_trivial(self) -> bool:
        return not self.edges

    def non_isolated(self) -> list[int]:
        return sorted({v for e in self.edges for v in e})

    def has_edge(self, u: int, v: int) -> bool:
        return (min(u, v), max(u, v)) in self.edges

    def as_hypergraph(self) -> Hypergraph:
        return Hypergraph(self.r, self.edges)

    def to_json(self) -> dict[str, object]:
        return {"r": self.r, "edges": [list(e) for e in self.edges]}


@dataclass(frozen=True, slots=True)
class Hypergraph:
    """A simple hypergraph on ``1..r``: nonempty edges, no edge containing another."""

    r: int
    edges: tuple[Face, ...]

    def __post_init__(self) -> None:
        raw = tuple(tuple(sorted(e)) for e in self.edges)
        if any(not e for e in raw):
            msg = "hypergraph edges must be nonempty"
            raise InvalidHypergraphError(msg)
        _check_vertices(self.r, raw, "edge", InvalidHypergraphError)
        canonical = canonical_sets(raw)
        if len(canonical) != len(raw):
            msg = "edge list contains a duplicate edge"
            raise InvalidHypergraphError(msg)
        if (pair := _first_nested_pair(canonical)) is not None:
            small, big = list(pair[0]), list(pair[1])
            msg = f"edges do not form an antichain: {small} is contained in {big}"
            raise InvalidHypergraphError(msg)
        object.__setattr__(self, "edges", canonical)

    def trivial_vertices(self) -> set[int]:
        return {e[0] for e in self.edges if len(e) == 1}

    def non_isolated(self) -> set[int]:
        return {v for e in self.edges for v in e}

    def to_json(self) -> dict[str, object]:
        return {"r": self.r, "edges": [list(e) for e in self.edges]}


def faces(delta: SimplicialComplex) -> list[Face]:
    """All faces of ``delta`` sorted by size then lexicographically (empty for void)."""
    return [face_of(m) for m in sorted(face_masks(delta.facet_masks), key=_mask_order)]


def _mask_order(mask: int) -> tuple[int, Face]:
    return (mask.bit_count(), face_of(mask))


@lru_cache(maxsize=4096)
def face_masks(facet_masks: tuple[int, ...]) -> frozenset[int]:
    """Every subset of every facet, as masks."""
    seen: set[int] = set()
    for f in facet_masks:
        sub = f
        while True:
            seen.add(sub)
            if sub == 0:
                break
            sub = (sub - 1) & f
    return frozenset(seen)


def vertex_set(delta: SimplicialComplex) -> Face:
    """V(Δ): the vertices lying in some facet."""
    m = 0
    for f in delta.facet_masks:
        m |= f
    return face_of(m)


def dim(delta: SimplicialComplex) -> int:
    """dim Δ = max facet size − 1 (−1 for {∅}); the void complex has no dimension."""
    if delta.is_void:
        msg = "the void complex has no dimension"
        raise InvalidComplexError(msg)
    return max(len(f) for f in delta.facets) - 1


def is_simplex(delta: SimplicialComplex) -> bool:
    return len(delta.facets) == 1


def is_full_simplex(delta: SimplicialComplex) -> bool:
    """True when Δ contains every subset of 1..r (its Stanley–Reisner ideal is zero)."""
    return delta.facets == (tuple(range(1, delta.r + 1)),)


def is_pure(delta: SimplicialComplex) -> bool:
    return len({len(f) for f in delta.facets}) <= 1


def link(delta: SimplicialComplex, sigma: Iterable[int]) -> SimplicialComplex:
    """lk_Δ(σ) on the same ground set; void when σ is not a face."""
    s = mask_of(sigma)
    return SimplicialComplex.from_masks(delta.r, (f & ~s for f in delta.facet_masks if f & s == s))


def restriction(delta: SimplicialComplex, sigma: Iterable[int]) -> SimplicialComplex:
    """Δ[σ] = {τ ∈ Δ : τ ⊆ σ}, keeping the ground set size."""
    s = mask_of(sigma)
    return SimplicialComplex.from_masks(delta.r, (f & s for f in delta.facet_masks))


def is_cone_over(delta: SimplicialComplex, v: int) -> bool:
    """True when ``v`` lies in every facet."""
    bit = 1 << (v - 1)
    return bool(delta.facets) and all(f & bit for f in delta.facet_masks)


def is_cone(delta: SimplicialComplex) -> bool:
    """True when Δ is a cone over one of its vertices."""
    common = ~0
    for f in delta.facet_masks:
        common &= f
    return bool(delta.facets) and common != 0


def cone(delta: SimplicialComplex, v: int) -> SimplicialComplex:
    """⟨F ∪ {v} : F ∈ F(Δ)⟩."""
    bit = 1 << (v - 1)
    return SimplicialComplex.from_masks(delta.r, (f | bit for f in delta.facet_masks))


def is_matroid(delta: SimplicialComplex) -> bool:
    """True when every restriction Δ[σ], σ ⊆ V(Δ), is pure."""
    if delta.is_void:
        msg = "matroid test needs a non-void complex"
        raise InvalidComplexError(msg)
    support = mask_of(vertex_set(delta))
    sub = support
    while True:
        restricted = maximal_masks(f & sub for f in delta.facet_masks)
        if len({m.bit_count() for m in restricted}) > 1:
            return False
        if sub == 0:
            return True
        sub = (sub - 1) & support


def minimal_nonface_masks(delta: SimplicialComplex) -> list[int]:
    """Minimal subsets of 1..r that are not faces of Δ."""
    all_faces = face_masks(delta.facet_masks)
    found: list[int] = []
    for m in range(1 << delta.r):
        if m in all_faces:
            continue
        if all((m & ~(1 << b)) in all_faces for b in range(delta.r) if m >> b & 1):
            found.append(m)
    return found


def alexander_dual(delta: SimplicialComplex) -> SimplicialComplex:
    """Δ* = {V ∖ τ : τ ∉ Δ}: facets are complements of minimal non-faces."""
    if delta.is_void:
        msg = "the Alexander dual of the void complex is not taken"
        raise InvalidComplexError(msg)
    full = (1 << delta.r) - 1
    return SimplicialComplex.from_masks(delta.r, (full & ~m for m in minimal_nonface_masks(delta)))


def independence_complex(graph: Graph) -> SimplicialComplex:
    """Δ(G): facets are the maximal independent sets."""
    edge_masks = [mask_of(e) for e in graph.edges]
    independent = (
        m for m in range(1 << graph.r) if not any(e & m == e for e in edge_masks)
    )
    return SimplicialComplex.from_masks(graph.r, independent)


def dual_hypergraph(hypergraph: Hypergraph) -> Hypergraph:
    """H*: the edges are the minimal vertex covers of H."""
    if not hypergraph.edges:
        msg = "the dual of an edgeless hypergraph is undefined"
        raise InvalidHypergraphError(msg)
    edge_masks = [mask_of(e) for e in hypergraph.edges]
    covers = (m for m in range(1, 1 << hypergraph.r) if all(m & e for e in edge_masks))
    return Hypergraph(hypergraph.r, tuple(face_of(m) for m in minimal_masks(covers)))


def _relabel(sets: Iterable[Face], perm: Sequence[int]) -> tuple[Face, ...]:
    return canonical_sets((perm[v - 1] for v in s) for s in sets)


def canonical_under_relabelling(r: int, sets: Sequence[Face]) -> tuple[Face, ...]:
    """Minimum canonical form of a set family over all vertex permutations."""
    if r > MAX_ISO_VERTICES:
        msg = f"isomorphism reduction supports at most {MAX_ISO_VERTICES} vertices, got {r}"
        raise ValueError(msg)
    return min(_relabel(sets, perm) for perm in permutations(range(1, r + 1)))


def iso_canonical_form[T: (SimplicialComplex, Graph, Hypergraph)](obj: T) -> T:
    """The isomorphism-class representative of a complex, graph or hypergraph."""
    if isinstance(obj, SimplicialComplex):
        return SimplicialComplex(obj.r, canonical_under_relabelling(obj.r, obj.facets))
    if isinstance(obj, Graph):
        edges = canonical_under_relabelling(obj.r, obj.edges)
        return Graph(obj.r, tuple((e[0], e[1]) for e in edges))
    return Hypergraph(obj.r, canonical_under_relabelling(obj.r, obj.edges))


def iter_subsets(vertices: Sequence[int]) -> Iterator[Face]:
    """All subsets of ``vertices`` by increasing size."""
    for k in range(len(vertices) + 1):
        yield from combinations(vertices, k)
