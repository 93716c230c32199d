"""Matching numbers of graphs, edgewise domination of hypergraphs, and the b-invariant.

Everything here is brute force over small instances.
"""

from __future__ import annotations

from collections.abc import Iterator, Sequence
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
import logging

from .combinatorics import (
    Edge,
    Face,
    Graph,
    Hypergraph,
    InvalidComplexError,
    InvalidHypergraphError,
    SimplicialComplex,
    face_masks,
    independence_complex,
    is_full_simplex,
    mask_of,
)
from .cohomology import reg_links_of_masks
from .exactalg import QQ, FieldSpec

logger = logging.getLogger(__name__)

type OrderedMatching = tuple[tuple[int, int], ...]


@dataclass(frozen=True, slots=True)
class MatchingNumbers:
    """match(G), ν(G) and ordmatch(G) with a witness for each."""

    match: int
    induced: int
    ordered: int
    match_witness: tuple[Edge, ...]
    induced_witness: tuple[Edge, ...]
    ordered_witness: OrderedMatching

    def to_json(self) -> dict[str, object]:
        return {
            "match": self.match,
            "induced_matching": self.induced,
            "ordered_matching": self.ordered,
            "match_witness": [list(e) for e in self.match_witness],
            "induced_witness": [list(e) for e in self.induced_witness],
            "ordered_witness": {
                "u": [u for u, _ in self.ordered_witness],
                "v": [v for _, v in self.ordered_witness],
            },
        }


@dataclass(frozen=True, slots=True)
class BInvariant:
    """b(Δ) and the facet positions of a maximizing subcomplex."""

    value: int
    witness: tuple[int, ...]


def matchings(graph: Graph) -> Iterator[tuple[Edge, ...]]:
    """Every matching of ``graph`` (including the empty one), depth-first over edges."""
    edges = graph.edges

    def extend(start: int, used: int, chosen: tuple[Edge, ...]) -> Iterator[tuple[Edge, ...]]:
        yield chosen
        for k in range(start, len(edges)):
            e = edges[k]
            m = mask_of(e)
            if not used & m:
                yield from extend(k + 1, used | m, (*chosen, e))

    yield from extend(0, 0, ())


def is_induced(graph: Graph, matching: Sequence[Edge]) -> bool:
    """True when the vertices of ``matching`` induce exactly its edges."""
    covered = mask_of(v for e in matching for v in e)
    induced = [e for e in graph.edges if mask_of(e) & covered == mask_of(e)]
    return len(induced) == len(matching)


def _order_matching(graph: Graph, matching: Sequence[Edge]) -> OrderedMatching | None:
    """An ordering and orientation of ``matching`` satisfying the ordered matching rules.

    The u's must be independent and an edge {u_i, v_j} forces i ≤ j.
    """
    size = len(matching)

    def place(remaining: tuple[Edge, ...], placed: OrderedMatching) -> OrderedMatching | None:
        if len(placed) == size:
            return placed
        for k, (a, b) in enumerate(remaining):
            rest = remaining[:k] + remaining[k + 1 :]
            for u, v in ((a, b), (b, a)):
                if any(graph.has_edge(u, pu) for pu, _ in placed):
                    continue
                if any(graph.has_edge(u, pv) for _, pv in placed):
                    continue
                found = place(rest, (*placed, (u, v)))
                if found is not None:
                    return found
        return None

    return place(tuple(matching), ())


def matching_numbers(graph: Graph) -> MatchingNumbers:
    """match, ν and ordmatch of ``graph`` by exhaustive search."""
    by_size: dict[int, list[tuple[Edge, ...]]] = {}
    for m in matchings(graph):
        by_size.setdefault(len(m), []).append(m)
    top = max(by_size)
    best_match = by_size[top][0]

    sizes = sorted(by_size, reverse=True)
    induced = next((m for size in sizes for m in by_size[size] if is_induced(graph, m)), ())

    ordered: OrderedMatching = ()
    for size in sizes:
        found = next(
            (o for m in by_size[size] if (o := _order_matching(graph, m)) is not None), None
        )
        if found is not None:
            ordered = found
            break

    return MatchingNumbers(
        top, len(induced), len(ordered), best_match, tuple(induced), ordered
    )


@lru_cache(maxsize=1 << 14)
def _ordmatch_of_edges(r: int, edges: tuple[Edge, ...]) -> int:
    return matching_numbers(Graph(r, edges)).ordered


def ordmatch(graph: Graph) -> int:
    return _ordmatch_of_edges(graph.r, graph.edges)


def ordmatch_reduction_violation(graph: Graph) -> tuple[Face, int] | None:
    """First (S, v) breaking ordmatch(H ∖ N_H[v]) + 1 ≤ ordmatch(H) for H = G ∖ N_G[S].

    S ranges over the independent sets of G and v over the non-isolated vertices
    of H. Trivial graphs count as 0.
    """
    delta = independence_complex(graph)
    for s_mask in sorted(face_masks(delta.facet_masks), key=lambda m: (m.bit_count(), m)):
        s = tuple(v + 1 for v in range(graph.r) if s_mask >> v & 1)
        h = graph.delete_closed_neighborhood(s)
        f_h = ordmatch(h)
        for v in h.non_isolated():
            if ordmatch(h.delete_closed_neighborhood((v,))) + 1 > f_h:
                return s, v
    return None


def ordmatch_reduction_holds(graph: Graph) -> bool:
    return ordmatch_reduction_violation(graph) is None


def is_edgewise_dominant(hypergraph: Hypergraph, chosen: Sequence[Face]) -> bool:
    """Check S against the domination rule.

    Vertices in ⋃S or in a trivial edge are exempt. Every other non-isolated vertex
    needs a neighbor (a distinct vertex sharing an edge) inside ⋃S.
    """
    union = mask_of(v for e in chosen for v in e)
    exempt = union | mask_of(hypergraph.trivial_vertices())
    for v in hypergraph.non_isolated():
        bit = 1 << (v - 1)
        if exempt & bit:
            continue
        if not any((mask_of(e) & ~bit) & union for e in hypergraph.edges if v in e):
            return False
    return True


def epsilon_witness(hypergraph: Hypergraph) -> tuple[Face, ...]:
    """A smallest edgewise dominant edge set."""
    if not hypergraph.edges:
        msg = "ε is undefined for an edgeless hypergraph"
        raise InvalidHypergraphError(msg)
    for size in range(len(hypergraph.edges) + 1):
        for chosen in combinations(hypergraph.edges, size):
            if is_edgewise_dominant(hypergraph, chosen):
                return chosen
    # E(H) itself always dominates: every non-isolated vertex lies in ⋃E(H).
    msg = "no edgewise dominant set found"
    raise AssertionError(msg)


def epsilon(hypergraph: Hypergraph) -> int:
    """ε(H): the size of a smallest edgewise dominant set."""
    return len(epsilon_witness(hypergraph))


def b_invariant(delta: SimplicialComplex, field: FieldSpec = QQ) -> BInvariant:
    """max reg(I_Γ) over complexes Γ generated by nonempty sets of facets of Δ."""
    if delta.is_void:
        msg = "b is undefined for the void complex"
        raise InvalidComplexError(msg)
    if is_full_simplex(delta):
        msg = "b is undefined for the full simplex"
        raise InvalidComplexError(msg)
    facets = delta.facet_masks
    best: BInvariant | None = None
    for chooser in range(1, 1 << len(facets)):
        chosen = tuple(sorted(f for k, f in enumerate(facets) if chooser >> k & 1))
        value = reg_links_of_masks(chosen, field) + 1
        if best is None or value > best.value:
            positions = tuple(k for k in range(len(facets)) if chooser >> k & 1)
            best = BInvariant(value, positions)
    if best is None:
        msg = "complex without facets"
        raise InvalidComplexError(msg)
    logger.debug("b-invariant over %d facet subsets: %d", (1 << len(facets)) - 1, best.value)
    return best
