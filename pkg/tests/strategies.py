"""Hypothesis strategies for small complexes, graphs and hypergraphs."""

from itertools import combinations

from hypothesis import strategies as st

from symreg.combinatorics import Graph, Hypergraph, SimplicialComplex


@st.composite
def complexes(draw: st.DrawFn, min_r: int = 1, max_r: int = 4) -> SimplicialComplex:
    """A non-void complex on 1..r generated by a few random sets."""
    r = draw(st.integers(min_value=min_r, max_value=max_r))
    sets = draw(
        st.lists(st.frozensets(st.integers(min_value=1, max_value=r)), min_size=1, max_size=5)
    )
    return SimplicialComplex.generated_by(r, sets)


@st.composite
def proper_complexes(draw: st.DrawFn, min_r: int = 1, max_r: int = 4) -> SimplicialComplex:
    """A complex whose Stanley–Reisner ideal is nonzero."""
    delta = draw(complexes(min_r, max_r))
    full = tuple(range(1, delta.r + 1))
    if delta.facets == (full,):
        return SimplicialComplex.generated_by(delta.r, [full[:-1]])
    return delta


@st.composite
def graphs(draw: st.DrawFn, min_r: int = 1, max_r: int = 5) -> Graph:
    r = draw(st.integers(min_value=min_r, max_value=max_r))
    pairs = list(combinations(range(1, r + 1), 2))
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True)) if pairs else []
    return Graph(r, tuple(chosen))


@st.composite
def hypergraphs(draw: st.DrawFn, min_r: int = 1, max_r: int = 4) -> Hypergraph:
    """A clutter: the minimal members of a random family of nonempty sets."""
    r = draw(st.integers(min_value=min_r, max_value=max_r))
    family = draw(
        st.lists(
            st.frozensets(st.integers(min_value=1, max_value=r), min_size=1),
            min_size=1,
            max_size=5,
        )
    )
    minimal = [e for e in set(family) if not any(o < e for o in family)]
    return Hypergraph(r, tuple(tuple(sorted(e)) for e in minimal))
