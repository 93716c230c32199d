"""JSON instance decoding and exact-value encoding.

Instances are single JSON objects: ``{"r": 3, "facets": [[1, 2], [2, 3]]}`` for
complexes, ``{"r": 3, "edges": [[1, 2], [2, 3]]}`` for graphs and hypergraphs,
``{"r": 3, "generators": [[1, 1, 0]]}`` for monomial ideals.
"""

from __future__ import annotations

from fractions import Fraction
import json
from pathlib import Path
from typing import Any, Literal

from .combinatorics import (
    Graph,
    Hypergraph,
    InvalidComplexError,
    InvalidGraphError,
    InvalidHypergraphError,
    SimplicialComplex,
)
from .ideals import InvalidIdealError, MonomialIdeal

type InstanceKind = Literal["complex", "graph", "hypergraph"]
type Instance = SimplicialComplex | Graph | Hypergraph
type ExactValue = int | Fraction | None

# Validation failures inside a well-formed JSON document.
_DOMAIN_ERRORS = (InvalidComplexError, InvalidGraphError, InvalidHypergraphError, InvalidIdealError)


class InstanceParseError(ValueError):
    """Malformed instance input, with the position of the problem when known."""

    def __init__(
        self,
        message: str,
        *,
        source: str = "<input>",
        line: int | None = None,
        column: int | None = None,
        path: str | None = None,
    ) -> None:
        self.source = source
        self.line = line
        self.column = column
        self.path = path
        where = source
        if line is not None:
            where = f"{where}:{line}:{column}"
        if path is not None:
            where = f"{where}: at {path}"
        super().__init__(f"{where}: {message}")


def _load(text: str, source: str) -> dict[str, Any]:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        line, column = exc.lineno, exc.colno
        raise InstanceParseError(exc.msg, source=source, line=line, column=column) from exc
    if not isinstance(data, dict):
        msg = f"expected a JSON object, got {type(data).__name__}"
        raise InstanceParseError(msg, source=source, path="$")
    return data


def _int_field(data: dict[str, Any], key: str, source: str) -> int:
    value = data.get(key)
    if not isinstance(value, int) or isinstance(value, bool):
        msg = f"field {key!r} must be an integer"
        raise InstanceParseError(msg, source=source, path=f"$.{key}")
    return value


def _int_lists(data: dict[str, Any], key: str, source: str) -> list[list[int]]:
    value = data.get(key)
    if not isinstance(value, list):
        msg = f"field {key!r} must be a list of integer lists"
        raise InstanceParseError(msg, source=source, path=f"$.{key}")
    out: list[list[int]] = []
    for k, item in enumerate(value):
        if not isinstance(item, list) or not all(
            isinstance(x, int) and not isinstance(x, bool) for x in item
        ):
            msg = "expected a list of integers"
            raise InstanceParseError(msg, source=source, path=f"$.{key}[{k}]")
        out.append(item)
    return out


def parse_complex(text: str, source: str = "<input>") -> SimplicialComplex:
    data = _load(text, source)
    r = _int_field(data, "r", source)
    facets = _int_lists(data, "facets", source)
    try:
        delta = SimplicialComplex(r, tuple(tuple(f) for f in facets))
    except _DOMAIN_ERRORS as exc:
        raise InstanceParseError(str(exc), source=source, path="$.facets") from exc
    if delta.is_void:
        msg = "the void complex is not accepted as input"
        raise InstanceParseError(msg, source=source, path="$.facets")
    return delta


def parse_graph(text: str, source: str = "<input>") -> Graph:
    data = _load(text, source)
    r = _int_field(data, "r", source)
    edges = _int_lists(data, "edges", source)
    try:
        return Graph(r, tuple(tuple(e) for e in edges))  # type: ignore[arg-type]
    except _DOMAIN_ERRORS as exc:
        raise InstanceParseError(str(exc), source=source, path="$.edges") from exc


def parse_hypergraph(text: str, source: str = "<input>") -> Hypergraph:
    data = _load(text, source)
    r = _int_field(data, "r", source)
    edges = _int_lists(data, "edges", source)
    try:
        return Hypergraph(r, tuple(tuple(e) for e in edges))
    except _DOMAIN_ERRORS as exc:
        raise InstanceParseError(str(exc), source=source, path="$.edges") from exc


def parse_ideal(text: str, source: str = "<input>") -> MonomialIdeal:
    data = _load(text, source)
    r = _int_field(data, "r", source)
    gens = _int_lists(data, "generators", source)
    try:
        return MonomialIdeal.generated_by(r, gens)
    except _DOMAIN_ERRORS as exc:
        raise InstanceParseError(str(exc), source=source, path="$.generators") from exc


_PARSERS = {
    "complex": parse_complex,
    "graph": parse_graph,
    "hypergraph": parse_hypergraph,
}


def load_instance(path: Path | str, kind: InstanceKind) -> Instance:
    """Read and parse an instance file (UTF-8)."""
    p = Path(path)
    return _PARSERS[kind](p.read_text(encoding="utf-8"), str(p))


def instance_kind(instance: Instance) -> InstanceKind:
    match instance:
        case SimplicialComplex():
            return "complex"
        case Graph():
            return "graph"
        case _:
            return "hypergraph"


def instance_to_json(instance: Instance) -> dict[str, object]:
    return {"kind": instance_kind(instance), **instance.to_json()}


def instance_from_json(data: dict[str, Any]) -> Instance:
    """Inverse of :func:`instance_to_json` for report reproducers."""
    kind = data.get("kind")
    if kind not in _PARSERS:
        msg = f"unknown instance kind {kind!r}"
        raise InstanceParseError(msg, path="$.kind")
    payload = {k: v for k, v in data.items() if k != "kind"}
    return _PARSERS[kind](json.dumps(payload))


def instance_key(instance: Instance) -> str:
    """Canonical one-line JSON naming the instance."""
    return json.dumps(instance_to_json(instance), sort_keys=True, separators=(",", ":"))


def exact_str(value: ExactValue) -> str:
    """Exact text for an integer, a fraction or −∞ (``None``)."""
    if value is None:
        return "-inf"
    if isinstance(value, Fraction):
        if value.denominator == 1:
            return str(value.numerator)
        return f"{value.numerator}/{value.denominator}"
    return str(value)


def exact_json(value: ExactValue) -> int | str:
    """Integers stay integers; fractions and −∞ become strings."""
    if isinstance(value, int) and not isinstance(value, bool):
        return value
    return exact_str(value)


def dumps(payload: object) -> str:
    return json.dumps(payload, sort_keys=False, ensure_ascii=False)
