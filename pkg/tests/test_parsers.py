"""
Unit tests for the parsers module.

This module tests JSON instance decoding, error positions, instance keys and
the exact-value encoding used in reports.
"""

from fractions import Fraction
import pathlib
import tempfile
import unittest


class TestParseComplex(unittest.TestCase):
    """Test cases for parse_complex."""

    def test_parse_valid_complex(self) -> None:
        """
        Test that facets are read and put in canonical order.
        """
        from symreg.parsers import parse_complex

        delta = parse_complex('{"r": 3, "facets": [[3, 1], [2]]}')
        assert delta.r == 3
        assert delta.facets == ((2,), (1, 3))

    def test_syntax_error_has_position(self) -> None:
        """
        Test that broken JSON reports its line and column.
        """
        from symreg.parsers import InstanceParseError, parse_complex

        with self.assertRaises(InstanceParseError) as ctx:
            parse_complex('{"r": 3,\n "facets": [[1, 2],]}', "broken.json")
        assert ctx.exception.source == "broken.json"
        assert ctx.exception.line == 2
        assert ctx.exception.column is not None
        assert str(ctx.exception).startswith("broken.json:2:")

    def test_missing_field_has_path(self) -> None:
        """
        Test that a missing or mistyped field names its JSON path.
        """
        from symreg.parsers import InstanceParseError, parse_complex

        with self.assertRaises(InstanceParseError) as ctx:
            parse_complex('{"facets": [[1]]}')
        assert ctx.exception.path == "$.r"

        with self.assertRaises(InstanceParseError) as ctx:
            parse_complex('{"r": 2, "facets": [[1], ["2"]]}')
        assert ctx.exception.path == "$.facets[1]"

    def test_boolean_is_not_an_integer(self) -> None:
        """
        Test that JSON booleans are rejected where integers are expected.
        """
        from symreg.parsers import InstanceParseError, parse_complex

        with self.assertRaises(InstanceParseError):
            parse_complex('{"r": true, "facets": [[1]]}')

    def test_top_level_must_be_object(self) -> None:
        """
        Test that a JSON array is refused.
        """
        from symreg.parsers import InstanceParseError, parse_complex

        with self.assertRaises(InstanceParseError) as ctx:
            parse_complex("[1, 2]")
        assert ctx.exception.path == "$"

    def test_domain_errors_are_wrapped(self) -> None:
        """
        Test that non-antichains and out-of-range vertices become parse errors.
        """
        from symreg.parsers import InstanceParseError, parse_complex

        for text in (
            '{"r": 3, "facets": [[1, 2], [1]]}',
            '{"r": 2, "facets": [[1, 3]]}',
            '{"r": 0, "facets": [[]]}',
        ):
            with self.assertRaises(InstanceParseError) as ctx:
                parse_complex(text)
            assert ctx.exception.path == "$.facets"

    def test_void_complex_rejected(self) -> None:
        """
        Test that an empty facet list is refused while {∅} is accepted.
        """
        from symreg.parsers import InstanceParseError, parse_complex

        with self.assertRaises(InstanceParseError):
            parse_complex('{"r": 2, "facets": []}')
        assert parse_complex('{"r": 2, "facets": [[]]}').facets == ((),)


class TestParseGraphsAndIdeals(unittest.TestCase):
    """Test cases for graph, hypergraph and ideal parsing."""

    def test_parse_graph(self) -> None:
        """
        Test graph parsing and loop rejection.
        """
        from symreg.parsers import InstanceParseError, parse_graph

        graph = parse_graph('{"r": 3, "edges": [[2, 1], [2, 3]]}')
        assert graph.edges == ((1, 2), (2, 3))
        with self.assertRaises(InstanceParseError):
            parse_graph('{"r": 3, "edges": [[1, 1]]}')

    def test_parse_hypergraph(self) -> None:
        """
        Test hypergraph parsing and the clutter condition.
        """
        from symreg.parsers import InstanceParseError, parse_hypergraph

        assert parse_hypergraph('{"r": 3, "edges": [[1, 2, 3]]}').edges == ((1, 2, 3),)
        with self.assertRaises(InstanceParseError):
            parse_hypergraph('{"r": 3, "edges": [[1], [1, 2]]}')

    def test_parse_ideal_minimalizes(self) -> None:
        """
        Test that ideal generators are reduced to a minimal set.
        """
        from symreg.parsers import parse_ideal

        ideal = parse_ideal('{"r": 2, "generators": [[1, 1], [1, 0]]}')
        assert ideal.generators == ((1, 0),)

    def test_load_instance_from_file(self) -> None:
        """
        Test reading a complex from a UTF-8 file, with the file name in errors.
        """
        from symreg.parsers import InstanceParseError, load_instance

        with tempfile.TemporaryDirectory() as tmp:
            good = pathlib.Path(tmp) / "path.json"
            good.write_text('{"r": 3, "facets": [[1, 3], [2]]}', encoding="utf-8")
            assert load_instance(good, "complex").facets == ((2,), (1, 3))

            bad = pathlib.Path(tmp) / "bad.json"
            bad.write_text("{", encoding="utf-8")
            with self.assertRaises(InstanceParseError) as ctx:
                load_instance(bad, "graph")
            assert ctx.exception.source == str(bad)


class TestInstanceKeys(unittest.TestCase):
    """Test cases for instance keys and the report round trip."""

    def test_instance_key_is_canonical(self) -> None:
        """
        Test that equal instances given in different orders share a key.
        """
        from symreg.combinatorics import SimplicialComplex
        from symreg.parsers import instance_key

        a = SimplicialComplex(3, ((1, 3), (2,)))
        b = SimplicialComplex(3, ((2,), (3, 1)))
        assert instance_key(a) == instance_key(b)
        assert instance_key(a) == '{"facets":[[2],[1,3]],"kind":"complex","r":3}'

    def test_instance_from_json(self) -> None:
        """
        Test that reproducers decode back into the same instance.
        """
        from symreg.combinatorics import Graph, Hypergraph
        from symreg.parsers import instance_from_json, instance_kind, instance_to_json

        for instance in (Graph(3, ((1, 2),)), Hypergraph(3, ((1, 2, 3),))):
            data = instance_to_json(instance)
            assert data["kind"] == instance_kind(instance)
            assert instance_from_json(data) == instance

    def test_unknown_kind_rejected(self) -> None:
        """
        Test that an unknown reproducer kind raises InstanceParseError.
        """
        from symreg.parsers import InstanceParseError, instance_from_json

        with self.assertRaises(InstanceParseError):
            instance_from_json({"kind": "matrix", "r": 2})


class TestExactValues(unittest.TestCase):
    """Test cases for exact_str and exact_json."""

    def test_exact_str(self) -> None:
        """
        Test integers, fractions, integral fractions and −∞.
        """
        from symreg.parsers import exact_str

        assert exact_str(3) == "3"
        assert exact_str(Fraction(1, 2)) == "1/2"
        assert exact_str(Fraction(4, 2)) == "2"
        assert exact_str(None) == "-inf"

    def test_exact_json(self) -> None:
        """
        Test that only plain integers stay numbers.
        """
        from symreg.parsers import exact_json

        assert exact_json(5) == 5
        assert exact_json(Fraction(5, 3)) == "5/3"
        assert exact_json(None) == "-inf"


if __name__ == "__main__":
    unittest.main()
