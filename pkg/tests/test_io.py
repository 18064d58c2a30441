"""Edge-list parsing, GraphML import, DOT export."""

import pytest

from keeptree.errors import ParseError
from keeptree.families import petersen
from keeptree.io import (
    format_edge_list,
    load_graph,
    load_tree,
    parse_edge_list,
    parse_graphml,
    to_dot,
)

GRAPHML_SAMPLE = """<?xml version="1.0" encoding="UTF-8"?>
<graphml xmlns="http://graphml.graphdrawing.org/xmlns">
  <graph id="G" edgedefault="undirected">
    <node id="a"/>
    <node id="b"/>
    <node id="c"/>
    <edge source="a" target="b"/>
    <edge source="b" target="c"/>
  </graph>
</graphml>
"""


class TestEdgeList:
    def test_basic(self):
        g = parse_edge_list("# a comment\n3\n0 1\n1 2\n")
        assert g.n == 3 and g.edges() == [(0, 1), (1, 2)]

    def test_blank_lines_and_comments(self):
        g = parse_edge_list("\n# c\n\n2\n\n0 1\n")
        assert g.edge_count == 1

    def test_missing_count(self):
        with pytest.raises(ParseError, match="missing vertex count"):
            parse_edge_list("# nothing here\n")

    def test_bad_count_line(self):
        with pytest.raises(ParseError, match="line 1"):
            parse_edge_list("x\n0 1\n")

    def test_bad_edge_token(self):
        with pytest.raises(ParseError, match="line 2"):
            parse_edge_list("3\n0 one\n")

    def test_out_of_range(self):
        with pytest.raises(ParseError, match="line 2.*range"):
            parse_edge_list("2\n0 5\n")

    def test_self_loop(self):
        with pytest.raises(ParseError, match="self-loop"):
            parse_edge_list("2\n1 1\n")

    def test_duplicate_edge_rejected(self):
        with pytest.raises(ParseError, match="line 3.*duplicate"):
            parse_edge_list("2\n0 1\n1 0\n")

    def test_round_trip(self):
        g = petersen()
        assert parse_edge_list(format_edge_list(g, comment="petersen")) == g


class TestGraphML:
    def test_import_document_order(self):
        g = parse_graphml(GRAPHML_SAMPLE)
        assert g.n == 3 and g.edges() == [(0, 1), (1, 2)]

    def test_unknown_endpoint(self):
        bad = GRAPHML_SAMPLE.replace('target="c"', 'target="zz"')
        with pytest.raises(ParseError, match="unknown node"):
            parse_graphml(bad)

    def test_invalid_xml(self):
        with pytest.raises(ParseError, match="invalid GraphML"):
            parse_graphml("<graphml>")


class TestDot:
    def test_export(self, c4):
        text = to_dot(c4)
        assert text.startswith("graph keeptree {")
        assert "  0 -- 1;" in text and "  3;" in text


class TestLoaders:
    def test_load_graph_by_extension(self, tmp_path):
        edge_path = tmp_path / "g.txt"
        edge_path.write_text("2\n0 1\n")
        assert load_graph(edge_path).edge_count == 1
        xml_path = tmp_path / "g.graphml"
        xml_path.write_text(GRAPHML_SAMPLE)
        assert load_graph(xml_path).n == 3

    def test_load_tree_validates(self, tmp_path):
        path = tmp_path / "t.txt"
        path.write_text("3\n0 1\n1 2\n0 2\n")
        with pytest.raises(ParseError, match="not a tree"):
            load_tree(path)

    def test_missing_file(self, tmp_path):
        with pytest.raises(ParseError, match="cannot read"):
            load_graph(tmp_path / "absent.txt")
