import json
from pathlib import Path

import pytest
from hypothesis import given

from conftest import graphs
from racgkit.constructions import behrstock_ladder
from racgkit.io import GraphFormatError, graph_to_dot, graph_to_json, load_graph, parse_graph

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"


@given(graphs(1, 8))
def test_json_round_trip(g):
    assert parse_graph(graph_to_json(g)) == g


def test_bundled_fixtures_load():
    assert load_graph(FIXTURES / "ladder13.json") == behrstock_ladder(13)
    assert len(load_graph(FIXTURES / "c4.json").edges) == 4


@pytest.mark.parametrize("text, line, fragment", [
    ("", 1, "empty input"),
    ('{"vertices": ["a"]}', 1, "missing 'edges'"),
    ('{\n "vertices": ["a", "b"],\n "edges": [\n  ["a", "b"],\n  ["a", "c"]\n ]\n}', 5, "unknown endpoint"),
    ('{\n "vertices": ["a",\n "a"],\n "edges": []\n}', 3, "duplicate vertex"),
    ('{\n "vertices": ["a"],\n "edges": [["a", "a"]]\n}', 3, "self-loop"),
    ('{"vertices": [], "edges": []} x', 1, "trailing"),
])
def test_parse_errors_carry_line_numbers(text, line, fragment):
    with pytest.raises(GraphFormatError) as exc:
        parse_graph(text)
    assert exc.value.line == line
    assert fragment in str(exc.value)


def test_dot_output_is_deterministic():
    g = behrstock_ladder(3)
    assert graph_to_dot(g) == graph_to_dot(behrstock_ladder(3))
    assert graph_to_dot(g).startswith('graph "G" {')
    assert '"a1" -- "a2";' in graph_to_dot(g)


def test_json_is_plain_json():
    data = json.loads(graph_to_json(behrstock_ladder(2)))
    assert data["vertices"] == ["a1", "a2", "b1", "b2"]
