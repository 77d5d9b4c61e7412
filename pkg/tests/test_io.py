import pytest
from hypothesis import given

from pluennecke import io
from pluennecke.constructors import independent_addition_graph
from pluennecke.graph import LayeredGraph, path_graph
from pluennecke.regular import build_rk
from strategies import layered_graphs


def test_document_layout():
    text = io.dumps(path_graph(2), "path level=2")
    assert text.splitlines() == [
        "pluennecke-graph v1",
        "provenance path level=2",
        "level 2",
        "layers 1 1 1",
        "edges 0",
        "0 0",
        "edges 1",
        "0 0",
    ]


def test_round_trip_keeps_labels():
    g = independent_addition_graph(2, 3)
    doc = io.loads(io.dumps(g, "independent n=2 level=3"))
    assert doc.graph == g and doc.provenance == "independent n=2 level=3"
    assert doc.graph.labels == g.labels


def test_labels_with_odd_characters():
    g = LayeredGraph([1, 1], [[(0, 0)]], [['a "b"'], ["# not a comment"]])
    assert io.loads(io.dumps(g)).graph == g


@given(layered_graphs(max_level=4, max_width=6))
def test_round_trip_property(g):
    assert io.loads(io.dumps(g)).graph == g
    assert io.loads(io.dumps_adjacency(g)).graph == g


def test_comments_and_blank_lines():
    text = "pluennecke-graph v1\n# hello\n\nlevel 1\nlayers 1 2\nedges 0\n# inside\n0 0\n0 1\n"
    assert io.loads(text).graph.edge_count() == 2


@pytest.mark.parametrize(
    "text,needle",
    [
        ("level 1\nlayers 1 1\n", "line 1"),
        ("pluennecke-graph v1\nlevel 1\nlayers 1 1\nedges 0\n0 x\n", "line 5"),
        ("pluennecke-graph v1\nlevel 1\nlayers 1 1\nedges 0\n0 3\n", "out of range"),
        ("pluennecke-graph v1\nlevel 1\nlayers 1 2\nedges 0\n0 1\n0 0\n", "not sorted"),
        ("pluennecke-graph v1\nlevel 2\nlayers 1 1\n", "needs 3 layer sizes"),
        ("pluennecke-graph v1\nedges 0\n", "before 'level'"),
        ("pluennecke-graph v1\nlevel 1\nlayers 1 1\nedges 3\n", "out of range"),
        ("pluennecke-graph v1\nlevel 1\nlayers 1 1\nbogus\n", "unrecognised"),
        ("", "empty"),
    ],
)
def test_parse_errors_have_context(text, needle):
    with pytest.raises(io.ParseError, match=needle):
        io.loads(text)


def test_invalid_graph_rejected_on_load():
    with pytest.raises(Exception, match="empty|layer"):
        io.loads("pluennecke-graph v1\nlevel 1\nlayers 1 0\n")


def test_adjacency_text():
    g = independent_addition_graph(2, 2)
    text = io.dumps_adjacency(g)
    assert text.splitlines()[0] == "L0_0: L1_0 L1_1"
    assert "L2_2" in text.splitlines()[-1]
    with pytest.raises(io.ParseError, match="missing"):
        io.loads("L0_0: L1_1\nL1_1:\n")
    with pytest.raises(io.ParseError, match="skips"):
        io.loads("L0_0: L2_0\nL1_0:\nL2_0:\n")


def test_dot_export():
    dot = io.to_dot(path_graph(2))
    assert dot.count("rank=same") == 3 and dot.count("->") == 2
    dot = io.to_dot(independent_addition_graph(2, 2))
    nodes = {tok.strip(";") for line in dot.splitlines() if "rank=same" in line for tok in line.split() if tok.startswith("L")}
    assert len(nodes) == 6 and dot.count("->") == 6


def test_file_helpers(tmp_path):
    g = build_rk(2, 2)
    p = tmp_path / "g.txt"
    io.save(g, str(p), "rk")
    assert io.load(str(p)).graph == g
