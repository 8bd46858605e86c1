import pydot
import pytest

from mf_reduction.diagram import (DiagramGraph, NodeRole, emit_universal_diagram, export_graph, gamma_counts,
                                  gamma_expected, gamma_shape, render_dot)
from mf_reduction.errors import BadDepth, InconsistentTrace
from mf_reduction.multifraction import Multifraction
from mf_reduction.reduction import ReductionTrace

GAMMA_4_NODES = [
    ("*", "boundary", "black"),
    ("4.b0", "boundary", "black"),
    ("4.b1", "boundary", "black"),
    ("4.b2", "boundary", "black"),
    ("4.c1", "four-prong", "green"),
]

GAMMA_4_EDGES = [
    ("*", "4.b0", None),
    ("4.b1", "4.b0", None),
    ("4.b1", "4.b2", None),
    ("*", "4.b2", None),
    ("*", "4.c1", None),
    ("4.c1", "4.b0", None),
    ("4.b1", "4.c1", None),
    ("4.c1", "4.b2", None),
]


def unquote(value):
    return None if value is None else str(value).strip('"')


def read_dot(text):
    ''' (nodes, edges) of DOT text, nodes in file order, edges sorted '''
    graphs = pydot.graph_from_dot_data(text)
    assert len(graphs) == 1
    dot = graphs[0]
    nodes = [(unquote(n.get_name()), unquote(n.get_attributes().get("role")), unquote(n.get_attributes().get("color")))
             for n in dot.get_nodes() if unquote(n.get_name()) not in ("node", "edge", "graph")]
    edges = sorted(((unquote(e.get_source()), unquote(e.get_destination()), unquote(e.get_attributes().get("label")))
                    for e in dot.get_edges()), key=str)
    return nodes, edges


def test_empty_graph():
    text = render_dot(DiagramGraph())
    assert text.lstrip().startswith("digraph")
    assert read_dot(text) == ([("*", "boundary", "black")], [])
    diagram = DiagramGraph()
    with pytest.raises(InconsistentTrace):
        diagram.add_node("*")
    with pytest.raises(InconsistentTrace):
        diagram.add_edge("*", "nowhere")


def test_gamma_4_golden():
    g = export_graph(gamma_shape(4))
    assert [(n, data["role"], data["color"]) for n, data in g.nodes(data=True)] == GAMMA_4_NODES
    assert sorted(g.edges()) == sorted((u, v) for u, v, _ in GAMMA_4_EDGES)
    text = render_dot(gamma_shape(4))
    assert text == render_dot(gamma_shape(4))
    assert read_dot(text) == (GAMMA_4_NODES, sorted(GAMMA_4_EDGES, key=str))


@pytest.mark.parametrize("n,counts", [
    (4, dict(copies=1, interior=1, wells=0, springs=0, four_prongs=2)),
    (6, dict(copies=5, interior=8, wells=2, springs=1, four_prongs=6)),
    (8, dict(copies=11, interior=19, wells=5, springs=3, four_prongs=12)),
    (10, dict(copies=19, interior=34, wells=9, springs=6, four_prongs=20)),
])
def test_gamma_counts(n, counts):
    diagram = gamma_shape(n)
    assert gamma_counts(diagram) == counts == gamma_expected(n)
    assert len(diagram.boundary) == n


def test_gamma_rejects_odd_or_small_sizes():
    for n in (2, 5, 7):
        with pytest.raises(BadDepth):
            gamma_shape(n)


def test_reduction_diagram(braid3):
    a = Multifraction.parse("a/aba/b", braid3.presentation)
    _, trace = braid3.reduce_universal(a)
    diagram = emit_universal_diagram(braid3.monoid, trace)
    assert len(diagram.tiles) == 2
    assert [tile.nodes for tile in diagram.tiles] == [("1.1",), ("2.2", "2.1")]
    assert diagram.g.number_of_nodes() == 7
    assert diagram.g.number_of_edges() == 11
    exits = [data for _, _, data in diagram.g.edges(data=True) if data.get("exit")]
    assert sorted(str(data["label"]) for data in exits) == ["1", "a", "ab"]
    assert diagram.nodes_with_role(NodeRole.WELL) == ["2.1"]
    _, edges = read_dot(render_dot(diagram))
    assert len(edges) == 11
    assert ("0.2", "0.1", "aba") in edges
    assert ("0.1", "0.2", "aba") not in edges
    for _, _, label in edges:
        if label is not None:
            assert str(braid3.monoid.element(label)) == label


def test_depth_six_diagram_has_nine_tiles(braid3, tmp_path):
    a = Multifraction.parse("a/a/1/1/1/1", braid3.presentation)
    _, trace = braid3.reduce_universal(a)
    diagram = emit_universal_diagram(braid3.monoid, trace)
    assert len(diagram.tiles) == 9
    assert sum(1 for tile in diagram.tiles if tile.nodes) == 1
    path = tmp_path / "diagram.dot"
    diagram.write(path)
    assert path.read_text(encoding="utf-8") == render_dot(diagram)


def test_inconsistent_trace(braid3):
    a = Multifraction.parse("a/aba/b", braid3.presentation)
    _, trace = braid3.reduce_universal(a)
    broken = ReductionTrace(Multifraction.parse("b/aba/b", braid3.presentation), trace.applications, trace.steps, trace.final)
    with pytest.raises(InconsistentTrace):
        emit_universal_diagram(braid3.monoid, broken)
