# -*- coding: utf-8 -*-
import logging
from dataclasses import dataclass
from enum import Enum
from pathlib import Path
from typing import Tuple

import networkx as nx
from networkx.drawing.nx_pydot import to_pydot

from mf_reduction.errors import BadDepth, InconsistentTrace
from mf_reduction.presentation import Element

logger = logging.getLogger(__name__)

BASE_POINT = "*"


class NodeRole(Enum):
    BOUNDARY = "boundary"
    SPRING = "spring"
    WELL = "well"
    FOUR_PRONG = "four-prong"
    INTERIOR = "interior"


ROLE_COLORS = {
    NodeRole.BOUNDARY: "black",
    NodeRole.SPRING: "blue",
    NodeRole.WELL: "red",
    NodeRole.FOUR_PRONG: "green",
    NodeRole.INTERIOR: "gray",
}


@dataclass
class Tile:
    ''' one R_i^max application; trivial ones (x = 1) add no node '''
    level: int
    parameter: Element
    complement: Element
    nodes: Tuple[str, ...] = ()


class DiagramGraph:
    '''
        directed graph with a base point, edges optionally labeled by monoid elements.
        node and edge insertion order is kept in an "order" attribute so rendering is stable.
    '''

    def __init__(self):
        self.g = nx.MultiDiGraph()
        self.base = BASE_POINT
        self.boundary = [BASE_POINT]
        self.tiles = []
        self.copies = []
        self._order = 0
        self.add_node(BASE_POINT, NodeRole.BOUNDARY)

    def _next_order(self):
        self._order += 1
        return self._order

    def add_node(self, node, role=NodeRole.INTERIOR, **attr):
        if node in self.g.nodes:
            raise InconsistentTrace("node %s added twice" % node)
        self.g.add_node(node, role=role, order=self._next_order(), **attr)

    def add_edge(self, u, v, label=None, **attr):
        if u not in self.g.nodes or v not in self.g.nodes:
            raise InconsistentTrace("edge %s -> %s between unknown nodes" % (u, v))
        return self.g.add_edge(u, v, label=label, order=self._next_order(), **attr)

    def role(self, node):
        return self.g.nodes[node]["role"]

    def set_role(self, node, role):
        self.g.nodes[node]["role"] = role

    def nodes_with_role(self, role):
        return [n for n, data in self.g.nodes(data=True) if data["role"] is role]

    def write(self, path):
        Path(path).write_text(render_dot(self), encoding="utf-8")


def export_graph(diagram):
    ''' copy with plain string attributes, nodes and edges in insertion order '''
    g = nx.MultiDiGraph(name="G")
    for node, data in sorted(diagram.g.nodes(data=True), key=lambda item: item[1]["order"]):
        role = data["role"]
        g.add_node(node, role=role.value, color=ROLE_COLORS[role])
    for u, v, data in sorted(diagram.g.edges(data=True), key=lambda item: item[2]["order"]):
        if data.get("label") is None:
            g.add_edge(u, v)
        else:
            g.add_edge(u, v, label=str(data["label"]))
    return g


def render_dot(diagram):
    return to_pydot(export_graph(diagram)).to_string()


#~~~~~~~~~ reduction diagrams ~~~~~~~~~

def _check_tile(monoid, step):
    ''' the equalities of one reduction square, and coprime complements for its lcm '''
    i, x, rest = step.level, step.parameter, step.complement
    a, b = step.before, step.after
    equal = monoid.presentation.words_equal
    if i == 1:
        checks = [(b.entry(1).word + x.word, a.entry(1).word), (b.entry(2).word + x.word, a.entry(2).word)]
        coprime = True
    elif i % 2 == 0:
        checks = [(x.word + b.entry(i).word, a.entry(i).word + rest.word),
                  (x.word + b.entry(i + 1).word, a.entry(i + 1).word),
                  (b.entry(i - 1).word, a.entry(i - 1).word + rest.word)]
        coprime = monoid.right_gcd(b.entry(i), rest).is_identity
    else:
        checks = [(b.entry(i).word + x.word, rest.word + a.entry(i).word),
                  (b.entry(i + 1).word + x.word, a.entry(i + 1).word),
                  (b.entry(i - 1).word, rest.word + a.entry(i - 1).word)]
        coprime = monoid.left_gcd(b.entry(i), rest).is_identity
    for lhs, rhs in checks:
        if not equal(lhs, rhs):
            raise InconsistentTrace("tile R %d %s from %s: %s != %s" % (
                i, x, a, monoid.presentation.format_word(lhs), monoid.presentation.format_word(rhs)))
    if not coprime:
        raise InconsistentTrace("tile R %d %s from %s: complements are not coprime" % (i, x, a))


def emit_universal_diagram(monoid, trace):
    '''
        boundary path * = p0, p1, ..., pn reads the initial multifraction: odd entries run p(k-1) -> p(k),
        even entries p(k) -> p(k-1). each application replaces two or three boundary edges by new ones
        through fresh nodes, so the path finally reads the reduced multifraction.
    '''
    diagram = DiagramGraph()
    a = trace.initial
    path = [BASE_POINT]
    entry_edges = {}

    def link(k, u, v, label):
        entry_edges[k] = (u, v, diagram.add_edge(u, v, label))

    for k in range(1, a.depth + 1):
        node = "0.%d" % k
        diagram.add_node(node, NodeRole.BOUNDARY)
        diagram.boundary.append(node)
        path.append(node)
        if k % 2 == 1:
            link(k, path[k - 1], node, a.entry(k))
        else:
            link(k, node, path[k - 1], a.entry(k))

    current = a
    for t, step in enumerate(trace.applications, start=1):
        if step.before != current:
            raise InconsistentTrace("application %d does not start from %s" % (t, current))
        current = step.after
        i, x, rest, b = step.level, step.parameter, step.complement, step.after
        if step.trivial:
            diagram.tiles.append(Tile(i, x, rest))
            continue
        _check_tile(monoid, step)

        q = "%d.%d" % (t, i)
        diagram.add_node(q)
        if i == 1:
            diagram.add_edge(q, path[1], x)
            link(1, path[0], q, b.entry(1))
            link(2, path[2], q, b.entry(2))
            path[1] = q
            diagram.tiles.append(Tile(i, x, rest, (q,)))
            continue

        r = "%d.%d" % (t, i - 1)
        diagram.add_node(r)
        if i % 2 == 0:
            diagram.add_edge(path[i], q, x)
            diagram.add_edge(path[i - 1], r, rest)
            link(i + 1, q, path[i + 1], b.entry(i + 1))
            link(i, q, r, b.entry(i))
            link(i - 1, path[i - 2], r, b.entry(i - 1))
        else:
            diagram.add_edge(q, path[i], x)
            diagram.add_edge(r, path[i - 1], rest)
            link(i + 1, path[i + 1], q, b.entry(i + 1))
            link(i, r, q, b.entry(i))
            link(i - 1, r, path[i - 2], b.entry(i - 1))
        path[i], path[i - 1] = q, r
        diagram.tiles.append(Tile(i, x, rest, (q, r)))

    if trace.final is not None and trace.final.depth == a.depth and current != trace.final:
        raise InconsistentTrace("trace ends at %s, not at %s" % (current, trace.final))
    for u, v, key in entry_edges.values():
        diagram.g.edges[u, v, key]["exit"] = True

    for node in diagram.g.nodes:
        if diagram.role(node) is NodeRole.BOUNDARY:
            continue
        if diagram.g.in_degree(node) == 0:
            diagram.set_role(node, NodeRole.SPRING)
        elif diagram.g.out_degree(node) == 0:
            diagram.set_role(node, NodeRole.WELL)
    logger.debug("diagram for %s: %d tiles, %d nodes", a, len(diagram.tiles), diagram.g.number_of_nodes())
    return diagram


#~~~~~~~~~ universal shapes ~~~~~~~~~

def _orient(diagram, u, v):
    if diagram.g.nodes[u]["source"]:
        diagram.add_edge(u, v)
    else:
        diagram.add_edge(v, u)


def _add_copy(diagram, center, corners):
    ''' a square around a four-prong center: sources point in, sinks are pointed at '''
    diagram.add_node(center, NodeRole.FOUR_PRONG, source=False)
    for corner in corners:
        if diagram.g.nodes[corner]["source"]:
            diagram.add_edge(corner, center)
        else:
            diagram.add_edge(center, corner)
    diagram.copies.append((center, corners))


def gamma_shape(n):
    '''
        the square shape for n = 4; for larger even n, a ring of n - 2 squares around the shape for n - 2,
        closed at the base point. boundary nodes alternate between sources and sinks, starting with the
        base point as a source.
    '''
    if n < 4 or n % 2 == 1:
        raise BadDepth("the universal shape needs an even n >= 4, got %d" % n)
    diagram = DiagramGraph()
    diagram.g.nodes[BASE_POINT]["source"] = True

    for k in range(3):
        diagram.add_node("4.b%d" % k, NodeRole.BOUNDARY, source=(k % 2 == 1))
    boundary = [BASE_POINT, "4.b0", "4.b1", "4.b2"]
    for j in range(4):
        _orient(diagram, boundary[j], boundary[(j + 1) % 4])
    _add_copy(diagram, "4.c1", tuple(boundary))

    for m in range(6, n + 1, 2):
        inner = boundary + [BASE_POINT]
        outer = ["%d.b%d" % (m, k) for k in range(m - 1)]
        for k, node in enumerate(outer):
            diagram.add_node(node, NodeRole.BOUNDARY, source=(k % 2 == 1))
        for k, node in enumerate(outer):
            _orient(diagram, inner[k], node)
        for k in range(1, m - 1):
            _orient(diagram, outer[k - 1], outer[k])
        for k in range(1, m - 1):
            _add_copy(diagram, "%d.c%d" % (m, k), (inner[k - 1], inner[k], outer[k], outer[k - 1]))
        for node in boundary[1:]:
            diagram.set_role(node, NodeRole.SPRING if diagram.g.nodes[node]["source"] else NodeRole.WELL)
        boundary = [BASE_POINT] + outer

    diagram.boundary = boundary
    return diagram


def gamma_counts(diagram):
    ''' the base point is counted among the four-prongs '''
    boundary = set(diagram.boundary)
    return {
        "copies": len(diagram.copies),
        "interior": sum(1 for node in diagram.g.nodes if node not in boundary),
        "wells": len(diagram.nodes_with_role(NodeRole.WELL)),
        "springs": len(diagram.nodes_with_role(NodeRole.SPRING)),
        "four_prongs": len(diagram.nodes_with_role(NodeRole.FOUR_PRONG)) + 1,
    }


def gamma_expected(n):
    return {
        "copies": n * (n - 2) // 4 - 1,
        "interior": n * (n - 3) // 2 - 1,
        "wells": n * (n - 2) // 8 - 1,
        "springs": (n - 2) * (n - 4) // 8,
        "four_prongs": n * (n - 2) // 4,
    }
