"""Explanation graphs: merge support tables, build, validate, serialize.

The rule-support and constraint-support tables are merged key-wise into a
single table E.  An explanation graph for a literal picks exactly one
supported set per reachable node; edge labels follow the target node's
kind.  Cycle safety: after dropping the side-condition edges into
triggered-constraint nodes, every edge inside a strongly connected
component must be a minus edge, so positive support is acyclic.
"""

from __future__ import annotations

import hashlib
import json
import os
from dataclasses import dataclass, field

from . import nodes
from .errors import NoValidGraph, UnknownLiteral

DEFAULT_MAX_GRAPHS = 64
MAX_GRAPHS_ENV = "ASPEXPLAIN_MAX_GRAPHS"


@dataclass(frozen=True)
class EEdge:
    source: nodes.ENode
    target: nodes.ENode
    label: str


@dataclass(eq=False)
class ExplanationGraph:
    root: nodes.ENode
    nodes: tuple[nodes.ENode, ...]
    edges: tuple[EEdge, ...]
    _doc_cache: dict | None = field(default=None, repr=False)

    def doc(self) -> dict:
        """Serializable form; also the basis of structural equality."""
        if self._doc_cache is None:
            ids = {n: _node_id(n) for n in self.nodes}
            self._doc_cache = {
                "root": ids[self.root],
                "nodes": [
                    {"id": ids[n], "kind": n.kind, "label": n.render()}
                    for n in self.nodes
                ],
                "edges": [
                    {"from": ids[e.source], "to": ids[e.target],
                     "label": e.label}
                    for e in self.edges
                ],
            }
        return self._doc_cache

    def __eq__(self, other) -> bool:
        if not isinstance(other, ExplanationGraph):
            return NotImplemented
        return self.doc() == other.doc()


def _node_id(node: nodes.ENode) -> str:
    text = node.kind + "\x00" + node.render()
    return hashlib.sha1(text.encode()).hexdigest()[:12]


def merge_supports(er: dict, ec: dict) -> dict:
    """Key-wise merge: shared keys take the pairwise union product."""
    merged: dict[nodes.ENode, list[frozenset]] = {}
    for key in list(er) + [k for k in ec if k not in er]:
        left = er.get(key)
        right = ec.get(key)
        if left is None or right is None:
            combined = list(left if left is not None else right)
        else:
            combined = [r | c for r in left for c in right]
        seen: set[frozenset] = set()
        deduped = []
        for support in combined:
            if support not in seen:
                seen.add(support)
                deduped.append(support)
        merged[key] = deduped
    return merged


def _graph_cap(max_graphs: int | None) -> int:
    if max_graphs is not None:
        return max_graphs
    return int(os.environ.get(MAX_GRAPHS_ENV, DEFAULT_MAX_GRAPHS))


def build_egraph(e: dict, u, root: nodes.ENode,
                 max_graphs: int | None = None) -> list[ExplanationGraph]:
    """All valid explanation graphs for a literal, canonical one first."""
    assumed = frozenset(u)
    cap = _graph_cap(max_graphs)
    _check_root(e, root)
    results: list[ExplanationGraph] = []

    def options(node: nodes.ENode):
        if node.kind == nodes.NEG_ATOM and node.payload[0] in assumed:
            return [frozenset({nodes.assume_node()})]
        if node.kind == nodes.ATOM and node.payload[0] in assumed:
            return []
        return e.get(node, [])

    def rec(pending: tuple, chosen: dict):
        if len(results) >= cap:
            return
        while pending and (pending[0] in chosen
                           or pending[0].kind in nodes.TERMINAL_KINDS):
            pending = pending[1:]
        if not pending:
            graph = _assemble(root, chosen)
            if _cycle_safe(graph.edges):
                results.append(graph)
            return
        node, rest = pending[0], pending[1:]
        for support in options(node):
            chosen[node] = support
            rec(rest + tuple(nodes.sorted_nodes(support)), chosen)
            del chosen[node]
            if len(results) >= cap:
                return

    rec((root,), {})
    if not results:
        joined = ", ".join(sorted(assumed))
        raise NoValidGraph(
            f"no valid explanation graph for {root.render()} "
            f"under assumed set {{{joined}}}")
    return results


def _check_root(e: dict, root: nodes.ENode) -> None:
    if root in e:
        return
    if root.kind in (nodes.ATOM, nodes.NEG_ATOM):
        name = root.payload[0]
        opposite = nodes.literal_node(name, root.kind == nodes.NEG_ATOM)
        if opposite in e:
            status = "true" if opposite.kind == nodes.ATOM else "false"
            raise UnknownLiteral(
                f"cannot explain {root.render()}: {name} is {status} in the "
                f"answer set; query {opposite.render()} instead")
    raise UnknownLiteral(
        f"cannot explain {root.render()}: not a literal of the program")


def _assemble(root: nodes.ENode, chosen: dict) -> ExplanationGraph:
    edges = []
    node_set = {root}
    for source, support in chosen.items():
        node_set.add(source)
        for target in support:
            node_set.add(target)
            edges.append(EEdge(source, target, nodes.edge_label(target)))
    edges.sort(key=lambda e: (e.source.sort_key(), e.target.sort_key()))
    return ExplanationGraph(root, tuple(nodes.sorted_nodes(node_set)),
                            tuple(edges))


def _cycle_safe(edges) -> bool:
    """Inside any SCC of the non-diamond subgraph, only minus edges."""
    adjacency: dict[nodes.ENode, list[nodes.ENode]] = {}
    kept = []
    for edge in edges:
        if edge.label == "diamond":
            continue
        kept.append(edge)
        adjacency.setdefault(edge.source, []).append(edge.target)
    component = _scc_index(adjacency)
    return all(
        edge.label == "minus"
        for edge in kept
        if component.get(edge.source) is not None
        and component.get(edge.source) == component.get(edge.target))


def _scc_index(adjacency: dict) -> dict:
    """Tarjan; maps each node to its component id, singletons excluded
    unless self-looped."""
    index: dict[nodes.ENode, int] = {}
    low: dict[nodes.ENode, int] = {}
    on_stack: set[nodes.ENode] = set()
    stack: list[nodes.ENode] = []
    component: dict[nodes.ENode, int] = {}
    counter = [0]
    comp_counter = [0]

    def visit(v):
        index[v] = low[v] = counter[0]
        counter[0] += 1
        stack.append(v)
        on_stack.add(v)
        for w in adjacency.get(v, ()):
            if w not in index:
                visit(w)
                low[v] = min(low[v], low[w])
            elif w in on_stack:
                low[v] = min(low[v], index[w])
        if low[v] == index[v]:
            members = []
            while True:
                w = stack.pop()
                on_stack.discard(w)
                members.append(w)
                if w == v:
                    break
            if len(members) > 1 or v in adjacency.get(v, ()):
                for w in members:
                    component[w] = comp_counter[0]
                comp_counter[0] += 1

    for v in list(adjacency):
        if v not in index:
            visit(v)
    return component


def validate_egraph(g: ExplanationGraph, e: dict, u) -> bool:
    assumed = frozenset(u)
    node_set = set(g.nodes)
    if g.root not in node_set:
        return False
    out: dict[nodes.ENode, set[nodes.ENode]] = {}
    for edge in g.edges:
        if edge.source not in node_set or edge.target not in node_set:
            return False
        if edge.label != nodes.edge_label(edge.target):
            return False
        out.setdefault(edge.source, set()).add(edge.target)
    for name in assumed:
        if nodes.atom_node(name) in node_set:
            return False
        neg = nodes.neg_atom_node(name)
        if neg in node_set and out.get(neg) != {nodes.assume_node()}:
            return False
    for node in node_set:
        if node.kind in nodes.TERMINAL_KINDS:
            if node in out:
                return False
            continue
        if node.kind == nodes.NEG_ATOM and node.payload[0] in assumed:
            continue
        neighbors = frozenset(out.get(node, ()))
        if not neighbors:
            return False
        if not any(neighbors == frozenset(s) for s in e.get(node, [])):
            return False
    reached = {g.root}
    frontier = [g.root]
    while frontier:
        for target in out.get(frontier.pop(), ()):
            if target not in reached:
                reached.add(target)
                frontier.append(target)
    if reached != node_set:
        return False
    return _cycle_safe(g.edges)


_DOT_STYLE = {
    "plus": "[style=solid]",
    "minus": "[style=dashed]",
    "circ": "[style=dotted]",
    "bullet": "[style=dotted, color=orange]",
    "diamond": "[style=dotted, color=green]",
    "oplus": "[style=solid, color=blue]",
    "oslash": "[style=solid, color=gray]",
}


def _quote(label: str) -> str:
    return '"' + label.replace('"', '\\"') + '"'


def to_dot(g: ExplanationGraph, ascii_only: bool = False) -> str:
    lines = ["digraph explanation {"]
    for node in g.nodes:
        lines.append(f"  {_quote(node.render(ascii_only))};")
    for edge in g.edges:
        lines.append(
            f"  {_quote(edge.source.render(ascii_only))} -> "
            f"{_quote(edge.target.render(ascii_only))} "
            f"{_DOT_STYLE[edge.label]};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def to_json(g: ExplanationGraph) -> str:
    return json.dumps(g.doc(), sort_keys=True, indent=2) + "\n"


def egraph_from_json(text: str) -> ExplanationGraph:
    doc = json.loads(text)
    by_id = {
        entry["id"]: nodes.ENode(entry["kind"], (),
                                 label_override=entry["label"])
        for entry in doc["nodes"]
    }
    edges = tuple(
        EEdge(by_id[entry["from"]], by_id[entry["to"]], entry["label"])
        for entry in doc["edges"])
    return ExplanationGraph(
        by_id[doc["root"]],
        tuple(nodes.sorted_nodes(by_id.values())),
        tuple(sorted(edges,
                     key=lambda e: (e.source.sort_key(),
                                    e.target.sort_key()))))
