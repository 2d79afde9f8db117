"""Graphviz DOT text for structures, correctness graphs and meeting graphs."""

from __future__ import annotations

from .partitions import MeetingGraph, Partition, meeting_graph
from .structures import ProofStructure
from .switchings import CorrectnessGraph


def _q(text: str) -> str:
    return '"' + text.replace("\\", "\\\\").replace('"', '\\"') + '"'


def structure_dot(s: ProofStructure, name: str = "structure") -> str:
    """Formula nodes as plain text, axioms as arcs, logical links as boxes, cuts as dashed edges."""
    lines = [f"digraph {_q(name)} {{", "  node [shape=plaintext];"]
    for n, f in s.nodes.items():
        lines.append(f"  {_q(n)} [label={_q(str(f))}];")
    for l in s.links:
        if l.kind == "axiom":
            a, b = l.conclusions
            lines.append(f"  {_q(a)} -> {_q(b)} [dir=none, constraint=false, label=\"ax\", id={_q(l.id)}];")
        elif l.kind == "cut":
            a, b = l.premises
            lines.append(f"  {_q(a)} -> {_q(b)} [dir=none, style=dashed, constraint=false, label=\"cut\", id={_q(l.id)}];")
        else:
            lines.append(f"  {_q(l.id)} [shape=box, label={_q(l.connective_name)}];")
            for i, p in enumerate(l.premises, 1):
                lines.append(f"  {_q(p)} -> {_q(l.id)} [taillabel=\"{i}\"];")
            lines.append(f"  {_q(l.id)} -> {_q(l.conclusion)};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def graph_dot(g: CorrectnessGraph, name: str = "switching") -> str:
    """Undirected multigraph; class vertices are drawn as points."""
    lines = [f"graph {_q(name)} {{", "  node [shape=plaintext];"]
    for v in g.vertices:
        label = g.labels[v]
        if label:
            lines.append(f"  {_q(v)} [label={_q(label)}];")
        else:
            lines.append(f"  {_q(v)} [shape=point];")
    for u, v in g.edges:
        lines.append(f"  {_q(u)} -- {_q(v)};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def meeting_dot(p: Partition, q: Partition) -> str:
    """Classes of p on top, classes of q below, one edge per index."""
    mg: MeetingGraph = meeting_graph(p, q)
    lines = ['graph "meeting" {', "  node [shape=ellipse];"]
    for k, cls in enumerate(p.classes):
        lines.append(f"  \"p{k}\" [label=\"({','.join(map(str, cls))})\"];")
    for k, cls in enumerate(q.classes):
        lines.append(f"  \"q{k}\" [label=\"({','.join(map(str, cls))})\", shape=box];")
    for i, u, v in mg.edges:
        lines.append(f"  \"p{u}\" -- \"q{v}\" [label=\"{i}\"];")
    lines.append("}")
    return "\n".join(lines) + "\n"
