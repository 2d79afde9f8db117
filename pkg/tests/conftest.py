from __future__ import annotations

import networkx as nx
import pytest

from mllc.catalog import default_catalog
from mllc.structures import Link, ProofStructure, cut_link


def structure_graph(s: ProofStructure) -> nx.MultiDiGraph:
    """Labelled graph of a structure with node ids forgotten, for isomorphism tests."""
    g = nx.MultiDiGraph()
    for n, f in s.nodes.items():
        g.add_node(("n", n), label=str(f))
    for l in s.links:
        g.add_node(("l", l.id), label=l.kind + ":" + (l.connective_name or ""))
        for i, p in enumerate(l.premises):
            g.add_edge(("n", p), ("l", l.id), label=i if l.logical else "p")
        for c in l.conclusions:
            g.add_edge(("l", l.id), ("n", c), label="c")
    return g


def isomorphic(a: ProofStructure, b: ProofStructure) -> bool:
    same = lambda x, y: x["label"] == y["label"]  # noqa: E731
    edge = lambda x, y: sorted(d["label"] for d in x.values()) == sorted(d["label"] for d in y.values())  # noqa: E731
    return nx.is_isomorphic(structure_graph(a), structure_graph(b), node_match=same, edge_match=edge)


# PASS/FAIL lines of the acceptance criteria, printed in the terminal summary
ACCEPTANCE: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)


def cut_together(a: ProofStructure, b: ProofStructure, na: str, nb: str, mode: str | None = None) -> ProofStructure:
    """Disjoint union of `a` and `b` (ids prefixed x and y) with a cut between terminal `na` of a and `nb` of b."""
    def ren(prefix: str, l: Link) -> Link:
        return Link(prefix + l.id, l.kind, tuple(prefix + n for n in l.premises),
                    tuple(prefix + n for n in l.conclusions), l.name)

    nodes = {"x" + n: f for n, f in a.nodes.items()}
    nodes.update({"y" + n: f for n, f in b.nodes.items()})
    links = [ren("x", l) for l in a.links] + [ren("y", l) for l in b.links]
    links.append(cut_link("cut", "x" + na, "y" + nb))
    return ProofStructure(nodes, tuple(links), mode or a.mode, a.catalog)


@pytest.fixture
def catalog():
    return default_catalog()


# terminal sequents for the oracle comparison: at most 8 atom occurrences each
ORACLE_CONFIGS = [
    "A, ~A",
    "(A * B), (~A | ~B)",
    "G(A,A,A,A), (~A * ~A), (~A * ~A)",
    "(A | B), ~A, ~B",
    "(A * ~A), (A | ~A)",
    "(A | A), (~A * ~A)",
    "(A * A), ~A, ~A",
    "((A * B) | C), (~A | ~B), ~C",
    "par3(A,B,C), tensor3(~A,~B,~C)",
    "tensor3(A,A,B), ~A, ~A, ~B",
    "G(A,B,C,D), G*(~A,~B,~C,~D)",
    "G(A,B,C,D), (~A * ~B), (~C * ~D)",
    "G(A,B,C,D), (~A * ~C), (~B * ~D)",
    "G(A,A,B,B), (~A * ~A), (~B * ~B)",
    "C3(A,B,C), C3*(~A,~B,~C)",
    "C3(A,B,C), (~A * ~B), ~C",
    "C3*(A,B,C), (~A * ~C), ~B",
    "C3*(A,B,C), (~A | ~B), ~C",
    "C3(A,A,~A), (~A * A), ~A",
    "G*(A,A,B,B), (~A | ~A), ~B, ~B",
]
