import math
from collections import Counter

import pytest

from mllc.sequentialize import random_proof
from mllc.structures import desequentialize, em_structure
from mllc.switchings import (
    RegimeError,
    Switching,
    correctness_graph,
    count_options,
    enumerate_switchings,
    link_options,
    regime_name,
    switchable_links,
    switching_count,
)


def con_link(s, name):
    return next(l for l in s.links if l.connective_name == name)


def graph_key(g):
    return frozenset(g.vertices), frozenset(Counter(frozenset(e) for e in g.edges).items())


def test_regime_aliases():
    assert regime_name("dr") == "danosRegnier"
    assert regime_name("par") == "parBinary"
    assert regime_name("parn") == "parN"
    with pytest.raises(RegimeError):
        regime_name("girard")


def test_figure_one_connective_has_four_switchings():
    s = em_structure("C3*")  # rules, in canonical order, {(1)(2,3)} and {(1,3)(2)}
    link = con_link(s, "C3*")
    choices = [o.choice for o in link_options(s, link, "partition")]
    assert choices == [(0, (1, 2)), (0, (1, 3)), (1, (1, 2)), (1, (3, 2))]


def test_figure_one_graph():
    s = em_structure("C3*")
    link = con_link(s, "C3*")
    other = con_link(s, "C3")
    g = correctness_graph(s, Switching("partition", {other.id: (0, (1, 3)), link.id: (1, (1, 2))}))
    a1, a2, _ = link.premises
    mine = [e for e in g.edges if link.conclusion in e]
    assert sorted(mine) == sorted([(a1, link.conclusion), (a2, link.conclusion)])


def test_binary_tensor_partition_vs_dr():
    s = em_structure("tensor")
    t = con_link(s, "tensor")
    assert count_options(s, t, "partition") == 1
    assert count_options(s, t, "danosRegnier") == 2


def test_figure_four_graph():
    s = em_structure("G")
    g_link = con_link(s, "G")
    d_link = con_link(s, "G*")
    sw = Switching("danosRegnier", {g_link.id: (1, 0), d_link.id: (0, 0)})  # p = {(1,3)(2,4)}, class (1,3)
    g = correctness_graph(s, sw)
    hub0, hub1 = f"{g_link.id}#0", f"{g_link.id}#1"
    a = g_link.premises
    edges = {frozenset(e) for e in g.edges}
    assert {frozenset((a[0], hub0)), frozenset((a[2], hub0)), frozenset((hub0, g_link.conclusion))} <= edges
    assert {frozenset((a[1], hub1)), frozenset((a[3], hub1))} <= edges
    assert frozenset((hub1, g_link.conclusion)) not in edges
    assert set(g.class_vertices()) >= {hub0, hub1}


def test_em_g_counts():
    s = em_structure("G")
    assert switching_count(s, "partition") == 32
    assert switching_count(s, "dr") == 24
    assert len(list(enumerate_switchings(s, "partition"))) == 32
    assert len(list(enumerate_switchings(s, "dr"))) == 24


def _closed_forms(s, link):
    rules = s.rules(link)
    partition = sum(math.prod(len(c) for c in p.classes) for p in rules)
    dr = sum(len(p) for p in rules)
    return partition, dr


def _test_structures():
    out = [em_structure(n) for n in ("tensor", "par", "tensor3", "par4", "G", "G*", "C3", "C3*")]
    out += [desequentialize(random_proof(depth=4, seed=k, max_rules=4)) for k in range(20)]
    return out


def test_counts_match_closed_forms():
    for s in _test_structures():
        for link in s.links:
            if not link.logical:
                continue
            part, dr = _closed_forms(s, link)
            assert len(link_options(s, link, "partition")) == part == count_options(s, link, "partition")
            assert len(link_options(s, link, "danosRegnier")) == dr == count_options(s, link, "danosRegnier")


def test_graph_sizes_are_determined():
    for s in _test_structures()[:12]:
        fixed = sum(1 for l in s.links if not l.logical)
        for sw in enumerate_switchings(s, "partition"):
            g = correctness_graph(s, sw)
            assert set(g.vertices) == set(s.nodes)
            chosen = sum(len(s.rules(s.link(i))[c[0]]) for i, c in sw.choices.items())
            assert len(g.edges) == fixed + chosen


def test_graph_is_a_pure_function():
    s = em_structure("G")
    sw = next(iter(enumerate_switchings(s, "dr")))
    assert correctness_graph(s, sw) == correctness_graph(s, sw)


def test_regime_applicability():
    with pytest.raises(RegimeError):
        switchable_links(em_structure("G"), "parN")
    with pytest.raises(RegimeError):
        switchable_links(em_structure("par3"), "parBinary")
    assert switchable_links(em_structure("par3"), "parN") == [con_link(em_structure("par3"), "par3").id]
    assert switchable_links(em_structure("tensor"), "par") == [con_link(em_structure("tensor"), "par").id]


def test_bad_switchings_rejected():
    s = em_structure("tensor")
    with pytest.raises(RegimeError):
        correctness_graph(s, Switching("parBinary", {}))
    par = con_link(s, "par")
    with pytest.raises(RegimeError):
        correctness_graph(s, Switching("parBinary", {par.id: "middle"}))


def _binary_structures():
    for k in range(40):
        p = random_proof(depth=4, seed=k, connectives=("tensor", "par"), max_rules=6)
        yield desequentialize(p)


def test_partition_graphs_equal_binary_par_graphs():
    for s in _binary_structures():
        a = {graph_key(correctness_graph(s, sw)) for sw in enumerate_switchings(s, "partition")}
        b = {graph_key(correctness_graph(s, sw)) for sw in enumerate_switchings(s, "parBinary")}
        assert a == b


def test_partition_graphs_equal_n_ary_par_graphs():
    for k in range(40):
        p = random_proof(depth=4, seed=k, connectives=("tensor", "par3", "tensor3", "par4"), max_rules=6)
        s = desequentialize(p)
        a = {graph_key(correctness_graph(s, sw)) for sw in enumerate_switchings(s, "partition")}
        b = {graph_key(correctness_graph(s, sw)) for sw in enumerate_switchings(s, "parN")}
        assert a == b


@pytest.mark.parametrize("regime", ["partition", "danosRegnier", "parN", "parBinary"])
def test_switching_json_round_trip(regime):
    s = em_structure("tensor") if regime in ("parN", "parBinary") else em_structure("G")
    for sw in enumerate_switchings(s, regime):
        assert Switching.from_json(sw.to_json()) == sw


def test_switching_json_format():
    s = em_structure("C3*")
    link = con_link(s, "C3*")
    sw = Switching("partition", {link.id: (1, (1, 2))})
    assert sw.to_json() == {"regime": "partition", "choices": {link.id: {"partition": 1, "selection": {"0": 1, "1": 2}}}}
    sw = Switching("danosRegnier", {link.id: (1, 0)})
    assert sw.to_json()["choices"][link.id] == {"partition": 1, "class": 0}
