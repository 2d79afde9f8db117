import json
from collections import Counter

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mllc.formulas import parse_formula, parse_sequent
from mllc.proofs import axiom, con_rule, cut_rule
from mllc.sequentialize import random_proof
from mllc.structures import (
    Link,
    ProofStructure,
    StructureError,
    axiom_link,
    axiom_matchings,
    desequentialize,
    em_structure,
    from_sequent,
    logical_link,
)

from conftest import isomorphic


def codes(s):
    return {v.code for v in s.validate()}


def f(text):
    return parse_formula(text)


def test_em_tensor():
    s = em_structure("tensor")
    assert s.counts()["axiom"] == 2 and s.counts()["tensor"] == 1 and s.counts()["par"] == 1
    assert [str(x) for x in s.terminal_formulas()] == ["(A * B)", "(~A | ~B)"]
    assert s.is_valid()


def test_em_g():
    s = em_structure("G")
    assert s.counts() == {"nodes": 10, "links": 6, "axiom": 4, "cut": 0, "tensor": 0, "par": 0, "con": 2}
    assert [str(x) for x in s.terminal_formulas()] == ["G(A,B,C,D)", "G*(~A,~B,~C,~D)"]


def test_em_extended():
    s = em_structure("G", "extended")
    assert len(s.links) == 1 and s.links[0].kind == "axiom"
    assert s.is_valid()
    assert "non-atomic-axiom" in codes(s.replace(mode="atomic"))


def test_unknown_connective_in_em():
    with pytest.raises(KeyError):
        em_structure("nope")


@pytest.mark.parametrize(
    "nodes, links, code",
    [
        ({"a": "A", "b": "B"}, [axiom_link("x", "a", "b")], "axiom-mismatch"),
        ({"a": "A", "b": "~A"}, [axiom_link("x", "a", "b"), axiom_link("x", "a", "b")], "duplicate-link-id"),
        ({"a": "A", "b": "~A"}, [axiom_link("x", "a", "b"), axiom_link("y", "a", "b")], "concluded-twice"),
        ({"a": "A", "b": "~A", "c": "C"}, [axiom_link("x", "a", "b")], "unconcluded"),
        ({"a": "A", "b": "~A"}, [axiom_link("x", "a", "zz")], "unknown-node"),
        ({"a": "A", "b": "~A", "c": "(A * ~A)"},
         [axiom_link("x", "a", "b"), logical_link("t", "par", ["a", "b"], "c")], "conclusion-mismatch"),
        ({"a": "A", "b": "~A", "c": "(A * ~A)", "d": "(A | ~A)"},
         [axiom_link("x", "a", "b"), logical_link("t", "tensor", ["a", "b"], "c"),
          logical_link("u", "par", ["a", "b"], "d")], "premise-of-two"),
        ({"a": "A", "b": "~A", "c": "(A * ~A)"},
         [axiom_link("x", "a", "b"), logical_link("t", "tensor", ["a"], "c")], "arity-mismatch"),
        ({"a": "A", "b": "A"}, [axiom_link("x", "a", "b"), Link("c", "cut", ("a", "b"))], "cut-mismatch"),
        ({"a": "A", "b": "~A"}, [axiom_link("x", "a", "b"), Link("y", "weird")], "unknown-kind"),
        ({"a": "A", "b": "~A", "c": "A"},
         [axiom_link("x", "a", "b"), Link("t", "con", ("a", "b"), ("c",), "nope")], "unknown-connective"),
    ],
)
def test_violations(nodes, links, code):
    s = ProofStructure({k: f(v) for k, v in nodes.items()}, tuple(links))
    assert code in codes(s)
    with pytest.raises(StructureError):
        s.require_valid()


def test_empty_and_bad_mode():
    assert "empty" in codes(ProofStructure({}, ()))
    assert "bad-mode" in codes(em_structure("par").replace(mode="weird"))


def test_json_round_trip():
    for name in ("tensor", "G", "C3*", "par4"):
        for mode in ("atomic", "extended"):
            s = em_structure(name, mode)
            data = json.loads(json.dumps(s.to_json()))
            assert ProofStructure.from_json(data) == s


def test_json_inline_connective():
    s = em_structure("G")
    data = s.to_json()
    assert "G" in data["connectives"]
    data["connectives"] = [
        {"name": "H", "arity": 2, "partitions": [[[1], [2]]], "dualName": "H*"},
        {"name": "H*", "arity": 2, "partitions": [[[1, 2]]], "dualName": "H"},
    ]
    data["nodes"] = [{"id": "a", "formula": "A"}, {"id": "b", "formula": "~A"},
                     {"id": "c", "formula": "A"}, {"id": "d", "formula": "~A"},
                     {"id": "e", "formula": "H(A,A)"}, {"id": "g", "formula": "H*(~A,~A)"}]
    data["links"] = [{"kind": "axiom", "conclusions": ["a", "b"]}, {"kind": "axiom", "conclusions": ["c", "d"]},
                     {"kind": "con", "name": "H", "premises": ["a", "c"], "conclusion": "e"},
                     {"kind": "con", "name": "H*", "premises": ["b", "d"], "conclusion": "g"}]
    s = ProofStructure.from_json(data)
    assert s.is_valid()
    assert [l.id for l in s.links] == ["l1", "l2", "l3", "l4"]
    again = ProofStructure.from_json(json.loads(json.dumps(s.to_json())))
    assert again == s


def test_axiom_matchings():
    fs = parse_sequent("(A * A), ~A, ~A")
    ms = list(axiom_matchings(fs))
    assert len(ms) == 2
    assert list(axiom_matchings(parse_sequent("A, A"))) == []


def test_from_sequent():
    fs = parse_sequent("(A * B), (~A | ~B)")
    (m,) = list(axiom_matchings(fs))
    s = from_sequent(fs, m)
    assert s.is_valid()
    assert isomorphic(s, em_structure("tensor"))


def test_desequentialize_axiom_and_cut():
    p = cut_rule(axiom(f("A")), 1, axiom(f("A")), 0)
    s = desequentialize(p)
    assert s.counts()["axiom"] == 2 and s.counts()["cut"] == 1
    assert Counter(s.terminal_formulas()) == Counter(p.conclusion)


def test_desequentialize_tensor():
    p = con_rule("tensor", 0, [axiom(f("A")), axiom(f("B"))], [(0,), (0,)])
    s = desequentialize(p)
    assert s.counts()["axiom"] == 2 and s.counts()["tensor"] == 1
    assert s.mode == "atomic"


def test_desequentialize_extended_axiom():
    s = desequentialize(axiom(f("G(A,B,C,D)")))
    assert s.mode == "extended" and s.is_valid()


@given(st.integers(0, 10_000), st.sampled_from([0.0, 0.3]))
@settings(max_examples=60, deadline=None)
def test_desequentialize_is_valid_with_the_same_terminals(seed, cut_rate):
    p = random_proof(depth=5, seed=seed, cut_rate=cut_rate)
    s = desequentialize(p)
    assert s.is_valid()
    assert Counter(s.terminal_formulas()) == Counter(p.conclusion)
    assert ProofStructure.from_json(json.loads(json.dumps(s.to_json()))) == s
