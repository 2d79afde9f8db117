import json

import pytest

from mllc.catalog import default_catalog
from mllc.cli import main, tradeoff_rows
from mllc.formulas import parse_formula
from mllc.proofs import axiom, cut_rule, proof_to_json
from mllc.structures import em_structure


@pytest.fixture
def em_g(tmp_path):
    path = tmp_path / "em_g.json"
    path.write_text(json.dumps(em_structure("G").to_json()))
    return str(path)


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_ortho(capsys):
    code, out, _ = run(capsys, "ortho", "[[1,2],[3,4]]", "[[1,3],[2],[4]]")
    assert code == 0 and "are orthogonal" in out and "graph" in out
    code, out, _ = run(capsys, "ortho", "[[1,2],[3,4]]", "[[1,3],[2,4]]", "--json")
    assert code == 1 and json.loads(out)["orthogonal"] is False


def test_complement(capsys):
    code, out, _ = run(capsys, "complement", "[[[1,2],[3,4]],[[1,3],[2,4]]]", "--json")
    data = json.loads(out)
    assert code == 0 and sorted(data["complement"]) == [[[1], [2, 3], [4]], [[1, 4], [2], [3]]]


def test_pair_check_and_decomposable(capsys):
    code, out, _ = run(capsys, "pair-check", "[[[1,2]]]", "[[[1],[2]]]")
    assert code == 0 and out.strip() == "connective pair"
    code, out, _ = run(capsys, "decomposable", "[[[1,2],[3,4]],[[1,3],[2,4]]]")
    assert code == 1 and out.strip() == "non-decomposable"
    code, out, _ = run(capsys, "decomposable", "[[[1,2],[3]],[[1,3],[2]]]", "--json")
    assert code == 0 and json.loads(out)["decomposable"]


def test_check_regimes(capsys, em_g, tmp_path):
    code, out, _ = run(capsys, "check", em_g, "--regime", "dr")
    v = json.loads(out)
    assert code == 0 and v["correct"] and v["totalSwitchings"] == 24 and v["regime"] == "danosRegnier"
    dot = tmp_path / "dots"
    code, out, _ = run(capsys, "check", em_g, "--regime", "partition", "--dot", str(dot))
    v = json.loads(out)
    assert code == 1 and not v["correct"] and v["totalSwitchings"] == 32
    assert v["counterexample"]["reason"] in ("cyclic", "disconnected")
    assert (dot / "structure.dot").exists() and (dot / "counterexample.dot").exists()


def test_check_bad_regime_and_missing_file(capsys, em_g, tmp_path):
    code, _, err = run(capsys, "check", em_g, "--regime", "par")
    assert code == 2 and err.startswith("error:")
    code, _, err = run(capsys, "check", str(tmp_path / "nope.json"))
    assert code == 2 and "cannot read" in err
    bad = tmp_path / "bad.json"
    bad.write_text("{")
    assert run(capsys, "check", str(bad))[0] == 2


def test_prove_exit_codes(capsys, tmp_path):
    code, out, _ = run(capsys, "prove", "(A * B), (~A | ~B)", "--json")
    assert code == 0 and json.loads(out)["rule"]
    code, out, _ = run(capsys, "prove", "G(A,B,C,D), G*(~A,~B,~C,~D)")
    assert code == 1 and out.strip() == "unprovable"
    code, out, _ = run(capsys, "prove", "(A * B), (~A | ~B)", "--max-formulas", "1", "--json")
    assert code == 3 and json.loads(out)["result"] == "inconclusive"
    assert run(capsys, "prove", "A * ")[0] == 2


def test_prove_deseq_sequentialize_round_trip(capsys, tmp_path):
    proof = tmp_path / "p.json"
    struct = tmp_path / "s.json"
    back = tmp_path / "back.json"
    assert run(capsys, "prove", "((A * B) * C), ((~A | ~B) | ~C)", "-o", str(proof))[0] == 0
    assert run(capsys, "deseq", str(proof), "-o", str(struct))[0] == 0
    assert run(capsys, "check", str(struct))[0] == 0
    assert run(capsys, "sequentialize", str(struct), "-o", str(back))[0] == 0
    assert sorted(json.loads(back.read_text())["conclusion"]) == sorted(json.loads(proof.read_text())["conclusion"])


def test_sequentialize_incorrect(capsys, em_g):
    code, out, _ = run(capsys, "sequentialize", em_g, "--json")
    assert code == 1 and json.loads(out)["error"] == "NotCorrect"


def test_cutelim_and_expand(capsys, tmp_path):
    a = parse_formula("G(A,B,C,D)")
    proof = tmp_path / "p.json"
    proof.write_text(json.dumps(proof_to_json(cut_rule(axiom(a), 1, axiom(a), 0))))
    ext = tmp_path / "ext.json"
    assert run(capsys, "deseq", str(proof), "--mode", "extended", "-o", str(ext))[0] == 0
    code, out, _ = run(capsys, "expand", str(ext), "--json")
    data = json.loads(out)
    assert code == 0 and len(data["log"]) == 2
    assert sum(1 for l in data["structure"]["links"] if l["kind"] == "axiom") == 8
    code, out, err = run(capsys, "cutelim", str(ext))
    data = json.loads(out)
    assert code == 0 and not any(l["kind"] == "cut" for l in data["links"])
    assert err.count("\n") >= 3 and err.startswith("expand")


def test_tradeoff(capsys):
    rows = {r["connective"]: r for r in tradeoff_rows(default_catalog())}
    flags = ("drCorrect", "partitionCorrect", "provable", "decomposable")
    assert [rows["G"][k] for k in flags] == [True, False, False, False]
    assert [rows["C3"][k] for k in flags] == [True, False, False, True]
    for k in (2, 3, 4):
        assert all(rows[f"tensor{k}" if k > 2 else "tensor"][f] for f in flags)
    code, out, _ = run(capsys, "experiment", "tradeoff")
    assert code == 0 and out.splitlines()[0].startswith("connective")
    assert run(capsys, "experiment", "nothing")[0] == 2


def test_tradeoff_custom_catalog(capsys, tmp_path):
    path = tmp_path / "cat.json"
    path.write_text(json.dumps([
        {"name": "T", "arity": 2, "partitions": [[[1], [2]]], "dualName": "P"},
        {"name": "P", "arity": 2, "partitions": [[[1, 2]]], "dualName": "T"},
    ]))
    code, out, _ = run(capsys, "experiment", "tradeoff", "--catalog", str(path), "--json")
    assert code == 0 and [r["connective"] for r in json.loads(out)] == ["T", "P"]
