"""Sequent-calculus proofs and the rule checker.

Every rule other than axiom and cut is an introduction rule of some catalog
connective (binary tensor and par included), instantiated at one of its
partitions: premise i holds the arguments in class i plus its own context.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Any, Sequence

from .catalog import Catalog, UnknownConnective, default_catalog
from .formulas import Formula, FormulaError, build, dual, is_atomic, parse_formula


class ProofError(ValueError):
    pass


@dataclass(frozen=True)
class SequentProof:
    rule: str  # "axiom", "cut" or "con"
    conclusion: tuple[Formula, ...]
    premises: tuple["SequentProof", ...] = ()
    connective: str | None = None
    partition: int | None = None
    # per premise, the positions of the formulas the rule consumes (class order,
    # ascending argument index); the rest of each premise is context
    active: tuple[tuple[int, ...], ...] | None = None

    def size(self) -> int:
        return 1 + sum(p.size() for p in self.premises)

    def depth(self) -> int:
        return 1 + max((p.depth() for p in self.premises), default=0)


def axiom(f: Formula, catalog: Catalog | None = None) -> SequentProof:
    return SequentProof("axiom", (f, dual(f, catalog)))


def con_rule(
    name: str,
    partition: int,
    premises: Sequence[SequentProof],
    active: Sequence[Sequence[int]],
    catalog: Catalog | None = None,
) -> SequentProof:
    """Apply a connective rule; the conclusion lists the contexts in premise order, then the principal formula."""
    catalog = catalog or default_catalog()
    c = catalog[name]
    p = c.rules[partition]
    args: list[Formula | None] = [None] * c.arity
    context: list[Formula] = []
    for prem, cls, pos in zip(premises, p.classes, active):
        if len(cls) != len(pos):
            raise ProofError(f"premise for class {cls} selects {len(pos)} formulas")
        for j, k in zip(cls, pos):
            args[j - 1] = prem.conclusion[k]
        context.extend(f for k, f in enumerate(prem.conclusion) if k not in pos)
    principal = build(c.name, args, catalog)
    return SequentProof(
        "con", tuple(context) + (principal,), tuple(premises), c.name, partition,
        tuple(tuple(a) for a in active),
    )


def cut_rule(left: SequentProof, i: int, right: SequentProof, j: int) -> SequentProof:
    context = [f for k, f in enumerate(left.conclusion) if k != i]
    context += [f for k, f in enumerate(right.conclusion) if k != j]
    return SequentProof("cut", tuple(context), (left, right), active=((i,), (j,)))


def _contexts(proof: SequentProof) -> list[tuple[int, int]]:
    out = []
    for i, prem in enumerate(proof.premises):
        used = set(proof.active[i])
        out.extend((i, k) for k in range(len(prem.conclusion)) if k not in used)
    return out


def principal_formula(proof: SequentProof, catalog: Catalog | None = None) -> Formula:
    catalog = catalog or default_catalog()
    c = catalog[proof.connective]
    p = c.rules[proof.partition]
    args: list[Formula | None] = [None] * c.arity
    for prem, cls, pos in zip(proof.premises, p.classes, proof.active):
        for j, k in zip(cls, pos):
            args[j - 1] = prem.conclusion[k]
    return build(c.name, args, catalog)


def conclusion_sources(proof: SequentProof) -> list[tuple[int, int] | None]:
    """For each conclusion position, the (premise, position) it is copied from; None marks the principal formula.

    Equal formulas are matched first-come first-served, which is the
    identity on the layout produced by `con_rule` and `cut_rule`.
    """
    ctx = _contexts(proof)
    used = [False] * len(ctx)
    out: list[tuple[int, int] | None] = []
    for f in proof.conclusion:
        for n, (i, k) in enumerate(ctx):
            if not used[n] and proof.premises[i].conclusion[k] == f:
                used[n] = True
                out.append((i, k))
                break
        else:
            out.append(None)
    return out


def _check_node(proof: SequentProof, catalog: Catalog, extended: bool) -> str | None:
    c = proof.conclusion
    if proof.rule == "axiom":
        if proof.premises or len(c) != 2:
            return "axiom must have two conclusions and no premises"
        if c[1] != dual(c[0], catalog):
            return f"axiom conclusions {c[0]} and {c[1]} are not dual"
        if not extended and not is_atomic(c[0]):
            return f"non-atomic axiom on {c[0]}"
        return None
    if proof.active is None or len(proof.active) != len(proof.premises):
        return "missing active positions"
    for prem, pos in zip(proof.premises, proof.active):
        if len(set(pos)) != len(pos) or any(not 0 <= k < len(prem.conclusion) for k in pos):
            return "active positions out of range"
    if proof.rule == "cut":
        if len(proof.premises) != 2 or any(len(a) != 1 for a in proof.active):
            return "cut needs two premises with one cut formula each"
        a = proof.premises[0].conclusion[proof.active[0][0]]
        b = proof.premises[1].conclusion[proof.active[1][0]]
        if b != dual(a, catalog):
            return f"cut formulas {a} and {b} are not dual"
        expected = Counter(proof.premises[0].conclusion[k] for i, k in _contexts(proof) if i == 0)
        expected += Counter(proof.premises[1].conclusion[k] for i, k in _contexts(proof) if i == 1)
        return None if expected == Counter(c) else "cut conclusion is not the union of the contexts"
    if proof.rule != "con":
        return f"unknown rule {proof.rule!r}"
    conn = catalog[proof.connective]
    if proof.partition is None or not 0 <= proof.partition < len(conn.rules):
        return f"{conn.name} has no rule {proof.partition}"
    p = conn.rules[proof.partition]
    if len(proof.premises) != len(p):
        return f"rule {p} of {conn.name} needs {len(p)} premises"
    if any(len(cls) != len(a) for cls, a in zip(p.classes, proof.active)):
        return f"premises do not match the classes of {p}"
    try:
        principal = principal_formula(proof, catalog)
    except FormulaError as e:
        return str(e)
    expected = Counter(proof.premises[i].conclusion[k] for i, k in _contexts(proof))
    expected[principal] += 1
    return None if expected == Counter(c) else "conclusion is not contexts plus the principal formula"


def proof_errors(proof: SequentProof, catalog: Catalog | None = None, extended: bool = False) -> list[str]:
    catalog = catalog or default_catalog()
    out = []
    stack = [(proof, "root")]
    while stack:
        node, where = stack.pop()
        msg = _check_node(node, catalog, extended)
        if msg:
            out.append(f"{where}: {msg}")
        for i, prem in enumerate(node.premises):
            stack.append((prem, f"{where}.{i}"))
    return out


def check_proof(proof: SequentProof, catalog: Catalog | None = None, extended: bool = False) -> bool:
    """True iff every node instantiates its rule exactly.

    Unregistered connectives raise UnknownConnective rather than yield False.
    """
    return not proof_errors(proof, catalog, extended)


# -- serialization ------------------------------------------------------------


def proof_to_json(proof: SequentProof) -> dict[str, Any]:
    rule: dict[str, Any] = {"kind": proof.rule}
    if proof.rule == "con":
        rule.update(name=proof.connective, partition=proof.partition)
    out: dict[str, Any] = {"rule": rule, "conclusion": [str(f) for f in proof.conclusion]}
    if proof.premises:
        out["premises"] = [proof_to_json(p) for p in proof.premises]
        out["active"] = [list(a) for a in proof.active]
    return out


def _infer_active(proof: SequentProof, catalog: Catalog) -> tuple[tuple[int, ...], ...] | None:
    """Recover the consumed positions of a rule read from a file that does not list them."""
    concl = Counter(proof.conclusion)
    if proof.rule == "cut":
        left, right = proof.premises
        for i, a in enumerate(left.conclusion):
            for j, b in enumerate(right.conclusion):
                if b == dual(a, catalog):
                    cand = cut_rule(left, i, right, j)
                    if Counter(cand.conclusion) == concl:
                        return cand.active
        return None
    conn = catalog[proof.connective]
    if not isinstance(proof.partition, int) or not 0 <= proof.partition < len(conn.rules):
        return None
    p = conn.rules[proof.partition]
    if len(p) != len(proof.premises):
        return None
    for f in proof.conclusion:
        if f.connective != conn.name or len(f.args) != conn.arity:
            continue
        active = []
        for prem, cls in zip(proof.premises, p.classes):
            pos: list[int] = []
            for j in cls:
                k = next(
                    (k for k, g in enumerate(prem.conclusion) if g == f.args[j - 1] and k not in pos),
                    None,
                )
                if k is None:
                    break
                pos.append(k)
            if len(pos) != len(cls):
                break
            active.append(tuple(pos))
        else:
            cand = SequentProof("con", proof.conclusion, proof.premises, conn.name, proof.partition, tuple(active))
            if _check_node(cand, catalog, True) is None:
                return cand.active
    return None


def proof_from_json(data: dict[str, Any], catalog: Catalog | None = None) -> SequentProof:
    catalog = catalog or default_catalog()
    rule = data["rule"]
    kind = rule["kind"] if isinstance(rule, dict) else rule
    conclusion = tuple(parse_formula(t, catalog) for t in data["conclusion"])
    premises = tuple(proof_from_json(p, catalog) for p in data.get("premises", []))
    if kind == "axiom":
        return SequentProof("axiom", conclusion)
    if kind not in ("cut", "con", "tensor", "par"):
        raise ProofError(f"unknown rule kind {kind!r}")
    name = rule.get("name", kind) if kind != "cut" else None
    if name is not None and name not in catalog:
        raise UnknownConnective(name)
    partition = rule.get("partition", 0) if kind != "cut" else None
    proof = SequentProof("cut" if kind == "cut" else "con", conclusion, premises,
                         catalog[name].name if name else None, partition)
    if "active" in data:
        active = tuple(tuple(a) for a in data["active"])
    else:
        active = _infer_active(proof, catalog)
    return SequentProof(proof.rule, conclusion, premises, proof.connective, partition, active)
