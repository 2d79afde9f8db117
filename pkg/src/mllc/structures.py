"""Proof structures: formula occurrences wired together by links.

Nodes are formula occurrences named by opaque string ids.  A link is an
axiom (two conclusions), a cut (two premises) or a logical link (ordered
premises, one conclusion) for tensor, par or a catalog connective.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property
from typing import Any, Iterable, Iterator, Mapping, Sequence

from .catalog import ALIASES, Catalog, UnknownConnective, default_catalog
from .formulas import Atom, Formula, FormulaError, build, dual, is_atomic, parse_formula
from .partitions import Connective, Partition, PartitionSet
from .proofs import SequentProof, check_proof, conclusion_sources, principal_formula, proof_errors

MODES = ("atomic", "extended")
LOGICAL = ("tensor", "par", "con")


class StructureError(ValueError):
    pass


@dataclass(frozen=True)
class Link:
    id: str
    kind: str
    premises: tuple[str, ...] = ()
    conclusions: tuple[str, ...] = ()
    name: str | None = None

    @property
    def logical(self) -> bool:
        return self.kind in LOGICAL

    @property
    def conclusion(self) -> str | None:
        return self.conclusions[0] if self.logical and self.conclusions else None

    @property
    def connective_name(self) -> str | None:
        if self.kind in ("tensor", "par"):
            return self.kind
        return self.name if self.kind == "con" else None

    def to_json(self) -> dict[str, Any]:
        out: dict[str, Any] = {"id": self.id, "kind": self.kind}
        if self.kind == "con":
            out["name"] = self.name
        if self.kind == "axiom":
            out["conclusions"] = list(self.conclusions)
        else:
            out["premises"] = list(self.premises)
        if self.logical:
            out["conclusion"] = self.conclusion
        return out


def logical_link(link_id: str, name: str, premises: Sequence[str], conclusion: str) -> Link:
    name = ALIASES.get(name, name)
    kind = name if name in ("tensor", "par") else "con"
    return Link(link_id, kind, tuple(premises), (conclusion,), name if kind == "con" else None)


def axiom_link(link_id: str, a: str, b: str) -> Link:
    return Link(link_id, "axiom", (), (a, b))


def cut_link(link_id: str, a: str, b: str) -> Link:
    return Link(link_id, "cut", (a, b))


@dataclass(frozen=True)
class Violation:
    code: str
    message: str
    ids: tuple[str, ...] = ()

    def __str__(self) -> str:
        return f"{self.code}: {self.message}"


@dataclass(frozen=True, eq=False)
class ProofStructure:
    nodes: Mapping[str, Formula]
    links: tuple[Link, ...]
    mode: str = "atomic"
    catalog: Catalog = field(default_factory=default_catalog, repr=False)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ProofStructure):
            return NotImplemented
        return (
            dict(self.nodes) == dict(other.nodes)
            and self.links == other.links
            and self.mode == other.mode
        )

    __hash__ = None  # type: ignore[assignment]

    @cached_property
    def link_by_id(self) -> dict[str, Link]:
        return {l.id: l for l in self.links}

    @cached_property
    def _premise_of(self) -> dict[str, list[str]]:
        out: dict[str, list[str]] = {}
        for l in self.links:
            for n in l.premises:
                out.setdefault(n, []).append(l.id)
        return out

    @cached_property
    def _conclusion_of(self) -> dict[str, list[str]]:
        out: dict[str, list[str]] = {}
        for l in self.links:
            for n in l.conclusions:
                out.setdefault(n, []).append(l.id)
        return out

    def link(self, link_id: str) -> Link:
        return self.link_by_id[link_id]

    def premise_link(self, node: str) -> Link | None:
        ids = self._premise_of.get(node)
        return self.link_by_id[ids[0]] if ids else None

    def conclusion_link(self, node: str) -> Link | None:
        ids = self._conclusion_of.get(node)
        return self.link_by_id[ids[0]] if ids else None

    def terminals(self) -> list[str]:
        """Nodes that are the premise of no link."""
        return [n for n in self.nodes if n not in self._premise_of]

    def terminal_formulas(self) -> list[Formula]:
        return [self.nodes[n] for n in self.terminals()]

    def connective(self, link: Link) -> Connective:
        return self.catalog[link.connective_name]

    def rules(self, link: Link) -> PartitionSet:
        if link.kind == "cut":
            return PartitionSet([Partition.discrete(2)])
        return self.connective(link).rules

    def counts(self) -> dict[str, int]:
        out = {"nodes": len(self.nodes), "links": len(self.links)}
        for kind in ("axiom", "cut", "tensor", "par", "con"):
            out[kind] = sum(1 for l in self.links if l.kind == kind)
        return out

    def replace(self, nodes: Mapping[str, Formula] | None = None, links: Iterable[Link] | None = None,
                mode: str | None = None) -> ProofStructure:
        return ProofStructure(
            dict(self.nodes if nodes is None else nodes),
            tuple(self.links if links is None else links),
            self.mode if mode is None else mode,
            self.catalog,
        )

    # -- validation -----------------------------------------------------------

    def validate(self) -> list[Violation]:
        out: list[Violation] = []
        if self.mode not in MODES:
            out.append(Violation("bad-mode", f"mode must be one of {MODES}, not {self.mode!r}"))
        if not self.nodes:
            out.append(Violation("empty", "a proof structure needs at least one node"))
        seen: set[str] = set()
        for l in self.links:
            if l.id in seen:
                out.append(Violation("duplicate-link-id", f"link id {l.id} used twice", (l.id,)))
            seen.add(l.id)
            out.extend(self._check_link(l))
        for n in self.nodes:
            prem = self._premise_of.get(n, [])
            concl = self._conclusion_of.get(n, [])
            if len(prem) > 1:
                out.append(Violation("premise-of-two", f"node {n} is a premise of links {prem}", (n, *prem)))
            if not concl:
                out.append(Violation("unconcluded", f"node {n} is the conclusion of no link", (n,)))
            elif len(concl) > 1:
                out.append(Violation("concluded-twice", f"node {n} is the conclusion of links {concl}", (n, *concl)))
        return out

    def _check_link(self, l: Link) -> list[Violation]:
        missing = [n for n in l.premises + l.conclusions if n not in self.nodes]
        if missing:
            return [Violation("unknown-node", f"link {l.id} refers to unknown nodes {missing}", (l.id, *missing))]
        f = self.nodes
        if l.kind == "axiom":
            if len(l.conclusions) != 2 or l.premises:
                return [Violation("arity-mismatch", f"axiom {l.id} needs exactly two conclusions", (l.id,))]
            a, b = (f[n] for n in l.conclusions)
            if b != dual(a, self.catalog):
                return [Violation("axiom-mismatch", f"axiom {l.id} joins {a} and {b}", (l.id,))]
            if self.mode == "atomic" and not is_atomic(a):
                return [Violation("non-atomic-axiom", f"axiom {l.id} on {a} in atomic mode", (l.id,))]
            return []
        if l.kind == "cut":
            if len(l.premises) != 2 or l.conclusions:
                return [Violation("arity-mismatch", f"cut {l.id} needs exactly two premises", (l.id,))]
            a, b = (f[n] for n in l.premises)
            if b != dual(a, self.catalog):
                return [Violation("cut-mismatch", f"cut {l.id} joins {a} and {b}", (l.id,))]
            return []
        if l.kind not in LOGICAL:
            return [Violation("unknown-kind", f"link {l.id} has kind {l.kind!r}", (l.id,))]
        try:
            c = self.connective(l)
        except UnknownConnective:
            return [Violation("unknown-connective", f"link {l.id} uses unknown connective {l.connective_name!r}", (l.id,))]
        if len(l.premises) != c.arity or len(l.conclusions) != 1:
            return [Violation(
                "arity-mismatch",
                f"link {l.id} ({c.name}) has {len(l.premises)} premises and {len(l.conclusions)} conclusions; "
                f"expected {c.arity} and 1",
                (l.id,),
            )]
        expected = build(c.name, [f[n] for n in l.premises], self.catalog)
        if f[l.conclusion] != expected:
            return [Violation("conclusion-mismatch", f"link {l.id} concludes {f[l.conclusion]}, expected {expected}", (l.id,))]
        return []

    def is_valid(self) -> bool:
        return not self.validate()

    def require_valid(self) -> ProofStructure:
        errors = self.validate()
        if errors:
            raise StructureError("; ".join(map(str, errors)))
        return self

    # -- serialization --------------------------------------------------------

    def to_json(self) -> dict[str, Any]:
        builtin = default_catalog()
        used = []
        for l in self.links:
            name = l.connective_name
            if name and name not in used:
                used.append(name)
        connectives: list[Any] = []
        for name in used:
            c = self.catalog[name]
            if name in builtin and builtin[name] == c:
                connectives.append(c.name)
            else:
                connectives.append(c.to_json())
        return {
            "mode": self.mode,
            "connectives": connectives,
            "nodes": [{"id": n, "formula": str(f)} for n, f in self.nodes.items()],
            "links": [l.to_json() for l in self.links],
        }

    @classmethod
    def from_json(cls, data: Mapping[str, Any], catalog: Catalog | None = None) -> ProofStructure:
        catalog = catalog or default_catalog()
        inline = [Connective.from_json(c) for c in data.get("connectives", []) if isinstance(c, dict)]
        if inline:
            catalog = catalog.merge(Catalog(inline))
        for c in data.get("connectives", []):
            if isinstance(c, str) and c not in catalog:
                raise UnknownConnective(c)
        nodes = {}
        for entry in data["nodes"]:
            try:
                nodes[str(entry["id"])] = parse_formula(entry["formula"], catalog)
            except FormulaError as e:
                raise StructureError(f"node {entry['id']}: {e}") from None
        links = []
        for i, entry in enumerate(data["links"]):
            lid = str(entry.get("id", f"l{i + 1}"))
            kind = entry["kind"]
            if kind == "axiom":
                links.append(Link(lid, "axiom", (), tuple(map(str, entry["conclusions"]))))
            elif kind == "cut":
                links.append(Link(lid, "cut", tuple(map(str, entry["premises"]))))
            else:
                name = entry.get("name", kind) if kind == "con" else kind
                concl = entry.get("conclusion")
                conclusions = () if concl is None else (str(concl),)
                link = logical_link(lid, name, tuple(map(str, entry["premises"])), "")
                links.append(Link(lid, link.kind, link.premises, conclusions, link.name))
        return cls(nodes, tuple(links), data.get("mode", "atomic"), catalog)


# -- builders -------------------------------------------------------------------


class _Builder:
    def __init__(self, catalog: Catalog, prefix: str = "n"):
        self.catalog = catalog
        self.nodes: dict[str, Formula] = {}
        self.links: list[Link] = []
        self.prefix = prefix

    def node(self, f: Formula, hint: str | None = None) -> str:
        nid = hint if hint is not None else f"{self.prefix}{len(self.nodes) + 1}"
        if nid in self.nodes:
            raise StructureError(f"duplicate node id {nid}")
        self.nodes[nid] = f
        return nid

    def link_id(self) -> str:
        return f"l{len(self.links) + 1}"

    def add(self, kind: str, *args: Any) -> Link:
        lid = self.link_id()
        if kind == "axiom":
            link = axiom_link(lid, *args)
        elif kind == "cut":
            link = cut_link(lid, *args)
        else:
            link = logical_link(lid, *args)
        self.links.append(link)
        return link

    def structure(self, mode: str) -> ProofStructure:
        return ProofStructure(dict(self.nodes), tuple(self.links), mode, self.catalog)


def _syntax_tree(b: _Builder, f: Formula, leaves: list[tuple[str, Formula]], prefix: str) -> str:
    """Add the occurrence tree of `f` down to its atoms; returns the root node id."""
    nid = b.node(f, prefix)
    if isinstance(f, Atom):
        leaves.append((nid, f))
        return nid
    kids = [_syntax_tree(b, a, leaves, f"{prefix}.{i + 1}") for i, a in enumerate(f.args)]
    b.add("logical", f.connective, kids, nid)
    return nid


def atom_occurrences(formulas: Sequence[Formula]) -> list[tuple[str, Atom]]:
    """Leaf ids (as used by `from_sequent`) and atoms of a list of terminal formulas."""
    b = _Builder(default_catalog())
    leaves: list[tuple[str, Formula]] = []
    for k, f in enumerate(formulas):
        _syntax_tree(b, f, leaves, f"t{k + 1}")
    return leaves  # type: ignore[return-value]


def axiom_matchings(formulas: Sequence[Formula]) -> Iterator[list[tuple[str, str]]]:
    """Every way to pair each positive atom occurrence with a negative one of the same name."""
    leaves = atom_occurrences(formulas)
    names = sorted({a.name for _, a in leaves})
    pos = {x: [n for n, a in leaves if a.name == x and not a.negated] for x in names}
    negs = {x: [n for n, a in leaves if a.name == x and a.negated] for x in names}
    if any(len(pos[x]) != len(negs[x]) for x in names):
        return
    per_name = [
        [list(zip(pos[x], perm)) for perm in itertools.permutations(negs[x])] for x in names
    ]
    for combo in itertools.product(*per_name):
        yield [pair for group in combo for pair in group]


def from_sequent(
    formulas: Sequence[Formula],
    pairing: Iterable[tuple[str, str]],
    catalog: Catalog | None = None,
    mode: str = "atomic",
) -> ProofStructure:
    """Structure whose terminals are `formulas`, with axioms on the given leaf pairs.

    Node ids are `t<k>` for the k-th terminal and `t<k>.<i>...` for its
    subformula occurrences.
    """
    b = _Builder(catalog or default_catalog())
    leaves: list[tuple[str, Formula]] = []
    for k, f in enumerate(formulas):
        _syntax_tree(b, f, leaves, f"t{k + 1}")
    for a, c in pairing:
        b.add("axiom", a, c)
    return b.structure(mode)


def em_structure(name: str, mode: str = "atomic", catalog: Catalog | None = None) -> ProofStructure:
    """The excluded-middle structure of a connective: terminals C(A1..An) and C*(~A1..~An)."""
    catalog = catalog or default_catalog()
    c = catalog[name]
    d = catalog.dual(c.name)
    letters = [chr(ord("A") + i) for i in range(c.arity)] if c.arity <= 26 else [f"A{i + 1}" for i in range(c.arity)]
    args = [Atom(x) for x in letters]
    left = build(c.name, args, catalog)
    right = build(d.name, [dual(a) for a in args], catalog)
    b = _Builder(catalog)
    if mode == "extended":
        b.add("axiom", b.node(left, "em"), b.node(right, "em*"))
        return b.structure(mode)
    pos = [b.node(a, a.name) for a in args]
    negs = [b.node(dual(a), "~" + a.name) for a in args]
    for p, q in zip(pos, negs):
        b.add("axiom", p, q)
    b.add("logical", c.name, pos, b.node(left, "em"))
    b.add("logical", d.name, negs, b.node(right, "em*"))
    return b.structure(mode)


# -- de-sequentialization -------------------------------------------------------------


def _deseq(proof: SequentProof, b: _Builder) -> list[str]:
    """Translate `proof`; returns the node ids of its conclusion, position by position."""
    if proof.rule == "axiom":
        a, c = (b.node(f) for f in proof.conclusion)
        b.add("axiom", a, c)
        return [a, c]
    ids = [_deseq(p, b) for p in proof.premises]
    if proof.rule == "cut":
        (i,), (j,) = proof.active
        b.add("cut", ids[0][i], ids[1][j])
        principal = None
    else:
        conn = b.catalog[proof.connective]
        p = conn.rules[proof.partition]
        prem = [""] * conn.arity
        for k, cls in enumerate(p.classes):
            for arg, pos in zip(cls, proof.active[k]):
                prem[arg - 1] = ids[k][pos]
        principal = b.node(principal_formula(proof, b.catalog))
        b.add("logical", conn.name, prem, principal)
    return [ids[s[0]][s[1]] if s is not None else principal for s in conclusion_sources(proof)]


def desequentialize(
    proof: SequentProof, catalog: Catalog | None = None, mode: str | None = None
) -> ProofStructure:
    """The proof structure of a sequent proof; its terminals are the proof's conclusion."""
    catalog = catalog or default_catalog()
    if mode is None:
        mode = "atomic" if check_proof(proof, catalog) else "extended"
    errors = proof_errors(proof, catalog, extended=mode == "extended")
    if errors:
        raise StructureError("invalid proof: " + "; ".join(errors))
    b = _Builder(catalog)
    _deseq(proof, b)
    return b.structure(mode)


def desequentialize_with_conclusions(
    proof: SequentProof, catalog: Catalog | None = None, mode: str = "extended"
) -> tuple[ProofStructure, list[str]]:
    """Like `desequentialize`, also returning the node id of each conclusion position."""
    catalog = catalog or default_catalog()
    b = _Builder(catalog)
    ids = _deseq(proof, b)
    return b.structure(mode), ids
