"""Sequentialization, a cut-free backward prover, and random proof generation."""

from __future__ import annotations

import random
from typing import Sequence

from .catalog import Catalog, default_catalog, tensor_name
from .correctness import find_splitting_terminal_link
from .formulas import Atom, Formula, atom_balance, atoms, build, dual, is_atomic, sequent_key, size
from .proofs import SequentProof, axiom, con_rule, cut_rule
from .structures import ProofStructure


class NotCorrect(Exception):
    """The structure is not a proof net under the partition regime."""


class SearchInconclusive(Exception):
    """The goal exceeds the prover's search caps."""


# -- sequentialization ---------------------------------------------------------


def _restrict(s: ProofStructure, keep: set[str]) -> ProofStructure:
    links = [l for l in s.links if set(l.premises) | set(l.conclusions) <= keep]
    return s.replace(nodes={n: f for n, f in s.nodes.items() if n in keep}, links=links)


def _peelable(s: ProofStructure):
    for t in s.terminals():
        link = s.conclusion_link(t)
        if link is not None and link.logical and s.connective(link).single_class:
            return link
    return None


def _seq(s: ProofStructure) -> tuple[SequentProof, list[str]]:
    """Proof of `s` plus the node id behind each conclusion position."""
    if len(s.links) == 1 and s.links[0].kind == "axiom":
        a, b = s.links[0].conclusions
        if set(s.nodes) != {a, b}:
            raise NotCorrect("stray nodes next to an axiom")
        return SequentProof("axiom", (s.nodes[a], s.nodes[b])), [a, b]

    link = _peelable(s)
    if link is not None:
        sub = _restrict(s, set(s.nodes) - {link.conclusion})
        proof, order = _seq(sub)
        active = tuple(order.index(p) for p in link.premises)
        out = con_rule(s.connective(link).name, 0, [proof], [active], s.catalog)
        return out, [n for n in order if n not in link.premises] + [link.conclusion]

    report = find_splitting_terminal_link(s)
    if report is None:
        raise NotCorrect("no terminal link splits the structure")
    link = s.link(report.link_id)
    parts = [_seq(_restrict(s, set(c))) for c in report.components]
    if link.kind == "cut":
        (left, lorder), (right, rorder) = parts
        a, b = link.premises
        out = cut_rule(left, lorder.index(a), right, rorder.index(b))
        return out, [n for n in lorder if n != a] + [n for n in rorder if n != b]
    proofs, actives, order = [], [], []
    for cls, (proof, sub_order) in zip(report.partition.classes, parts):
        used = [link.premises[j - 1] for j in cls]
        proofs.append(proof)
        actives.append(tuple(sub_order.index(n) for n in used))
        order.extend(n for n in sub_order if n not in used)
    out = con_rule(s.connective(link).name, report.partition_index, proofs, actives, s.catalog)
    return out, order + [link.conclusion]


def sequentialize(s: ProofStructure) -> SequentProof:
    """Peel terminal par-like links, otherwise split at a terminal link; NotCorrect if neither applies."""
    s.require_valid()
    return _seq(s)[0]


def sequentialize_with_order(s: ProofStructure) -> tuple[SequentProof, list[str]]:
    s.require_valid()
    return _seq(s)


# -- prover ---------------------------------------------------------------------

MAX_FORMULAS = 10
MAX_CONNECTIVES = 40


def _positions(conclusion: Sequence[Formula], wanted: Sequence[Formula]) -> tuple[int, ...]:
    taken: list[int] = []
    for f in wanted:
        taken.append(next(k for k, g in enumerate(conclusion) if g == f and k not in taken))
    return tuple(taken)


def _balanced(fs: Sequence[Formula]) -> bool:
    return not any(atom_balance(fs).values())


class _Prover:
    def __init__(self, catalog: Catalog, extended: bool):
        self.catalog = catalog
        self.extended = extended
        self.memo: dict[tuple[str, ...], SequentProof | None] = {}

    def search(self, fs: Sequence[Formula]) -> SequentProof | None:
        key = sequent_key(fs)
        if key not in self.memo:
            self.memo[key] = self._solve(sorted(fs, key=str))
        return self.memo[key]

    def _solve(self, fs: list[Formula]) -> SequentProof | None:
        if not _balanced(fs):
            return None
        if len(fs) == 2 and fs[1] == dual(fs[0], self.catalog) and (self.extended or is_atomic(fs[0])):
            return SequentProof("axiom", (fs[0], fs[1]))
        tried = set()
        for i, f in enumerate(fs):
            if is_atomic(f) or f in tried:
                continue
            tried.add(f)
            rest = fs[:i] + fs[i + 1:]
            c = self.catalog[f.connective]
            for pi, p in enumerate(c.rules):
                groups = [[f.args[j - 1] for j in cls] for cls in p.classes]
                for contexts in _distributions(rest, groups):
                    proofs = []
                    for ctx, grp in zip(contexts, groups):
                        sub = self.search(ctx + grp)
                        if sub is None:
                            break
                        proofs.append(sub)
                    else:
                        actives = [_positions(pr.conclusion, grp) for pr, grp in zip(proofs, groups)]
                        return con_rule(c.name, pi, proofs, actives, self.catalog)
        return None


def _distributions(rest: Sequence[Formula], groups: Sequence[Sequence[Formula]]):
    """Every split of the multiset `rest` into one context per group that leaves each premise balanced."""
    distinct: list[Formula] = []
    counts: list[int] = []
    for f in rest:
        if f in distinct:
            counts[distinct.index(f)] += 1
        else:
            distinct.append(f)
            counts.append(1)
    k = len(groups)
    balances = [atom_balance(g) for g in groups]
    weights = [atom_balance([f]) for f in distinct]
    # atom names still available from position i onwards
    reach: list[set[str]] = [set() for _ in range(len(distinct) + 1)]
    for i in range(len(distinct) - 1, -1, -1):
        reach[i] = reach[i + 1] | {a.name for a in atoms(distinct[i])}
    contexts: list[list[Formula]] = [[] for _ in range(k)]

    def feasible(i: int) -> bool:
        return all(name in reach[i] for b in balances for name, v in b.items() if v)

    def go(i: int):
        if i == len(distinct):
            yield [list(c) for c in contexts]
            return
        f, w = distinct[i], weights[i]
        for split in _compositions(counts[i], k):
            for g, m in enumerate(split):
                for _ in range(m):
                    contexts[g].append(f)
                if m:
                    balances[g].update({a: v * m for a, v in w.items()})
            if feasible(i + 1):
                yield from go(i + 1)
            for g, m in enumerate(split):
                if m:
                    del contexts[g][-m:]
                    balances[g].subtract({a: v * m for a, v in w.items()})

    if feasible(0):
        yield from go(0)


def _compositions(n: int, k: int):
    if k == 1:
        yield (n,)
        return
    for first in range(n, -1, -1):
        for tail in _compositions(n - first, k - 1):
            yield (first,) + tail


def prove(
    goal: Sequence[Formula],
    catalog: Catalog | None = None,
    extended: bool = False,
    max_formulas: int = MAX_FORMULAS,
    max_connectives: int = MAX_CONNECTIVES,
) -> SequentProof | None:
    """Cut-free proof of `goal`, or None when there is none.

    Raises SearchInconclusive when the goal exceeds the caps.
    """
    goal = list(goal)
    if not goal:
        return None
    total = sum(size(f) for f in goal)
    if len(goal) > max_formulas or total > max_connectives:
        raise SearchInconclusive(
            f"goal has {len(goal)} formulas and {total} connectives; caps are {max_formulas} and {max_connectives}"
        )
    return _Prover(catalog or default_catalog(), extended).search(goal)


# -- generators -----------------------------------------------------------------


def coproof(f: Formula, catalog: Catalog | None = None, rng: random.Random | None = None) -> tuple[SequentProof, int]:
    """A cut-free proof of some sequent containing dual(f); returns it with the position of dual(f).

    Each argument's co-proof is built recursively and then used as a premise
    of a rule for the dual connective; arguments sharing a class are first
    joined with an n-ary tensor on context formulas.
    """
    catalog = catalog or default_catalog()
    if is_atomic(f):
        return axiom(f, catalog), 1
    d = catalog.dual(f.connective)
    pi = rng.randrange(len(d.rules)) if rng else 0
    p = d.rules[pi]
    premises, actives = [], []
    for cls in p.classes:
        subs = [coproof(f.args[j - 1], catalog, rng) for j in cls]
        if len(subs) == 1:
            premises.append(subs[0][0])
            actives.append((subs[0][1],))
            continue
        picks = [next(k for k in range(len(pr.conclusion)) if k != pos) for pr, pos in subs]
        joined = con_rule(tensor_name(len(subs)), 0, [pr for pr, _ in subs], [(k,) for k in picks], catalog)
        positions, offset = [], 0
        for (pr, pos), k in zip(subs, picks):
            positions.append(offset + pos - (1 if k < pos else 0))
            offset += len(pr.conclusion) - 1
        premises.append(joined)
        actives.append(tuple(positions))
    out = con_rule(d.name, pi, premises, actives, catalog)
    return out, len(out.conclusion) - 1


DEFAULT_CONNECTIVES = ("tensor", "par", "tensor3", "par3", "G", "G*", "C3", "C3*")


def random_formula(rng: random.Random, depth: int, atom_pool: Sequence[str],
                   connectives: Sequence[str], catalog: Catalog) -> Formula:
    if depth <= 0 or rng.random() < 0.3:
        return Atom(rng.choice(atom_pool), rng.random() < 0.5)
    c = catalog[rng.choice(connectives)]
    return build(c.name, [random_formula(rng, depth - 1, atom_pool, connectives, catalog) for _ in range(c.arity)], catalog)


def random_proof(
    depth: int = 4,
    atom_pool: Sequence[str] = ("A", "B", "C"),
    connectives: Sequence[str] = DEFAULT_CONNECTIVES,
    seed: int = 0,
    catalog: Catalog | None = None,
    cut_rate: float = 0.0,
    extended: bool = False,
    max_rules: int = 8,
) -> SequentProof:
    """A valid proof built from random axioms and rule applications; deterministic per seed.

    `max_rules` bounds the number of randomly chosen rules (auxiliary joins
    needed to supply enough formulas to a premise are not counted).  With
    `extended`, some axioms are on compound formulas.
    """
    catalog = catalog or default_catalog()
    rng = random.Random(seed)
    budget = [max_rules]

    def leaf() -> SequentProof:
        if extended and rng.random() < 0.4:
            return axiom(random_formula(rng, 2, atom_pool, connectives, catalog), catalog)
        return axiom(Atom(rng.choice(atom_pool)), catalog)

    def gen(d: int) -> SequentProof:
        if d <= 0 or budget[0] <= 0 or rng.random() < 0.15:
            return leaf()
        budget[0] -= 1
        if rng.random() < cut_rate:
            left = gen(d - 1)
            i = rng.randrange(len(left.conclusion))
            right, j = coproof(left.conclusion[i], catalog, rng)
            return cut_rule(left, i, right, j) if rng.random() < 0.5 else cut_rule(right, j, left, i)
        c = catalog[rng.choice(connectives)]
        pi = rng.randrange(len(c.rules))
        premises, actives = [], []
        for cls in c.rules[pi].classes:
            proof = gen(d - 1)
            while len(proof.conclusion) < len(cls):
                other = gen(d - 1)
                proof = con_rule("tensor", 0, [proof, other],
                                 [(rng.randrange(len(proof.conclusion)),), (rng.randrange(len(other.conclusion)),)],
                                 catalog)
            premises.append(proof)
            actives.append(tuple(rng.sample(range(len(proof.conclusion)), len(cls))))
        return con_rule(c.name, pi, premises, actives, catalog)

    return gen(depth)
