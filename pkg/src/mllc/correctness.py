"""Correctness verdicts by exhaustive (or sampled) switching, and splitting links.

For the partition regime a structure is correct when some choice of one
partition per logical link makes every selection of class representatives
yield a tree.  Reading the partition choice universally instead would make
every non-trivial connective rule produce incorrect structures (pick a
partition that draws two representatives from one premise subproof), so the
universal reading is available only as ``strict=True``.  The other regimes
quantify universally over all of their choices.
"""

from __future__ import annotations

import itertools
import random
from collections import deque
from dataclasses import dataclass
from typing import Any, Iterator, Sequence

from .partitions import Partition
from .structures import Link, ProofStructure
from .switchings import (
    CorrectnessGraph,
    Option,
    Switching,
    correctness_graph,
    fixed_edges,
    link_options,
    regime_name,
    switchable_links,
)
from .unionfind import RollbackUnionFind, UnionFind


@dataclass(frozen=True)
class GraphWitness:
    reason: str  # "cyclic" or "disconnected"
    cycle: tuple[str, ...] = ()
    components: tuple[tuple[str, ...], ...] = ()

    def to_json(self) -> dict[str, Any]:
        if self.reason == "cyclic":
            return {"reason": "cyclic", "cycle": list(self.cycle)}
        return {"reason": "disconnected", "components": sorted((len(c) for c in self.components), reverse=True)}


def _path(adj: dict[str, list[str]], start: str, goal: str) -> list[str]:
    prev = {start: start}
    queue = deque([start])
    while queue:
        v = queue.popleft()
        if v == goal:
            break
        for w in adj.get(v, ()):
            if w not in prev:
                prev[w] = v
                queue.append(w)
    path = [goal]
    while path[-1] != start:
        path.append(prev[path[-1]])
    return path[::-1]


def is_connected_acyclic(g: CorrectnessGraph) -> tuple[bool, GraphWitness | None]:
    """Union-find pass over the edges; the first edge closing a cycle gives the witness cycle."""
    index = {v: i for i, v in enumerate(g.vertices)}
    uf = UnionFind(len(index))
    adj: dict[str, list[str]] = {}
    for u, v in g.edges:
        if not uf.union(index[u], index[v]):
            cycle = [u] if u == v else _path(adj, v, u)
            return False, GraphWitness("cyclic", tuple(cycle))
        adj.setdefault(u, []).append(v)
        adj.setdefault(v, []).append(u)
    if uf.count != 1:
        comps = tuple(tuple(g.vertices[i] for i in grp) for grp in uf.groups())
        return False, GraphWitness("disconnected", components=comps)
    return True, None


@dataclass(frozen=True)
class Counterexample:
    switching: Switching
    witness: GraphWitness

    @property
    def reason(self) -> str:
        return self.witness.reason

    def to_json(self) -> dict[str, Any]:
        return {"switching": self.switching.to_json(), **self.witness.to_json()}


@dataclass(frozen=True)
class Verdict:
    correct: bool
    regime: str
    switchings_checked: int
    total_switchings: int
    counterexample: Counterexample | None = None
    sampled: bool = False
    # partition regime: the partition index chosen for each link that certifies correctness
    witness: dict[str, int] | None = None

    def to_json(self) -> dict[str, Any]:
        out: dict[str, Any] = {
            "correct": self.correct,
            "regime": self.regime,
            "switchingsChecked": self.switchings_checked,
            "totalSwitchings": self.total_switchings,
            "sampled": self.sampled,
        }
        if self.witness is not None:
            out["partitionChoice"] = self.witness
        if self.counterexample is not None:
            out["counterexample"] = self.counterexample.to_json()
        return out


class _Search:
    """Switchings of one structure compiled to integer edges, checked depth-first with undoable unions."""

    def __init__(self, s: ProofStructure, regime: str):
        self.s = s
        self.regime = regime
        self.ids = switchable_links(s, regime)
        self.options: list[list[Option]] = [link_options(s, s.link(i), regime) for i in self.ids]
        index = {v: k for k, v in enumerate(s.nodes)}
        for opts in self.options:
            for o in opts:
                for v in o.vertices:
                    index.setdefault(v, len(index))
        self.edges = [[[(index[a], index[b]) for a, b in o.edges] for o in opts] for opts in self.options]
        self.added = [[len(o.vertices) for o in opts] for opts in self.options]
        self.uf = RollbackUnionFind(len(index))
        self.base_ok = all(self.uf.union(index[a], index[b]) for a, b in fixed_edges(s, regime))
        self.base_vertices = len(s.nodes)
        self.checked = 0

    def total(self) -> int:
        n = 1
        for opts in self.options:
            n *= len(opts)
        return n

    def switching(self, combo: Sequence[int]) -> Switching:
        return Switching(self.regime, {i: self.options[k][c].choice for k, (i, c) in enumerate(zip(self.ids, combo))})

    def counterexample(self, combo: Sequence[int]) -> Counterexample:
        sw = self.switching(combo)
        ok, witness = is_connected_acyclic(correctness_graph(self.s, sw))
        assert not ok and witness is not None
        return Counterexample(sw, witness)

    def first_failure(self, allowed: Sequence[Sequence[int]]) -> tuple[int, ...] | None:
        """Every combination drawn from `allowed` (per link) is checked; returns the first failing one."""
        if not self.base_ok:
            self.checked += 1
            return tuple(a[0] for a in allowed)
        uf = self.uf
        combo: list[int] = []
        depth = len(allowed)

        def visit(level: int, vertices: int) -> bool:
            if level == depth:
                self.checked += 1
                return vertices - len(uf.history) == 1
            mark = uf.mark()
            for c in allowed[level]:
                combo.append(c)
                if all(uf.union(a, b) for a, b in self.edges[level][c]):
                    ok = visit(level + 1, vertices + self.added[level][c])
                else:
                    self.checked += 1
                    ok = False
                uf.rollback(mark)
                if not ok:
                    # a cyclic prefix stays cyclic: complete it with first choices
                    combo.extend(a[0] for a in allowed[len(combo):])
                    return False
                combo.pop()
            return True

        root = uf.mark()
        ok = visit(0, self.base_vertices)
        uf.rollback(root)
        return None if ok else tuple(combo)

    def groups(self) -> list[dict[int, list[int]]]:
        out = []
        for opts in self.options:
            g: dict[int, list[int]] = {}
            for k, o in enumerate(opts):
                g.setdefault(o.group, []).append(k)
            out.append(g)
        return out

    def ok(self, combo: Sequence[int]) -> bool:
        return self.first_failure([[c] for c in combo]) is None


def check_correct(
    s: ProofStructure,
    regime: str = "partition",
    sample: int | None = None,
    seed: int = 0,
    strict: bool = False,
) -> Verdict:
    """Exhaustive check by default; with `sample=k`, k random switchings (per partition choice), which can only refute."""
    s.require_valid()
    regime = regime_name(regime)
    search = _Search(s, regime)
    total = search.total()
    every = [list(range(len(o))) for o in search.options]
    if regime != "partition" or strict:
        if sample is not None:
            rng = random.Random(seed)
            for _ in range(sample):
                combo = [rng.randrange(len(o)) for o in search.options]
                if not search.ok(combo):
                    return Verdict(False, regime, search.checked, total, search.counterexample(combo), True)
            return Verdict(True, regime, search.checked, total, sampled=True)
        bad = search.first_failure(every)
        if bad is None:
            return Verdict(True, regime, search.checked, total)
        return Verdict(False, regime, search.checked, total, search.counterexample(bad))

    groups = search.groups()
    rng = random.Random(seed)
    first_bad: tuple[int, ...] | None = None
    for assignment in itertools.product(*(list(g) for g in groups)):
        allowed = [g[p] for g, p in zip(groups, assignment)]
        if sample is None:
            bad = search.first_failure(allowed)
        else:
            bad = None
            for _ in range(sample):
                combo = [rng.choice(a) for a in allowed]
                if not search.ok(combo):
                    bad = tuple(combo)
                    break
        if bad is None:
            witness = dict(zip(search.ids, assignment))
            return Verdict(True, regime, search.checked, total, sampled=sample is not None, witness=witness)
        if first_bad is None:
            first_bad = bad
    assert first_bad is not None
    return Verdict(False, regime, search.checked, total, search.counterexample(first_bad), sample is not None)


def is_correct(s: ProofStructure, regime: str = "partition") -> bool:
    return check_correct(s, regime).correct


# -- splitting ------------------------------------------------------------------


@dataclass(frozen=True)
class SplitReport:
    link_id: str
    partition: Partition
    partition_index: int
    components: tuple[frozenset[str], ...]

    def to_json(self) -> dict[str, Any]:
        return {
            "linkId": self.link_id,
            "matchedPartition": self.partition.to_json(),
            "components": [sorted(c) for c in self.components],
        }


def _link_edges(link: Link) -> list[tuple[str, str]]:
    if link.kind == "axiom":
        return [link.conclusions]
    if link.kind == "cut":
        return [link.premises]
    return [(p, link.conclusion) for p in link.premises]


def split_candidates(s: ProofStructure) -> Iterator[Link]:
    """Terminal cuts and terminal logical links with more than one class, in link order."""
    terminal = set(s.terminals())
    for link in s.links:
        if link.kind == "cut":
            yield link
        elif link.logical and link.conclusion in terminal and not s.connective(link).single_class:
            yield link


def split_at(s: ProofStructure, link: Link) -> SplitReport | None:
    """Report for `link` if removing it leaves one component per class of one of its partitions."""
    removed = {link.conclusion} if link.logical else set()
    names = [n for n in s.nodes if n not in removed]
    index = {n: i for i, n in enumerate(names)}
    uf = UnionFind(len(names))
    for other in s.links:
        if other.id != link.id:
            for a, b in _link_edges(other):
                uf.union(index[a], index[b])
    roots: list[int] = []
    classes: dict[int, list[int]] = {}
    for j, p in enumerate(link.premises, 1):
        r = uf.find(index[p])
        if r not in classes:
            roots.append(r)
        classes.setdefault(r, []).append(j)
    if len(roots) != uf.count:
        return None
    grouping = Partition(classes.values(), len(link.premises))
    rules = s.rules(link)
    if grouping not in rules:
        return None
    members: dict[int, set[str]] = {r: set() for r in roots}
    for n in names:
        members[uf.find(index[n])].add(n)
    by_class = tuple(frozenset(members[uf.find(index[link.premises[cls[0] - 1]])]) for cls in grouping.classes)
    return SplitReport(link.id, grouping, rules.index(grouping), by_class)


def find_splitting_terminal_link(s: ProofStructure) -> SplitReport | None:
    for link in split_candidates(s):
        report = split_at(s, link)
        if report is not None:
            return report
    return None
