"""Cut elimination and axiom expansion on proof structures.

Every operation returns a new structure; the input is never modified.
"""

from __future__ import annotations

from dataclasses import dataclass

from .formulas import is_atomic
from .partitions import orthogonal
from .structures import Link, ProofStructure, StructureError, axiom_link, cut_link, logical_link


class RewriteError(StructureError):
    pass


class StuckCut(RewriteError):
    """A cut that is neither an axiom cut nor a main cut between a registered dual pair."""


@dataclass(frozen=True)
class Redex:
    kind: str  # "axiomCut" or "mainCut"
    cut: str
    links: tuple[str, ...]  # the links concluding the cut premises, in premise order

    def __str__(self) -> str:
        return f"{self.kind} {self.cut} [{', '.join(self.links)}]"


def classify_cut(s: ProofStructure, cut_id: str) -> Redex | None:
    cut = s.link(cut_id)
    if cut.kind != "cut":
        raise RewriteError(f"{cut_id} is not a cut")
    sources = [s.conclusion_link(n) for n in cut.premises]
    if any(l is None for l in sources):
        return None
    ids = tuple(l.id for l in sources)
    if any(l.kind == "axiom" for l in sources):
        return Redex("axiomCut", cut_id, ids)
    a, b = sources
    if a.logical and b.logical and s.catalog.dual(a.connective_name).name == s.connective(b).name:
        return Redex("mainCut", cut_id, ids)
    return None


def find_redexes(s: ProofStructure) -> list[Redex]:
    """Reducible cuts, axiom cuts first, each group in link order."""
    found = [classify_cut(s, l.id) for l in s.links if l.kind == "cut"]
    found = [r for r in found if r is not None]
    return [r for r in found if r.kind == "axiomCut"] + [r for r in found if r.kind == "mainCut"]


def _rename(link: Link, old: str, new: str) -> Link:
    def sub(ids: tuple[str, ...]) -> tuple[str, ...]:
        return tuple(new if n == old else n for n in ids)

    return Link(link.id, link.kind, sub(link.premises), sub(link.conclusions), link.name)


def reduce_axiom_cut(s: ProofStructure, cut_id: str) -> ProofStructure:
    """Cut x|y against an axiom z|x: drop axiom, cut, x and z; y takes z's place."""
    r = classify_cut(s, cut_id)
    if r is None or r.kind != "axiomCut":
        raise RewriteError(f"{cut_id} is not an axiom cut")
    cut = s.link(cut_id)
    k = 0 if s.link(r.links[0]).kind == "axiom" else 1
    x, y = cut.premises[k], cut.premises[1 - k]
    ax = s.link(r.links[k])
    z = ax.conclusions[1] if ax.conclusions[0] == x else ax.conclusions[0]
    if z == y:
        # the axiom and the cut close a loop on their own
        nodes = {n: f for n, f in s.nodes.items() if n not in (x, y)}
        links = [l for l in s.links if l.id not in (cut_id, ax.id)]
        return s.replace(nodes=nodes, links=links)
    nodes = {}
    for n, f in s.nodes.items():
        if n == z:
            nodes[y] = s.nodes[y]
        elif n not in (x, y):
            nodes[n] = f
    links = [_rename(l, z, y) for l in s.links if l.id not in (cut_id, ax.id)]
    return s.replace(nodes=nodes, links=links)


def reduce_main_cut(s: ProofStructure, cut_id: str, check: bool = True) -> ProofStructure:
    """Replace a cut between C(A1..An) and C*(~A1..~An) by n cuts A_i | ~A_i.

    With `check`, the rule sets of the two links must be pairwise orthogonal.
    """
    cut = s.link(cut_id)
    if cut.kind != "cut":
        raise RewriteError(f"{cut_id} is not a cut")
    a, b = (s.conclusion_link(n) for n in cut.premises)
    if a is None or b is None or not (a.logical and b.logical):
        raise RewriteError(f"{cut_id} is not a main cut")
    ca, cb = s.connective(a), s.connective(b)
    if s.catalog.dual(ca.name).name != cb.name:
        raise StuckCut(f"{cut_id} joins {ca.name} and {cb.name}, which are not a registered dual pair")
    if check and not all(orthogonal(p, q) for p in ca.rules for q in cb.rules):
        raise RewriteError(f"rules of {ca.name} and {cb.name} are not orthogonal")
    gone = {cut.premises[0], cut.premises[1]}
    nodes = {n: f for n, f in s.nodes.items() if n not in gone}
    links = []
    for l in s.links:
        if l.id == cut_id:
            links.extend(cut_link(f"{cut_id}.{i}", p, q) for i, (p, q) in enumerate(zip(a.premises, b.premises), 1))
        elif l.id not in (a.id, b.id):
            links.append(l)
    return s.replace(nodes=nodes, links=links)


def reduce(s: ProofStructure, r: Redex) -> ProofStructure:
    if r.kind == "axiomCut":
        return reduce_axiom_cut(s, r.cut)
    return reduce_main_cut(s, r.cut)


def _fresh(taken, base: str) -> str:
    nid, k = base, 1
    while nid in taken:
        k += 1
        nid = f"{base}~{k}"
    return nid


def expand_axiom(s: ProofStructure, axiom_id: str) -> ProofStructure:
    """One expansion layer: the axiom on C(A..) and C*(~A..) becomes n axioms plus a C-link and a C*-link."""
    if s.mode != "extended":
        raise RewriteError("axiom expansion needs extended mode")
    ax = s.link(axiom_id)
    if ax.kind != "axiom":
        raise RewriteError(f"{axiom_id} is not an axiom link")
    u, v = ax.conclusions
    fu, fv = s.nodes[u], s.nodes[v]
    if is_atomic(fu):
        raise RewriteError(f"axiom {axiom_id} is already atomic")
    nodes = dict(s.nodes)
    left, right = [], []
    for i, (a, b) in enumerate(zip(fu.args, fv.args), 1):
        nu = _fresh(nodes, f"{u}.{i}")
        nodes[nu] = a
        nv = _fresh(nodes, f"{v}.{i}")
        nodes[nv] = b
        left.append(nu)
        right.append(nv)
    taken = set(s.link_by_id)
    new = [axiom_link(_fresh(taken, f"{axiom_id}.{i}"), p, q) for i, (p, q) in enumerate(zip(left, right), 1)]
    new.append(logical_link(_fresh(taken, f"{axiom_id}.L"), fu.connective, left, u))
    new.append(logical_link(_fresh(taken, f"{axiom_id}.R"), fv.connective, right, v))
    links = []
    for l in s.links:
        links.extend(new if l.id == axiom_id else [l])
    return s.replace(nodes=nodes, links=links)


def expand_all(s: ProofStructure, log: list[str] | None = None) -> ProofStructure:
    """Expand until every axiom is atomic."""
    while True:
        target = next((l for l in s.links if l.kind == "axiom" and not is_atomic(s.nodes[l.conclusions[0]])), None)
        if target is None:
            return s
        if log is not None:
            log.append(f"expand {target.id} on {s.nodes[target.conclusions[0]]}")
        s = expand_axiom(s, target.id)


def step_bound(s: ProofStructure) -> int:
    """Connective occurrences (logical links) plus link count: each step removes an axiom or two logical links."""
    return sum(1 for l in s.links if l.logical) + len(s.links)


def normalize(s: ProofStructure, log: list[str] | None = None) -> ProofStructure:
    """Eliminate every cut: axiom cuts first, then main cuts, each in link order.

    Extended-mode input is expanded to atomic axioms first.  `log`, when
    given, receives one line per step.
    """
    s.require_valid()
    if s.mode == "extended":
        s = expand_all(s, log)
    bound = step_bound(s)
    for _ in range(bound + 1):
        cuts = [l for l in s.links if l.kind == "cut"]
        if not cuts:
            return s
        redexes = find_redexes(s)
        if not redexes:
            raise StuckCut(f"no reducible cut among {[c.id for c in cuts]}")
        r = redexes[0]
        if log is not None:
            log.append(str(r))
        s = reduce(s, r)
    raise RewriteError(f"normalization exceeded {bound} steps")
