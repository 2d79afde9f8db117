"""Switchings and the correctness graphs they induce.

Regimes:

``parBinary``
    each binary par keeps its left or its right premise edge.
``parN``
    each n-ary par keeps one premise edge; only tensor/par families allowed.
``partition``
    each logical link picks one of its partitions and one premise out of
    every class; the picked premises are joined to the conclusion.
``danosRegnier``
    each logical link picks a partition and one class of it; the premises
    of every class meet at a class vertex, and only the picked class vertex
    is joined to the conclusion.

Tensor and par are the connectives with partition sets {(1)(2)} and {(1,2)}.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from typing import Any, Iterator, Mapping

from .structures import Link, ProofStructure

REGIMES = ("parBinary", "parN", "partition", "danosRegnier")
REGIME_ALIASES = {
    "par": "parBinary",
    "binary": "parBinary",
    "parbinary": "parBinary",
    "parn": "parN",
    "dr": "danosRegnier",
    "danos-regnier": "danosRegnier",
    "danosregnier": "danosRegnier",
    "partition": "partition",
}

_PAR_FAMILY = re.compile(r"^par(\d*)$")
_TENSOR_FAMILY = re.compile(r"^tensor(\d*)$")


class RegimeError(ValueError):
    """The regime is not defined on some link of the structure."""


def regime_name(name: str) -> str:
    if name in REGIMES:
        return name
    try:
        return REGIME_ALIASES[name.lower()]
    except KeyError:
        raise RegimeError(f"unknown regime {name!r}; expected one of {REGIMES}") from None


@dataclass(frozen=True)
class Option:
    """One way to switch a link: the choice, the partition it belongs to, and what it adds."""

    choice: Any
    group: int
    vertices: tuple[str, ...]
    edges: tuple[tuple[str, str], ...]


@dataclass(frozen=True)
class Switching:
    regime: str
    choices: Mapping[str, Any]

    def to_json(self) -> dict[str, Any]:
        return {"regime": self.regime, "choices": {k: choice_to_json(self.regime, v) for k, v in self.choices.items()}}

    @classmethod
    def from_json(cls, data: Mapping[str, Any]) -> Switching:
        regime = regime_name(data["regime"])
        return cls(regime, {k: choice_from_json(regime, v) for k, v in data["choices"].items()})


def choice_to_json(regime: str, choice: Any) -> Any:
    if regime == "partition":
        p, sel = choice
        return {"partition": p, "selection": {str(k): e for k, e in enumerate(sel)}}
    if regime == "danosRegnier":
        p, k = choice
        return {"partition": p, "class": k}
    if regime == "parN":
        return {"premise": choice}
    return choice


def choice_from_json(regime: str, data: Any) -> Any:
    if regime == "partition":
        sel = data["selection"]
        return (int(data["partition"]), tuple(int(sel[str(k)]) for k in range(len(sel))))
    if regime == "danosRegnier":
        return (int(data["partition"]), int(data["class"]))
    if regime == "parN":
        return int(data["premise"])
    return data


def _family(link: Link) -> str | None:
    name = link.connective_name or ""
    if _PAR_FAMILY.match(name):
        return "par"
    if _TENSOR_FAMILY.match(name):
        return "tensor"
    return None


def _applicable(s: ProofStructure, link: Link, regime: str) -> bool:
    if regime == "parBinary":
        return link.kind in ("tensor", "par")
    if regime == "parN":
        return _family(link) is not None
    return True


def switchable_links(s: ProofStructure, regime: str) -> list[str]:
    regime = regime_name(regime)
    out = []
    for link in s.links:
        if not link.logical:
            continue
        if not _applicable(s, link, regime):
            raise RegimeError(f"regime {regime} is undefined on link {link.id} ({link.connective_name})")
        if regime in ("partition", "danosRegnier") or _family(link) == "par":
            out.append(link.id)
    return out


def link_options(s: ProofStructure, link: Link, regime: str) -> list[Option]:
    """All choices for one switchable link, in canonical order."""
    concl = link.conclusion
    prem = link.premises
    if regime == "parBinary":
        return [
            Option("left", 0, (), ((prem[0], concl),)),
            Option("right", 0, (), ((prem[1], concl),)),
        ]
    if regime == "parN":
        return [Option(i + 1, 0, (), ((p, concl),)) for i, p in enumerate(prem)]
    out = []
    for pi, p in enumerate(s.rules(link)):
        if regime == "partition":
            for sel in itertools.product(*p.classes):
                out.append(Option((pi, sel), pi, (), tuple((prem[e - 1], concl) for e in sel)))
        else:
            hubs = tuple(f"{link.id}#{k}" for k in range(len(p)))
            spokes = tuple((prem[e - 1], hubs[k]) for k, cls in enumerate(p.classes) for e in cls)
            for k in range(len(p)):
                out.append(Option((pi, k), pi, hubs, spokes + ((hubs[k], concl),)))
    return out


def count_options(s: ProofStructure, link: Link, regime: str) -> int:
    """Closed-form option count: sum over partitions of the product of class sizes (partition), number of classes (DR)."""
    if regime == "parBinary":
        return 2
    if regime == "parN":
        return len(link.premises)
    total = 0
    for p in s.rules(link):
        if regime == "partition":
            n = 1
            for cls in p.classes:
                n *= len(cls)
            total += n
        else:
            total += len(p)
    return total


def fixed_edges(s: ProofStructure, regime: str) -> list[tuple[str, str]]:
    """Edges present under every switching: axioms, cuts, and unswitched tensor links."""
    switched = set(switchable_links(s, regime))
    out = []
    for link in s.links:
        if link.kind == "axiom":
            out.append(link.conclusions)
        elif link.kind == "cut":
            out.append(link.premises)
        elif link.id not in switched:
            out.extend((p, link.conclusion) for p in link.premises)
    return out


def switching_count(s: ProofStructure, regime: str) -> int:
    regime = regime_name(regime)
    n = 1
    for lid in switchable_links(s, regime):
        n *= count_options(s, s.link(lid), regime)
    return n


def enumerate_switchings(s: ProofStructure, regime: str) -> Iterator[Switching]:
    """The full Cartesian product of per-link choices, in canonical order."""
    regime = regime_name(regime)
    ids = switchable_links(s, regime)
    per_link = [[o.choice for o in link_options(s, s.link(i), regime)] for i in ids]
    for combo in itertools.product(*per_link):
        yield Switching(regime, dict(zip(ids, combo)))


@dataclass(frozen=True)
class CorrectnessGraph:
    """An undirected multigraph; `labels` maps formula nodes to formulas and class vertices to ''."""

    vertices: tuple[str, ...]
    edges: tuple[tuple[str, str], ...]
    labels: Mapping[str, str]

    def class_vertices(self) -> list[str]:
        return [v for v in self.vertices if self.labels[v] == ""]


def correctness_graph(s: ProofStructure, switching: Switching) -> CorrectnessGraph:
    regime = regime_name(switching.regime)
    ids = switchable_links(s, regime)
    if set(ids) != set(switching.choices):
        raise RegimeError("switching does not cover exactly the switchable links of the structure")
    vertices = list(s.nodes)
    labels = {n: str(f) for n, f in s.nodes.items()}
    edges = list(fixed_edges(s, regime))
    for lid in ids:
        link = s.link(lid)
        choice = switching.choices[lid]
        for o in link_options(s, link, regime):
            if o.choice == choice:
                break
        else:
            raise RegimeError(f"{choice!r} is not a {regime} choice for link {lid}")
        vertices.extend(o.vertices)
        labels.update((v, "") for v in o.vertices)
        edges.extend(o.edges)
    return CorrectnessGraph(tuple(vertices), tuple(edges), labels)
