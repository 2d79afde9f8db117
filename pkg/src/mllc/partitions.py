"""Set partitions of {1..n}, meeting graphs, orthogonality and connective pairs.

A generalized n-ary connective is given by a set of partitions of its
argument positions; each partition is one introduction rule, with one
premise per class.  Two partitions are orthogonal when their meeting graph
(one node per class of either partition, one edge per index) is a tree.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Iterator, Sequence

from .unionfind import UnionFind

PARTITION_CAP = 9
SHAPE_CAP = 5


class PartitionError(ValueError):
    pass


@dataclass(frozen=True, order=True)
class Partition:
    """A partition of {1..arity}, stored in canonical form.

    Classes are sorted tuples, ordered by their least element, so two
    partitions are equal exactly when they are structurally equal.
    """

    arity: int
    classes: tuple[tuple[int, ...], ...]

    def __init__(self, classes: Iterable[Iterable[int]], arity: int | None = None):
        cls = [tuple(sorted(c)) for c in classes]
        if not cls or any(not c for c in cls):
            raise PartitionError("a partition needs at least one class and no empty classes")
        flat = [i for c in cls for i in c]
        n = max(flat) if arity is None else arity
        if sorted(flat) != list(range(1, n + 1)):
            raise PartitionError(f"classes {cls} do not partition {{1..{n}}}")
        object.__setattr__(self, "arity", n)
        object.__setattr__(self, "classes", tuple(sorted(cls)))

    @classmethod
    def one_class(cls, n: int) -> Partition:
        return cls([range(1, n + 1)])

    @classmethod
    def discrete(cls, n: int) -> Partition:
        return cls([[i] for i in range(1, n + 1)])

    def __len__(self) -> int:
        return len(self.classes)

    def class_of(self, i: int) -> int:
        for k, c in enumerate(self.classes):
            if i in c:
                return k
        raise KeyError(i)

    def to_json(self) -> list[list[int]]:
        return [list(c) for c in self.classes]

    def __str__(self) -> str:
        return "{" + "".join("(" + ",".join(map(str, c)) + ")" for c in self.classes) + "}"

    __repr__ = __str__


@dataclass(frozen=True)
class PartitionSet:
    """A finite set of partitions of the same arity, members kept sorted."""

    arity: int
    members: tuple[Partition, ...]

    def __init__(self, members: Iterable[Partition | Iterable[Iterable[int]]], arity: int | None = None):
        ps = [m if isinstance(m, Partition) else Partition(m, arity) for m in members]
        if arity is None:
            if not ps:
                raise PartitionError("cannot infer the arity of an empty partition set")
            arity = ps[0].arity
        if any(p.arity != arity for p in ps):
            raise PartitionError("partition set mixes arities")
        object.__setattr__(self, "arity", arity)
        object.__setattr__(self, "members", tuple(sorted(set(ps))))

    def __iter__(self) -> Iterator[Partition]:
        return iter(self.members)

    def __len__(self) -> int:
        return len(self.members)

    def __contains__(self, p: object) -> bool:
        return p in self.members

    def __getitem__(self, i: int) -> Partition:
        return self.members[i]

    def index(self, p: Partition) -> int:
        return self.members.index(p)

    def to_json(self) -> list[list[list[int]]]:
        return [p.to_json() for p in self.members]

    def __str__(self) -> str:
        return "{" + ", ".join(map(str, self.members)) + "}"

    __repr__ = __str__


@dataclass(frozen=True)
class MeetingGraph:
    upper: tuple[tuple[int, ...], ...]
    lower: tuple[tuple[int, ...], ...]
    # (index, upper node, lower node); one entry per index, so parallel edges survive
    edges: tuple[tuple[int, int, int], ...]

    @property
    def node_count(self) -> int:
        return len(self.upper) + len(self.lower)

    def components(self) -> tuple[int, bool]:
        """Number of connected components and whether some edge closes a cycle."""
        uf = UnionFind(self.node_count)
        cyclic = False
        off = len(self.upper)
        for _, u, v in self.edges:
            if not uf.union(u, off + v):
                cyclic = True
        return uf.count, cyclic

    def is_tree(self) -> bool:
        count, cyclic = self.components()
        return count == 1 and not cyclic


def _check_arity(p: Partition, q: Partition) -> None:
    if p.arity != q.arity:
        raise PartitionError(f"arity mismatch: {p.arity} vs {q.arity}")


def meeting_graph(p: Partition, q: Partition) -> MeetingGraph:
    _check_arity(p, q)
    edges = tuple((i, p.class_of(i), q.class_of(i)) for i in range(1, p.arity + 1))
    return MeetingGraph(p.classes, q.classes, edges)


def orthogonal(p: Partition, q: Partition) -> bool:
    return meeting_graph(p, q).is_tree()


@lru_cache(maxsize=None)
def _partitions(n: int) -> tuple[Partition, ...]:
    out = []
    # restricted growth strings: block label of i is at most 1 + max label so far
    def grow(i: int, labels: list[int], top: int) -> None:
        if i == n:
            blocks: list[list[int]] = [[] for _ in range(top)]
            for idx, b in enumerate(labels, 1):
                blocks[b].append(idx)
            out.append(Partition(blocks, n))
            return
        for b in range(top + 1):
            labels.append(b)
            grow(i + 1, labels, max(top, b + 1))
            labels.pop()

    grow(0, [], 0)
    return tuple(sorted(out))


def enumerate_partitions(n: int, cap: int = PARTITION_CAP) -> list[Partition]:
    """All set partitions of {1..n}, in canonical order (Bell(n) of them)."""
    if n < 1:
        raise PartitionError("arity must be positive")
    if n > cap:
        raise PartitionError(
            f"arity {n} exceeds the enumeration cap {cap}; Bell({n}) partitions would be enumerated"
        )
    return list(_partitions(n))


def complement(P: PartitionSet, cap: int = PARTITION_CAP) -> PartitionSet:
    """Every partition orthogonal to all members of P (possibly none)."""
    qs = [q for q in enumerate_partitions(P.arity, cap) if all(orthogonal(p, q) for p in P)]
    return PartitionSet(qs, P.arity)


def is_connective_pair(P: PartitionSet, Q: PartitionSet, cap: int = PARTITION_CAP) -> bool:
    if P.arity != Q.arity:
        raise PartitionError(f"arity mismatch: {P.arity} vs {Q.arity}")
    if not len(P) or not len(Q):
        return False
    return complement(P, cap) == Q and complement(Q, cap) == P


def parse_partition(data: Sequence[Sequence[int]], arity: int | None = None) -> Partition:
    return Partition(data, arity)


def parse_partition_set(data: Sequence[Sequence[Sequence[int]]], arity: int | None = None) -> PartitionSet:
    return PartitionSet([Partition(p, arity) for p in data], arity)


@dataclass(frozen=True)
class Connective:
    name: str
    arity: int
    rules: PartitionSet
    dual_name: str

    def __post_init__(self):
        if not len(self.rules):
            raise PartitionError(f"connective {self.name} has no rules")
        if self.rules.arity != self.arity:
            raise PartitionError(f"connective {self.name}: rules have arity {self.rules.arity}")

    @property
    def single_class(self) -> bool:
        """True for par-like connectives: one rule, one premise."""
        return len(self.rules) == 1 and len(self.rules[0]) == 1

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "arity": self.arity,
            "partitions": self.rules.to_json(),
            "dualName": self.dual_name,
        }

    @classmethod
    def from_json(cls, data: dict) -> Connective:
        n = int(data["arity"])
        return cls(data["name"], n, parse_partition_set(data["partitions"], n), data["dualName"])


# -- formula shapes and decomposability ------------------------------------


@dataclass(frozen=True)
class ShapeLeaf:
    index: int

    def leaves(self) -> tuple[int, ...]:
        return (self.index,)

    def __str__(self) -> str:
        return str(self.index)


@dataclass(frozen=True)
class ShapeNode:
    op: str  # "tensor" or "par"
    left: "Shape"
    right: "Shape"

    def leaves(self) -> tuple[int, ...]:
        return self.left.leaves() + self.right.leaves()

    def __str__(self) -> str:
        sym = "*" if self.op == "tensor" else "|"
        return f"({self.left} {sym} {self.right})"


Shape = ShapeLeaf | ShapeNode


def preserves_order(shape: Shape) -> bool:
    leaves = shape.leaves()
    return list(leaves) == sorted(leaves)


def _merge_classes(cs: Iterable[tuple[int, ...]]) -> frozenset:
    return frozenset(frozenset(c) for c in cs)


@lru_cache(maxsize=None)
def _sequent_pset(shapes: frozenset) -> frozenset:
    """Partitions (frozensets of frozensets) of the leaves of a sequent of shapes.

    A partition is realized when the sequent can be derived from one
    hypothesis per class holding that class's leaves.  Par is invertible, so
    it is always decomposed first; otherwise some tensor is the last rule
    and the remaining formulas are split between its two premises.
    """
    for s in shapes:
        if isinstance(s, ShapeNode) and s.op == "par":
            return _sequent_pset((shapes - {s}) | {s.left, s.right})
    tensors = [s for s in shapes if isinstance(s, ShapeNode)]
    if not tensors:
        return frozenset({frozenset({frozenset(i for s in shapes for i in s.leaves())})})
    out = set()
    for t in tensors:
        rest = sorted(shapes - {t}, key=str)
        for mask in range(1 << len(rest)):
            left = frozenset(s for k, s in enumerate(rest) if mask >> k & 1) | {t.left}
            right = frozenset(s for k, s in enumerate(rest) if not mask >> k & 1) | {t.right}
            for p in _sequent_pset(left):
                for q in _sequent_pset(right):
                    out.add(p | q)
    return frozenset(out)


def _pset(shape: Shape) -> frozenset:
    return _sequent_pset(frozenset({shape}))


def formula_partition_set(shape: Shape) -> PartitionSet:
    """Partition set of the connective defined by a tensor/par formula over leaves 1..n."""
    leaves = shape.leaves()
    n = len(leaves)
    if len(set(leaves)) != n:
        raise PartitionError(f"duplicate leaf in shape {shape}")
    if set(leaves) != set(range(1, n + 1)):
        raise PartitionError(f"shape {shape} does not use exactly the leaves 1..{n}")
    return PartitionSet([Partition(p, n) for p in _pset(shape)], n)


def _bracketings(leaves: tuple[int, ...]) -> Iterator[Shape]:
    if len(leaves) == 1:
        yield ShapeLeaf(leaves[0])
        return
    for k in range(1, len(leaves)):
        for left in _bracketings(leaves[:k]):
            for right in _bracketings(leaves[k:]):
                for op in ("tensor", "par"):
                    yield ShapeNode(op, left, right)


def enumerate_shapes(n: int) -> Iterator[Shape]:
    """Every tensor/par formula over leaves 1..n; order-preserving shapes come first."""
    for perm in itertools.permutations(range(1, n + 1)):
        yield from _bracketings(perm)


def is_decomposable(P: PartitionSet, cap: int = SHAPE_CAP) -> Shape | None:
    """A formula shape whose partition set is P, or None.

    Argument permutations are allowed; an order-preserving witness is
    returned whenever one exists.
    """
    n = P.arity
    if n > cap:
        raise PartitionError(f"arity {n} exceeds the shape enumeration cap {cap}")
    target = frozenset(_merge_classes(p.classes) for p in P)
    for shape in enumerate_shapes(n):
        if _pset(shape) == target:
            return shape
    return None


# -- single-class rigidity ---------------------------------------------------


def single_class_rigidity(n: int) -> bool:
    """Check that {one-class} is the only closed partition set containing the one-class partition.

    Closed means: nonempty complement and double complement equal to itself.
    Up to n = 4 every such set is enumerated outright.  Beyond that the
    search is reduced using antitonicity of the complement: a set containing
    the one-class partition has complement inside {one-class}-complement.
    """
    parts = enumerate_partitions(n)
    idx = {p: i for i, p in enumerate(parts)}
    full = (1 << len(parts)) - 1
    ortho = [sum(1 << j for j, q in enumerate(parts) if orthogonal(p, q)) for p in parts]

    def perp(mask: int) -> int:
        out = full
        i = 0
        while mask:
            if mask & 1:
                out &= ortho[i]
            mask >>= 1
            i += 1
        return out

    top = 1 << idx[Partition.one_class(n)]
    bottom = 1 << idx[Partition.discrete(n)]
    if n <= 4:
        others = [1 << i for i in range(len(parts)) if (1 << i) != top]
        for bits in range(1 << len(others)):
            mask = top
            for k, b in enumerate(others):
                if bits >> k & 1:
                    mask |= b
            pm = perp(mask)
            if pm and perp(pm) == mask and mask != top:
                return False
        return perp(top) == bottom and perp(bottom) == top
    # every P containing the top partition has perp(P) a subset of perp(top)
    if perp(top) != bottom:
        return False
    # so a nonempty perp(P) equals {bottom} and perp(perp(P)) = perp(bottom)
    return perp(bottom) == top
