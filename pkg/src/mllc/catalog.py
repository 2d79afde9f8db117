"""Connective catalogs: built-in tensor/par families plus connectives loaded from JSON files."""

from __future__ import annotations

import json
import os
from importlib import resources
from pathlib import Path
from typing import Iterable, Iterator

from .partitions import Connective, Partition, PartitionSet, PartitionError, is_connective_pair

CATALOG_ENV = "MLLC_CATALOG"
MAX_BUILTIN_ARITY = 6


class UnknownConnective(KeyError):
    def __str__(self) -> str:
        return f"unknown connective {self.args[0]!r}"


def tensor_name(n: int) -> str:
    return "tensor" if n == 2 else f"tensor{n}"


def par_name(n: int) -> str:
    return "par" if n == 2 else f"par{n}"


# spellings that denote the binary built-ins
ALIASES = {"tensor2": "tensor", "par2": "par"}


def builtin_connectives(max_arity: int = MAX_BUILTIN_ARITY) -> list[Connective]:
    out = []
    for n in range(2, max_arity + 1):
        t, p = tensor_name(n), par_name(n)
        out.append(Connective(t, n, PartitionSet([Partition.discrete(n)]), p))
        out.append(Connective(p, n, PartitionSet([Partition.one_class(n)]), t))
    return out


class Catalog:
    """A named set of connectives; each entry names its dual."""

    def __init__(self, connectives: Iterable[Connective] = ()):
        self._by_name: dict[str, Connective] = {}
        for c in connectives:
            self.add(c)

    def add(self, c: Connective) -> None:
        self._by_name[c.name] = c

    def merge(self, other: Catalog) -> Catalog:
        out = Catalog(self)
        for c in other:
            out.add(c)
        return out

    def __iter__(self) -> Iterator[Connective]:
        return iter(self._by_name.values())

    def __len__(self) -> int:
        return len(self._by_name)

    def __contains__(self, name: object) -> bool:
        return isinstance(name, str) and ALIASES.get(name, name) in self._by_name

    def __getitem__(self, name: str) -> Connective:
        try:
            return self._by_name[ALIASES.get(name, name)]
        except KeyError:
            raise UnknownConnective(name) from None

    def names(self) -> list[str]:
        return list(self._by_name)

    def dual(self, name: str) -> Connective:
        c = self[name]
        d = self[c.dual_name]
        if d.arity != c.arity:
            raise PartitionError(f"{c.name} and its dual {d.name} differ in arity")
        return d

    def validation_errors(self) -> list[str]:
        """Describe every entry whose dual is missing or is not its orthogonal complement."""
        errors = []
        for c in self:
            if c.dual_name not in self:
                errors.append(f"{c.name}: dual {c.dual_name} not registered")
                continue
            d = self[c.dual_name]
            if d.dual_name != c.name:
                errors.append(f"{c.name}: dual {d.name} names {d.dual_name} as its dual")
            elif d.arity != c.arity or not is_connective_pair(c.rules, d.rules):
                errors.append(f"{c.name}/{d.name}: rule sets are not mutual orthogonal complements")
        return errors

    def pairs(self) -> list[tuple[Connective, Connective]]:
        """Each dual pair once, in registration order of its first member."""
        seen, out = set(), []
        for c in self:
            if c.name in seen:
                continue
            d = self.dual(c.name)
            seen.update((c.name, d.name))
            out.append((c, d))
        return out

    @classmethod
    def load(cls, paths: Iterable[str | os.PathLike]) -> Catalog:
        """Read connective files; a directory contributes every *.json inside it."""
        out = cls()
        for path in paths:
            path = Path(path)
            files = sorted(path.glob("*.json")) if path.is_dir() else [path]
            for f in files:
                data = json.loads(f.read_text())
                for entry in data if isinstance(data, list) else [data]:
                    out.add(Connective.from_json(entry))
        return out


def _shipped() -> Catalog:
    out = Catalog()
    root = resources.files("mllc") / "catalog_data"
    for entry in sorted(root.iterdir(), key=lambda e: e.name):
        if entry.name.endswith(".json"):
            out.add(Connective.from_json(json.loads(entry.read_text())))
    return out


_DEFAULT: Catalog | None = None


def default_catalog() -> Catalog:
    """Built-ins, then the shipped examples (G, C3 and their duals), then $MLLC_CATALOG."""
    global _DEFAULT
    if _DEFAULT is None:
        cat = Catalog(builtin_connectives()).merge(_shipped())
        extra = os.environ.get(CATALOG_ENV)
        if extra:
            cat = cat.merge(Catalog.load(extra.split(os.pathsep)))
        _DEFAULT = cat
    return _DEFAULT
