"""Formulas of MLL extended with generalized connectives.

Concrete grammar (whitespace is insignificant)::

    F ::= Name | ~F | (F * F) | (F | F) | Name(F, ..., F)

`*` is tensor and `|` is par.  Negation is pushed to the atoms while
parsing, so every Formula value is in negation normal form.
"""

from __future__ import annotations

import re
from collections import Counter
from dataclasses import dataclass
from typing import Iterable, Sequence

from .catalog import ALIASES, Catalog, default_catalog


class FormulaError(ValueError):
    pass


class FormulaSyntaxError(FormulaError):
    def __init__(self, message: str, text: str, pos: int):
        super().__init__(f"{message} at position {pos}: {text!r}")
        self.text = text
        self.pos = pos


@dataclass(frozen=True)
class Atom:
    name: str
    negated: bool = False

    connective = None
    args = ()

    def __str__(self) -> str:
        return ("~" if self.negated else "") + self.name


@dataclass(frozen=True)
class Tensor:
    left: "Formula"
    right: "Formula"

    connective = "tensor"

    @property
    def args(self) -> tuple:
        return (self.left, self.right)

    def __str__(self) -> str:
        return f"({self.left} * {self.right})"


@dataclass(frozen=True)
class Par:
    left: "Formula"
    right: "Formula"

    connective = "par"

    @property
    def args(self) -> tuple:
        return (self.left, self.right)

    def __str__(self) -> str:
        return f"({self.left} | {self.right})"


@dataclass(frozen=True)
class Apply:
    connective: str
    args: tuple

    def __str__(self) -> str:
        return f"{self.connective}({','.join(map(str, self.args))})"


Formula = Atom | Tensor | Par | Apply


def neg(name: str) -> Atom:
    return Atom(name, True)


def is_atomic(f: Formula) -> bool:
    return isinstance(f, Atom)


def build(name: str, args: Sequence[Formula], catalog: Catalog | None = None) -> Formula:
    """Canonical formula for connective `name` applied to `args`."""
    catalog = catalog or default_catalog()
    c = catalog[name]
    if len(args) != c.arity:
        raise FormulaError(f"{c.name} expects {c.arity} arguments, got {len(args)}")
    name = ALIASES.get(name, name)
    if name == "tensor":
        return Tensor(*args)
    if name == "par":
        return Par(*args)
    return Apply(c.name, tuple(args))


def dual(f: Formula, catalog: Catalog | None = None) -> Formula:
    if isinstance(f, Atom):
        return Atom(f.name, not f.negated)
    if isinstance(f, Tensor):
        return Par(dual(f.left, catalog), dual(f.right, catalog))
    if isinstance(f, Par):
        return Tensor(dual(f.left, catalog), dual(f.right, catalog))
    catalog = catalog or default_catalog()
    d = catalog.dual(f.connective)
    return build(d.name, [dual(a, catalog) for a in f.args], catalog)


def size(f: Formula) -> int:
    """Number of connective occurrences."""
    return 0 if isinstance(f, Atom) else 1 + sum(size(a) for a in f.args)


def atoms(f: Formula) -> Iterable[Atom]:
    if isinstance(f, Atom):
        yield f
    else:
        for a in f.args:
            yield from atoms(a)


def atom_balance(fs: Iterable[Formula]) -> Counter:
    """Positive minus negative occurrences per atom name; all zero in any provable sequent."""
    c: Counter = Counter()
    for f in fs:
        for a in atoms(f):
            c[a.name] += -1 if a.negated else 1
    return c


# -- parsing ------------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:([A-Za-z_][A-Za-z0-9_]*)|(.))")


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None or m.end() == pos:
            break
        if m.group(1):
            tokens.append(("name", m.group(1), m.start(1)))
        elif m.group(2) and not m.group(2).isspace():
            tokens.append(("sym", m.group(2), m.start(2)))
        pos = m.end()
    tokens.append(("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str, catalog: Catalog):
        self.text = text
        self.catalog = catalog
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self, k: int = 0) -> tuple[str, str, int]:
        return self.tokens[min(self.i + k, len(self.tokens) - 1)]

    def expect(self, sym: str) -> None:
        kind, val, pos = self.peek()
        if kind != "sym" or val != sym:
            raise FormulaSyntaxError(f"expected {sym!r}", self.text, pos)
        self.i += 1

    def error(self, message: str, pos: int | None = None):
        return FormulaSyntaxError(message, self.text, self.peek()[2] if pos is None else pos)

    def formula(self) -> Formula:
        kind, val, pos = self.peek()
        if kind == "sym" and val == "~":
            self.i += 1
            return dual(self.formula(), self.catalog)
        if kind == "sym" and val == "(":
            self.i += 1
            left = self.formula()
            k2, op, p2 = self.peek()
            if k2 != "sym" or op not in "*|":
                raise self.error("expected '*' or '|'")
            self.i += 1
            right = self.formula()
            self.expect(")")
            return Tensor(left, right) if op == "*" else Par(left, right)
        if kind == "name":
            self.i += 1
            name = val
            # a trailing star belongs to the name when it spells a known connective, e.g. G*(...)
            k2, v2, _ = self.peek()
            if k2 == "sym" and v2 == "*" and self.peek(1)[1] == "(" and name + "*" in self.catalog:
                name += "*"
                self.i += 1
            if self.peek()[1] == "(" and self.peek()[0] == "sym":
                self.i += 1
                args = [self.formula()]
                while self.peek()[1] == ",":
                    self.i += 1
                    args.append(self.formula())
                self.expect(")")
                if name not in self.catalog:
                    raise FormulaSyntaxError(f"unknown connective {name!r}", self.text, pos)
                try:
                    return build(name, args, self.catalog)
                except FormulaError as e:
                    raise FormulaSyntaxError(str(e), self.text, pos) from None
            return Atom(name)
        raise self.error("expected a formula")


def parse_formula(text: str, catalog: Catalog | None = None) -> Formula:
    p = _Parser(text, catalog or default_catalog())
    f = p.formula()
    if p.peek()[0] != "end":
        raise p.error("trailing input")
    return f


def parse_sequent(text: str, catalog: Catalog | None = None) -> list[Formula]:
    """Parse a comma-separated list of formulas, optionally prefixed by a turnstile."""
    text = text.strip()
    for prefix in ("|-", "⊢"):
        if text.startswith(prefix):
            text = text[len(prefix):]
    catalog = catalog or default_catalog()
    p = _Parser(text, catalog)
    out = [p.formula()]
    while p.peek()[1] == ",":
        p.i += 1
        out.append(p.formula())
    if p.peek()[0] != "end":
        raise p.error("trailing input")
    return out


def sequent_key(fs: Iterable[Formula]) -> tuple[str, ...]:
    """Order-insensitive key identifying a multiset of formulas."""
    return tuple(sorted(map(str, fs)))
