"""AST node types for the restricted regular-expression dialect.

Supported constructs: single-symbol literals, juxtaposition (concat),
'|' (union), postfix '*' (zero-or-more) and '+' (one-or-more), and
parentheses for grouping.  No character classes, anchors or backrefs.
"""

from __future__ import annotations

from dataclasses import dataclass

CLASS_MARKERS = ("P", "B")
METACHARACTERS = frozenset("()|*+")
DEFAULT_ALPHABET = ("a", "b", "c", "0", "1")


class Node:
    __slots__ = ()


@dataclass(frozen=True)
class Literal(Node):
    symbol: str


@dataclass(frozen=True)
class Concat(Node):
    children: tuple[Node, ...]

    def __post_init__(self):
        if len(self.children) < 2:
            raise ValueError("Concat needs >= 2 children")


@dataclass(frozen=True)
class Union(Node):
    children: tuple[Node, ...]

    def __post_init__(self):
        if len(self.children) < 2:
            raise ValueError("Union needs >= 2 children")


@dataclass(frozen=True)
class Star(Node):
    child: Node


@dataclass(frozen=True)
class Plus(Node):
    child: Node


@dataclass(frozen=True)
class PatternAst:
    """A parsed pattern plus the ordered alphabet it is defined over."""

    root: Node
    alphabet: tuple[str, ...]

    def __post_init__(self):
        for sym in self.alphabet:
            if sym in CLASS_MARKERS or sym in METACHARACTERS:
                raise ValueError(f"reserved symbol {sym!r} in alphabet")
        for sym in literals_of(self.root):
            if sym not in self.alphabet:
                raise ValueError(f"literal {sym!r} outside alphabet")


def literals_of(node: Node) -> set[str]:
    if isinstance(node, Literal):
        return {node.symbol}
    if isinstance(node, (Concat, Union)):
        out: set[str] = set()
        for c in node.children:
            out |= literals_of(c)
        return out
    if isinstance(node, (Star, Plus)):
        return literals_of(node.child)
    raise TypeError(f"unknown node {node!r}")


def to_text(node: Node) -> str:
    """Canonical textual form; parses back to a structurally equal AST."""
    if isinstance(node, Literal):
        return node.symbol
    if isinstance(node, Union):
        return "|".join(to_text(c) for c in node.children)
    if isinstance(node, Concat):
        parts = []
        for c in node.children:
            s = to_text(c)
            if isinstance(c, Union):
                s = f"({s})"
            parts.append(s)
        return "".join(parts)
    if isinstance(node, (Star, Plus)):
        op = "*" if isinstance(node, Star) else "+"
        s = to_text(node.child)
        if not isinstance(node.child, Literal):
            s = f"({s})"
        return s + op
    raise TypeError(f"unknown node {node!r}")
