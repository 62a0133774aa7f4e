"""Recursive-descent parser for pattern source text.

Precedence (tightest first): postfix */+ , concatenation, '|'.
"""

from __future__ import annotations

from .ast import (
    CLASS_MARKERS,
    METACHARACTERS,
    Concat,
    Literal,
    Node,
    PatternAst,
    Plus,
    Star,
    Union,
)


class PatternSyntaxError(ValueError):
    """Malformed pattern text; carries 0-based position and expectation."""

    def __init__(self, position: int, expected: str, found: str):
        self.position = position
        self.expected = expected
        self.found = found
        super().__init__(f"at position {position}: expected {expected}, found {found}")


class AlphabetError(ValueError):
    """A literal in the pattern is not part of the declared alphabet."""

    def __init__(self, position: int, symbol: str):
        self.position = position
        self.symbol = symbol
        super().__init__(f"at position {position}: symbol {symbol!r} not in alphabet")


def parse_pattern(text: str, alphabet=None) -> PatternAst:
    from .ast import DEFAULT_ALPHABET

    alphabet = tuple(alphabet) if alphabet is not None else DEFAULT_ALPHABET
    if not text:
        raise PatternSyntaxError(0, "pattern", "end of input")
    p = _Parser(text, alphabet)
    root = p.parse_union()
    if p.pos != len(text):
        raise PatternSyntaxError(p.pos, "end of input", repr(text[p.pos]))
    return PatternAst(root=root, alphabet=alphabet)


class _Parser:
    def __init__(self, text: str, alphabet: tuple[str, ...]):
        self.text = text
        self.alphabet = alphabet
        self.pos = 0

    def peek(self) -> str | None:
        return self.text[self.pos] if self.pos < len(self.text) else None

    def parse_union(self) -> Node:
        branches = [self.parse_concat()]
        while self.peek() == "|":
            self.pos += 1
            branches.append(self.parse_concat())
        if len(branches) == 1:
            return branches[0]
        return Union(tuple(branches))

    def parse_concat(self) -> Node:
        items = [self.parse_repeat()]
        while True:
            c = self.peek()
            if c is None or c in "|)":
                break
            items.append(self.parse_repeat())
        if len(items) == 1:
            return items[0]
        return Concat(tuple(items))

    def parse_repeat(self) -> Node:
        node = self.parse_atom()
        while self.peek() in ("*", "+"):
            node = Star(node) if self.peek() == "*" else Plus(node)
            self.pos += 1
        return node

    def parse_atom(self) -> Node:
        c = self.peek()
        if c is None:
            raise PatternSyntaxError(self.pos, "literal or '('", "end of input")
        if c == "(":
            self.pos += 1
            node = self.parse_union()
            if self.peek() != ")":
                found = repr(self.peek()) if self.peek() else "end of input"
                raise PatternSyntaxError(self.pos, "')'", found)
            self.pos += 1
            return node
        if c in METACHARACTERS:
            raise PatternSyntaxError(self.pos, "literal or '('", repr(c))
        if c in CLASS_MARKERS or c not in self.alphabet:
            raise AlphabetError(self.pos, c)
        self.pos += 1
        return Literal(c)
