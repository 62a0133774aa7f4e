"""Pattern AST -> NFA (Thompson construction) -> complete DFA, plus
shortlex enumeration of the accepted language."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterator

from .ast import Concat, Literal, Node, PatternAst, Plus, Star, Union


class LanguageExhausted(ValueError):
    """A finite language has fewer strings than were requested."""


@dataclass(frozen=True)
class Dfa:
    """Deterministic complete automaton over a fixed ordered alphabet.

    States are dense ints 0..n-1; `transitions[state][symbol]` is total
    (a dead sink state is materialized during subset construction).
    """

    alphabet: tuple[str, ...]
    n_states: int
    start: int
    accepting: frozenset[int]
    transitions: tuple[dict[str, int], ...]
    _live: frozenset[int] = field(repr=False, default=frozenset())

    def accepts(self, payload: str) -> bool:
        """Membership test; foreign symbols reject rather than raise."""
        state = self.start
        for ch in payload:
            nxt = self.transitions[state].get(ch)
            if nxt is None:
                return False
            state = nxt
        return state in self.accepting

    def live_states(self) -> frozenset[int]:
        """States from which some accepting state is reachable."""
        return self._live


def compile_pattern(ast: PatternAst) -> Dfa:
    nfa_trans, start, accept = _thompson(ast.root)
    return _determinize(ast.alphabet, nfa_trans, start, accept)


# --- Thompson construction ------------------------------------------------
# NFA transitions: dict state -> list of (symbol-or-None, target); None = eps.

def _thompson(root: Node):
    trans: dict[int, list[tuple[str | None, int]]] = {}
    counter = [0]

    def new_state() -> int:
        s = counter[0]
        counter[0] += 1
        trans[s] = []
        return s

    def build(node: Node) -> tuple[int, int]:
        if isinstance(node, Literal):
            s, t = new_state(), new_state()
            trans[s].append((node.symbol, t))
            return s, t
        if isinstance(node, Concat):
            first_s, prev_t = build(node.children[0])
            for child in node.children[1:]:
                s, t = build(child)
                trans[prev_t].append((None, s))
                prev_t = t
            return first_s, prev_t
        if isinstance(node, Union):
            s, t = new_state(), new_state()
            for child in node.children:
                cs, ct = build(child)
                trans[s].append((None, cs))
                trans[ct].append((None, t))
            return s, t
        if isinstance(node, Star):
            s, t = new_state(), new_state()
            cs, ct = build(node.child)
            trans[s].extend([(None, cs), (None, t)])
            trans[ct].extend([(None, cs), (None, t)])
            return s, t
        if isinstance(node, Plus):
            cs, ct = build(node.child)
            t = new_state()
            trans[ct].extend([(None, cs), (None, t)])
            return cs, t
        raise TypeError(f"unknown node {node!r}")

    start, accept = build(root)
    return trans, start, accept


def _eps_closure(trans, states: frozenset[int]) -> frozenset[int]:
    stack = list(states)
    seen = set(states)
    while stack:
        s = stack.pop()
        for sym, t in trans[s]:
            if sym is None and t not in seen:
                seen.add(t)
                stack.append(t)
    return frozenset(seen)


def _determinize(alphabet, trans, nfa_start, nfa_accept) -> Dfa:
    from collections import deque

    start_set = _eps_closure(trans, frozenset([nfa_start]))
    ids: dict[frozenset[int], int] = {start_set: 0}
    rows: list[dict[str, int]] = []
    queue = deque([start_set])
    while queue:
        cur = queue.popleft()
        row: dict[str, int] = {}
        for sym in alphabet:
            moved = frozenset(t for s in cur for (a, t) in trans[s] if a == sym)
            nxt = _eps_closure(trans, moved)
            if nxt not in ids:
                ids[nxt] = len(ids)
                queue.append(nxt)
            row[sym] = ids[nxt]
        rows.append(row)
    accepting = frozenset(i for subset, i in ids.items() if nfa_accept in subset)
    live = _live_states(len(ids), rows, accepting)
    return Dfa(
        alphabet=tuple(alphabet),
        n_states=len(ids),
        start=0,
        accepting=accepting,
        transitions=tuple(rows),
        _live=live,
    )


def _live_states(n, rows, accepting) -> frozenset[int]:
    rev: dict[int, set[int]] = {i: set() for i in range(n)}
    for s, row in enumerate(rows):
        for t in row.values():
            rev[t].add(s)
    stack = list(accepting)
    live = set(accepting)
    while stack:
        s = stack.pop()
        for p in rev[s]:
            if p not in live:
                live.add(p)
                stack.append(p)
    return frozenset(live)


# --- shortlex enumeration -------------------------------------------------

def enumerate_shortlex(dfa: Dfa, max_len: int | None = None) -> Iterator[str]:
    """Yield the accepted language in shortlex order (length, then the
    alphabet's declared symbol order).  Terminates on finite languages;
    infinite ones stream forever unless `max_len` caps the search."""
    live = dfa.live_states()
    if dfa.start in dfa.accepting:
        yield ""
    frontier: list[tuple[str, int]] = (
        [("", dfa.start)] if dfa.start in live else []
    )
    length = 0
    while frontier:
        if max_len is not None and length >= max_len:
            return
        length += 1
        nxt: list[tuple[str, int]] = []
        for prefix, state in frontier:
            for sym in dfa.alphabet:
                t = dfa.transitions[state][sym]
                if t not in live:
                    continue
                word = prefix + sym
                if t in dfa.accepting:
                    yield word
                nxt.append((word, t))
        frontier = nxt


def take_shortlex(dfa: Dfa, count: int, max_len: int | None = None) -> list[str]:
    """First `count` language strings; raises LanguageExhausted if the
    (possibly length-capped) language is smaller."""
    out: list[str] = []
    for word in enumerate_shortlex(dfa, max_len=max_len):
        out.append(word)
        if len(out) == count:
            return out
    raise LanguageExhausted(
        f"language has only {len(out)} strings, {count} requested"
    )
