"""Infection patterns and the instances (codes) derived from them."""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

from .ast import CLASS_MARKERS, PatternAst, to_text
from .dfa import Dfa, LanguageExhausted, compile_pattern, enumerate_shortlex


@dataclass(frozen=True)
class InfectionPattern:
    """A registered pattern for one confirmed case; the ledger payload unit."""

    pattern_id: str
    case_id: str
    body: PatternAst
    source_text: str
    created_at: str

    class_markers = CLASS_MARKERS

    @cached_property
    def dfa(self) -> Dfa:
        return compile_pattern(self.body)

    @staticmethod
    def from_ast(pattern_id: str, case_id: str, ast: PatternAst, created_at: str):
        return InfectionPattern(
            pattern_id=pattern_id,
            case_id=case_id,
            body=ast,
            source_text=to_text(ast.root),
            created_at=created_at,
        )


@dataclass(frozen=True)
class InfectionInstance:
    """One dispatched infection code: class marker + language payload."""

    code: str
    class_marker: str
    payload: str
    pattern_id: str
    subject_id: str
    rank: int

    def __post_init__(self):
        if self.class_marker not in CLASS_MARKERS:
            raise ValueError(f"bad class marker {self.class_marker!r}")
        if self.code != self.class_marker + self.payload:
            raise ValueError("code must be marker + payload")


def derive_instances(
    pattern: InfectionPattern,
    requests: list[tuple[str, str]],
    reserved_codes: set[str] | None = None,
) -> list[InfectionInstance]:
    """Assign language strings to (class_marker, subject_id) requests.

    Ranks run independently per class marker: the k-th person request gets
    the k-th shortlex string, and so does the k-th building request, which
    reproduces the paired P.../B... instance lists.  Output order follows
    the request order.

    `reserved_codes` holds codes already dispatched (by any pattern);
    colliding payloads are skipped so no two subjects ever share a code.
    A skipped word still consumes its shortlex rank.
    """
    reserved = frozenset(reserved_codes or ())
    per_class: dict[str, int] = {}
    for marker, _ in requests:
        if marker not in CLASS_MARKERS:
            raise ValueError(f"bad class marker {marker!r}")
        per_class[marker] = per_class.get(marker, 0) + 1

    gen = enumerate_shortlex(pattern.dfa)
    words: list[str] = []

    def word_at(idx: int) -> str:
        while idx >= len(words):
            try:
                words.append(next(gen))
            except StopIteration:
                raise LanguageExhausted(
                    f"pattern {pattern.pattern_id} language exhausted after "
                    f"{len(words)} strings"
                ) from None
        return words[idx]

    # per-class cursor over shortlex ranks, skipping reserved codes
    cursor: dict[str, int] = {m: 0 for m in per_class}

    def next_free(marker: str) -> tuple[str, int]:
        idx = cursor[marker]
        while True:
            payload = word_at(idx)
            idx += 1
            if marker + payload not in reserved:
                cursor[marker] = idx
                return payload, idx - 1

    out: list[InfectionInstance] = []
    for marker, subject_id in requests:
        payload, rank = next_free(marker)
        out.append(
            InfectionInstance(
                code=marker + payload,
                class_marker=marker,
                payload=payload,
                pattern_id=pattern.pattern_id,
                subject_id=subject_id,
                rank=rank,
            )
        )
    return out
