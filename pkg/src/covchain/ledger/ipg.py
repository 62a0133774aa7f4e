"""Infection Pattern Generator: one random pattern + verifier automaton
per confirmed case, and the tracking request sent toward surveillance."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from ..patterns import (
    GenerationConfig,
    GenerationExhausted,
    InfectionPattern,
    random_pattern,
    to_text,
)


class DuplicateCase(ValueError):
    """Case already holds a registered pattern."""


@dataclass(frozen=True)
class TrackingRequest:
    request_id: str
    case_id: str
    issued_at: str


@dataclass
class PatternGenerator:
    """Registry of confirmed cases and their generated patterns.

    Guarantees distinct source_text across cases by retrying generation
    with follow-on sub-seeds on collision.
    """

    cfg: GenerationConfig = field(default_factory=GenerationConfig)
    by_case: dict[str, InfectionPattern] = field(default_factory=dict)
    by_pattern_id: dict[str, InfectionPattern] = field(default_factory=dict)
    _used_texts: set[str] = field(default_factory=set)
    _request_counter: itertools.count = field(default_factory=itertools.count)

    def register_case(
        self, case_id: str, seed, created_at: str
    ) -> tuple[InfectionPattern, TrackingRequest]:
        if case_id in self.by_case:
            raise DuplicateCase(f"case {case_id!r} already registered")
        text = None
        for salt in range(self.cfg.max_retries):
            ast = random_pattern(f"{seed}/{salt}", self.cfg)
            text = to_text(ast.root)
            if text not in self._used_texts:
                break
        else:
            raise GenerationExhausted(
                f"could not find an unused pattern text for case {case_id!r}"
            )
        pattern = InfectionPattern.from_ast(
            pattern_id=f"IP-{len(self.by_case):04d}",
            case_id=case_id,
            ast=ast,
            created_at=created_at,
        )
        pattern.dfa  # compile the verifier automaton up front
        self.by_case[case_id] = pattern
        self.by_pattern_id[pattern.pattern_id] = pattern
        self._used_texts.add(text)
        request = TrackingRequest(
            request_id=f"TR-{next(self._request_counter):04d}",
            case_id=case_id,
            issued_at=created_at,
        )
        return pattern, request
