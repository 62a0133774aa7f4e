"""Citizen-facing infection-code verification against the registered
pattern automatons and the dispatch registry."""

from __future__ import annotations

from dataclasses import dataclass

from ..patterns import CLASS_MARKERS, InfectionInstance, InfectionPattern
from ..surveillance import TrackingReport


@dataclass(frozen=True)
class InfectionDetail:
    code: str
    valid: bool
    pattern_id: str | None = None
    case_id: str | None = None
    contagion_place: str | None = None
    contagion_time: str | None = None
    # language member that was never actually dispatched to anyone
    undispatched: bool = False


class CodeVerifier:
    """Resolves codes via the dispatch index when possible, falling back
    to running the payload through every registered automaton."""

    def __init__(self):
        self._patterns: dict[str, InfectionPattern] = {}
        self._order: list[str] = []
        self._dispatched: dict[str, InfectionInstance] = {}
        self._case_reports: dict[str, TrackingReport] = {}

    def register_pattern(self, pattern: InfectionPattern) -> None:
        if pattern.pattern_id not in self._patterns:
            self._order.append(pattern.pattern_id)
        self._patterns[pattern.pattern_id] = pattern

    def register_dispatch(self, inst: InfectionInstance) -> None:
        self._dispatched[inst.code] = inst

    def register_report(self, case_id: str, report: TrackingReport) -> None:
        self._case_reports[case_id] = report

    def verify_code(self, code: str) -> InfectionDetail:
        if len(code) < 1 or code[0] not in CLASS_MARKERS:
            return InfectionDetail(code=code, valid=False)
        payload = code[1:]
        inst = self._dispatched.get(code)
        if inst is not None:
            return self._detail(code, self._patterns[inst.pattern_id], False)
        for pid in self._order:
            pattern = self._patterns[pid]
            if pattern.dfa.accepts(payload):
                return self._detail(code, pattern, True)
        return InfectionDetail(code=code, valid=False)

    def _detail(
        self, code: str, pattern: InfectionPattern, undispatched: bool
    ) -> InfectionDetail:
        report = self._case_reports.get(pattern.case_id)
        place = report.places[0] if report and report.places else None
        return InfectionDetail(
            code=code,
            valid=True,
            pattern_id=pattern.pattern_id,
            case_id=pattern.case_id,
            contagion_place=place,
            contagion_time=pattern.created_at,
            undispatched=undispatched,
        )
