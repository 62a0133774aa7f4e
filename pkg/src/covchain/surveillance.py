"""Simulated mass-surveillance oracle.

There is no camera or recognition pipeline: an ingested contact-event log
IS the observational substrate.  Tracking queries answer from an index
over that log; the feedback hub correlates responses back to the ledger's
tracking requests exactly once.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

KIND_PERSON = "pp"
KIND_PLACE = "pl"

DEFAULT_MIN_CONTACT_S = 300
DEFAULT_WINDOW_S = 14 * 24 * 3600  # lookback horizon


class SchemaError(ValueError):
    def __init__(self, line: int, detail: str):
        self.line = line
        self.detail = detail
        super().__init__(f"line {line}: {detail}")


class UnknownPerson(KeyError):
    """Queried id never appears in any ingested event (likely a typo);
    an isolated-but-known person instead yields empty contact lists."""


class UnknownRequest(KeyError):
    """Feedback correlation id unknown or already consumed."""


@dataclass(frozen=True)
class ContactEvent:
    at: int
    kind: str  # "pp" or "pl"
    a: str
    b: str
    duration_s: int


@dataclass(frozen=True)
class TrackingReport:
    case_id: str
    window: tuple[int, int]
    contacts: tuple[str, ...]
    places: tuple[str, ...]


@dataclass(frozen=True)
class FeedbackMessage:
    report: TrackingReport
    request_id: str


def _parse_event(obj: dict, line_no: int) -> ContactEvent:
    try:
        at = obj["at"]
        kind = obj["kind"]
        a = obj["a"]
        b = obj["b"]
        duration_s = obj["duration_s"]
    except KeyError as exc:
        raise SchemaError(line_no, f"missing key {exc.args[0]!r}") from None
    if not isinstance(at, int) or at < 0:
        raise SchemaError(line_no, "'at' must be a non-negative integer")
    if kind not in (KIND_PERSON, KIND_PLACE):
        raise SchemaError(line_no, f"'kind' must be 'pp' or 'pl', got {kind!r}")
    if not isinstance(a, str) or not isinstance(b, str) or not a or not b:
        raise SchemaError(line_no, "'a' and 'b' must be non-empty strings")
    if not isinstance(duration_s, int) or duration_s <= 0:
        raise SchemaError(line_no, "'duration_s' must be a positive integer")
    if kind == KIND_PERSON and a == b:
        raise SchemaError(line_no, "person-person event needs two distinct persons")
    return ContactEvent(at=at, kind=kind, a=a, b=b, duration_s=duration_s)


class EventStore:
    """Contact events indexed by participant; batch-atomic ingestion."""

    def __init__(self, min_contact_s: int = DEFAULT_MIN_CONTACT_S):
        self.min_contact_s = min_contact_s
        self.events: list[ContactEvent] = []
        self._dedup: set[tuple[int, str, str]] = set()
        self._known: set[str] = set()

    def ingest_jsonl(self, text: str) -> int:
        """Parse and index a JSONL batch; SchemaError rolls the whole
        batch back.  Duplicate (at, a, b) triples count once, ever."""
        parsed: list[ContactEvent] = []
        for line_no, line in enumerate(text.splitlines(), start=1):
            if not line.strip():
                continue
            try:
                obj = json.loads(line)
            except json.JSONDecodeError as exc:
                raise SchemaError(line_no, f"invalid JSON: {exc.msg}") from None
            if not isinstance(obj, dict):
                raise SchemaError(line_no, "each line must be a JSON object")
            parsed.append(_parse_event(obj, line_no))
        return self.ingest(parsed)

    def ingest(self, events: list[ContactEvent]) -> int:
        accepted = 0
        for ev in events:
            key = (ev.at, ev.a, ev.b)
            if key in self._dedup:
                continue
            self._dedup.add(key)
            self.events.append(ev)
            self._known.add(ev.a)
            if ev.kind == KIND_PERSON:
                self._known.add(ev.b)
            accepted += 1
        return accepted

    def track(self, case_id: str, now: int, window_s: int = DEFAULT_WINDOW_S) -> TrackingReport:
        """Close contacts and visited places of a case within the lookback
        window, ordered by first-contact time then id."""
        if window_s <= 0:
            raise ValueError("window_s must be positive")
        if case_id not in self._known:
            raise UnknownPerson(case_id)
        lo = now - window_s
        first_contact: dict[str, int] = {}
        first_place: dict[str, int] = {}
        for ev in self.events:
            if not (lo <= ev.at <= now) or ev.duration_s < self.min_contact_s:
                continue
            if ev.kind == KIND_PERSON:
                other = None
                if ev.a == case_id:
                    other = ev.b
                elif ev.b == case_id:
                    other = ev.a
                if other is not None:
                    if other not in first_contact or ev.at < first_contact[other]:
                        first_contact[other] = ev.at
            elif ev.a == case_id:
                place = ev.b
                if place not in first_place or ev.at < first_place[place]:
                    first_place[place] = ev.at
        contacts = tuple(sorted(first_contact, key=lambda p: (first_contact[p], p)))
        places = tuple(sorted(first_place, key=lambda p: (first_place[p], p)))
        return TrackingReport(
            case_id=case_id, window=(lo, now), contacts=contacts, places=places
        )


class FeedbackHub:
    """Exactly-once correlation of tracking responses to open requests."""

    def __init__(self):
        self._open: set[str] = set()

    def open_request(self, request_id: str) -> None:
        self._open.add(request_id)

    def feedback(self, report: TrackingReport, request_id: str) -> FeedbackMessage:
        if request_id not in self._open:
            raise UnknownRequest(request_id)
        self._open.discard(request_id)
        return FeedbackMessage(report=report, request_id=request_id)


def instance_requests(report: TrackingReport) -> list[tuple[str, str]]:
    """Map a tracking report to (class_marker, subject) derivation requests:
    persons first as P-requests, then places as B-requests."""
    return [("P", person) for person in report.contacts] + [
        ("B", place) for place in report.places
    ]
