"""Simulated citizen clients: inboxes, code delivery, risk registry,
suspect detection and in-cluster warning exchange."""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from ..patterns import InfectionInstance
from .risk import RiskEstimate, estimate

DEFAULT_P_PER_CONTACT = 0.1


class ClusterTooSmall(ValueError):
    """Warning exchange needs at least two members."""


@dataclass
class ClientInbox:
    client_id: str
    messages: list[tuple[str, str, str]] = field(default_factory=list)
    # (code, received_at, pattern_id); append-only, codes unique
    _codes: set[str] = field(default_factory=set)

    @property
    def codes(self) -> list[str]:
        return [m[0] for m in self.messages]

    def deliver(self, code: str, received_at: str, pattern_id: str) -> bool:
        """Append unless already held; returns True when delivered."""
        if code in self._codes:
            return False
        self._codes.add(code)
        self.messages.append((code, received_at, pattern_id))
        return True


@dataclass(frozen=True)
class DeliveryRecord:
    code: str
    recipient: str
    status: str  # delivered | duplicate | unknown_recipient | dropped | place


@dataclass(frozen=True)
class WarningMessage:
    sender_id: str
    risk: float
    issued_at: str


class ClientFleet:
    """All P2P clients plus the authority-side risk registry.

    The simulated SMS transport is reliable by default; `drop_rate` > 0
    injects seeded message loss for fault testing.
    """

    def __init__(
        self,
        p_per_contact: float = DEFAULT_P_PER_CONTACT,
        drop_rate: float = 0.0,
        drop_seed=0,
    ):
        self.p_per_contact = p_per_contact
        self.drop_rate = drop_rate
        self._drop_rng = random.Random(f"drop:{drop_seed}")
        self.inboxes: dict[str, ClientInbox] = {}
        self.place_codes: dict[str, list[str]] = {}
        self.risk_registry: dict[str, RiskEstimate] = {}
        self.delivered = 0
        self.duplicates = 0
        self.place_deliveries = 0

    def register_client(self, client_id: str) -> ClientInbox:
        inbox = self.inboxes.get(client_id)
        if inbox is None:
            inbox = ClientInbox(client_id)
            self.inboxes[client_id] = inbox
            self.risk_registry[client_id] = estimate(client_id, 0, self.p_per_contact)
        return inbox

    def register_place(self, place_id: str) -> None:
        self.place_codes.setdefault(place_id, [])

    def notify(
        self, instances: list[InfectionInstance], received_at: str
    ) -> list[DeliveryRecord]:
        """Route P-codes to client inboxes and B-codes to the place
        registry; unknown recipients are reported, not fatal."""
        report: list[DeliveryRecord] = []
        for inst in instances:
            if self.drop_rate and self._drop_rng.random() < self.drop_rate:
                report.append(DeliveryRecord(inst.code, inst.subject_id, "dropped"))
                continue
            if inst.class_marker == "B":
                if inst.subject_id not in self.place_codes:
                    report.append(
                        DeliveryRecord(inst.code, inst.subject_id, "unknown_recipient")
                    )
                    continue
                self.place_codes[inst.subject_id].append(inst.code)
                self.place_deliveries += 1
                report.append(DeliveryRecord(inst.code, inst.subject_id, "place"))
                continue
            inbox = self.inboxes.get(inst.subject_id)
            if inbox is None:
                report.append(
                    DeliveryRecord(inst.code, inst.subject_id, "unknown_recipient")
                )
                continue
            if inbox.deliver(inst.code, received_at, inst.pattern_id):
                self.delivered += 1
                status = "delivered"
                self._refresh_risk(inst.subject_id)
            else:
                self.duplicates += 1
                status = "duplicate"
            report.append(DeliveryRecord(inst.code, inst.subject_id, status))
        return report

    def _refresh_risk(self, client_id: str) -> None:
        # hidden routine: risk recomputed on inbox change and pushed to
        # the authority-readable registry
        n = len(self.inboxes[client_id].messages)
        self.risk_registry[client_id] = estimate(client_id, n, self.p_per_contact)

    def risk_of(self, client_id: str) -> RiskEstimate:
        return self.risk_registry[client_id]

    def detect_suspects(
        self, threshold: float | None = None, k: int | None = None
    ) -> list[RiskEstimate]:
        """Clients by risk descending (id ascending on ties); keep
        risk >= threshold, or the first k, depending on mode."""
        ranked = sorted(
            self.risk_registry.values(), key=lambda e: (-e.risk, e.client_id)
        )
        if threshold is not None:
            return [e for e in ranked if e.risk >= threshold]
        if k is not None:
            if k < 1:
                raise ValueError("k must be >= 1")
            return ranked[:k]
        return ranked

    def exchange_warnings(
        self, cluster: list[str], now: str
    ) -> dict[str, list[WarningMessage]]:
        """Every member broadcasts its risk to every other member; each
        member's view is ranked risk-descending, sender id on ties."""
        members = sorted(set(cluster))
        if len(members) < 2:
            raise ClusterTooSmall("cluster needs >= 2 members")
        for m in members:
            if m not in self.risk_registry:
                raise KeyError(f"unknown client {m!r}")
        views: dict[str, list[WarningMessage]] = {}
        for receiver in members:
            senders = [m for m in members if m != receiver]
            msgs = [
                WarningMessage(
                    sender_id=s, risk=self.risk_registry[s].risk, issued_at=now
                )
                for s in senders
            ]
            msgs.sort(key=lambda w: (-w.risk, w.sender_id))
            views[receiver] = msgs
        return views
