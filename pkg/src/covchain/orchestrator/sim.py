"""End-to-end case-registration pipeline tying the four subsystems
together: register -> generate pattern -> track -> derive codes ->
notify clients -> mine -> append block."""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field
from pathlib import Path

from ..clock import SimClock
from ..ledger import (
    Chain,
    DuplicateCase,
    PatternGenerator,
    block_to_line,
    mine,
)
from ..p2p import ClientFleet, CodeVerifier, InfectionDetail
from ..patterns import (
    GenerationConfig,
    InfectionInstance,
    InfectionPattern,
    derive_instances,
    take_shortlex,
)
from ..surveillance import (
    EventStore,
    FeedbackHub,
    UnknownPerson,
    instance_requests,
)
from .scenario import Scenario, ScenarioConfig


@dataclass
class PipelineRecord:
    """Audit trail of one case registration; mining fields stay None
    until the holding block closes."""

    case_id: str
    pattern_id: str
    pattern_text: str
    n_contacts: int
    n_places: int
    person_codes: int
    building_codes: int
    block_height: int | None = None
    mining: dict | None = None

    def to_dict(self) -> dict:
        return {
            "case_id": self.case_id,
            "pattern_id": self.pattern_id,
            "pattern_text": self.pattern_text,
            "n_contacts": self.n_contacts,
            "n_places": self.n_places,
            "person_codes": self.person_codes,
            "building_codes": self.building_codes,
            "block_height": self.block_height,
            "mining": self.mining,
        }


class Simulation:
    """Owns all mutable state; callers serialize mutations through it."""

    def __init__(
        self,
        persons: list[str],
        places: list[str],
        config: ScenarioConfig | None = None,
        seed: int = 0,
        clock_start: str = "01/06/20-00:00:00",
    ):
        self.config = config or ScenarioConfig()
        self.seed = seed
        self.persons = list(persons)
        self.places = list(places)
        self.clock = SimClock(clock_start)
        self.store = EventStore(min_contact_s=self.config.min_contact_s)
        self.hub = FeedbackHub()
        self.chain = Chain()
        self.verifier = CodeVerifier()
        self.fleet = ClientFleet(p_per_contact=self.config.p_per_contact)
        self.ipg = PatternGenerator(
            cfg=GenerationConfig(
                alphabet=self.config.alphabet,
                max_depth=self.config.max_depth,
                min_instances=self.config.min_instances,
            )
        )
        for p in self.persons:
            self.fleet.register_client(p)
        for pl in self.places:
            self.fleet.register_place(pl)
        self.records: list[PipelineRecord] = []
        self._draft: list[tuple[InfectionPattern, list[InfectionInstance], PipelineRecord]] = []
        self._case_counter = 0

    # --- ingestion --------------------------------------------------------

    def ingest_contacts_jsonl(self, text: str) -> int:
        accepted = self.store.ingest_jsonl(text)
        # observations move simulated time forward so that registrations
        # without an explicit time see the ingested events in-window
        if self.store.events:
            latest = max(ev.at for ev in self.store.events)
            if latest > self.clock.now_s:
                self.clock.advance_to(latest)
        return accepted

    # --- case pipeline ----------------------------------------------------

    def register_case(self, case_id: str, at_s: int | None = None) -> PipelineRecord:
        if case_id not in self.persons:
            raise UnknownPerson(case_id)
        if at_s is not None:
            self.clock.advance_to(at_s)
        now_stamp = self.clock.stamp()
        pattern, request = self.ipg.register_case(
            case_id, seed=f"{self.seed}/case/{self._case_counter}", created_at=now_stamp
        )
        try:
            self.hub.open_request(request.request_id)
            try:
                report = self.store.track(
                    case_id, now=self.clock.now_s, window_s=self.config.window_s
                )
            except UnknownPerson:
                # person known to the scenario but absent from the event
                # log: zero contacts, zero places
                from ..surveillance import TrackingReport

                report = TrackingReport(
                    case_id=case_id,
                    window=(self.clock.now_s - self.config.window_s, self.clock.now_s),
                    contacts=(),
                    places=(),
                )
            message = self.hub.feedback(report, request.request_id)
            instances = derive_instances(
                pattern,
                instance_requests(message.report),
                reserved_codes=set(self.chain.code_index),
            )

            self.verifier.register_pattern(pattern)
            self.verifier.register_report(case_id, report)
            for inst in instances:
                self.verifier.register_dispatch(inst)
                self.chain.register_instance(inst)
            self.fleet.notify(instances, received_at=now_stamp)
        except Exception:
            # roll the half-registered case back out of the generator
            self.ipg.by_case.pop(case_id, None)
            self.ipg.by_pattern_id.pop(pattern.pattern_id, None)
            self.ipg._used_texts.discard(pattern.source_text)
            raise

        record = PipelineRecord(
            case_id=case_id,
            pattern_id=pattern.pattern_id,
            pattern_text=pattern.source_text,
            n_contacts=len(report.contacts),
            n_places=len(report.places),
            person_codes=sum(1 for i in instances if i.class_marker == "P"),
            building_codes=sum(1 for i in instances if i.class_marker == "B"),
        )
        self.records.append(record)
        self._case_counter += 1
        self._draft.append((pattern, instances, record))
        if len(self._draft) >= self.config.block_capacity:
            self.flush()
        return record

    def flush(self) -> None:
        """Close the open block draft: mine over all dispatched codes of
        the drafted patterns and append."""
        if not self._draft:
            return
        patterns = [p for p, _, _ in self._draft]
        codes = [inst.code for _, instances, _ in self._draft for inst in instances]
        if not codes:
            # no contacts were tracked for any drafted case; mine over the
            # first language string of each pattern so the block can close
            codes = ["P" + take_shortlex(p.dfa, 1)[0] for p in patterns]
        from ..ledger.hashing import merkle_root

        mr = merkle_root([p.source_text for p in patterns])
        result = mine(
            merkle_root=mr,
            prev_hash=self.chain.tip_hash,
            candidate_codes=codes,
            num_miners=self.config.num_miners,
            difficulty=self.config.difficulty,
            seed=f"{self.seed}/mine/{self.chain.height}",
        )
        block = self.chain.append(
            patterns=patterns, result=result, timestamp=self.clock.stamp()
        )
        for _, _, record in self._draft:
            record.block_height = block.height
            record.mining = {
                "winner_miner": result.winner_miner,
                "winning_code": result.winning_code,
                "bhc": result.bhc,
                "tries_per_miner": list(result.tries_per_miner),
                "met_difficulty": result.met_difficulty,
            }
        self._draft = []

    # --- queries ----------------------------------------------------------

    def verify_code(self, code: str) -> InfectionDetail:
        return self.verifier.verify_code(code)

    def risk_table(self) -> dict[str, dict]:
        return {
            cid: {"n_codes": est.n_codes, "risk": est.risk}
            for cid, est in sorted(self.fleet.risk_registry.items())
        }

    def chain_lines(self) -> list[str]:
        return [block_to_line(b) for b in self.chain.blocks]


@dataclass
class RunSummary:
    chain_lines: list[str]
    chain_digest: str
    risk_table: dict[str, dict]
    suspects: list[dict]
    records: list[dict]

    def to_dict(self) -> dict:
        return {
            "chain_digest": self.chain_digest,
            "blocks": len(self.chain_lines),
            "risk_table": self.risk_table,
            "suspects": self.suspects,
            "pipeline": self.records,
        }


def run_scenario(scenario: Scenario) -> tuple[Simulation, RunSummary]:
    sim = Simulation(
        persons=list(scenario.persons),
        places=list(scenario.places),
        config=scenario.config,
        seed=scenario.seed,
        clock_start=scenario.clock_start,
    )
    if scenario.contacts_jsonl:
        sim.ingest_contacts_jsonl(scenario.contacts_jsonl)
    for at_s, case_id in sorted(scenario.confirmed_cases):
        sim.register_case(case_id, at_s=at_s)
    sim.flush()
    lines = sim.chain_lines()
    digest = hashlib.sha256(("\n".join(lines) + "\n").encode("utf-8")).hexdigest()
    suspects = [
        {"client_id": e.client_id, "n_codes": e.n_codes, "risk": e.risk}
        for e in sim.fleet.detect_suspects()
    ]
    summary = RunSummary(
        chain_lines=lines,
        chain_digest=digest,
        risk_table=sim.risk_table(),
        suspects=suspects,
        records=[r.to_dict() for r in sim.records],
    )
    return sim, summary


def write_outputs(summary: RunSummary, out_dir: str | Path) -> None:
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    (out / "chain.jsonl").write_text(
        "".join(line + "\n" for line in summary.chain_lines), encoding="utf-8"
    )
    (out / "risk_table.json").write_text(
        json.dumps(summary.risk_table, indent=2, sort_keys=True) + "\n",
        encoding="utf-8",
    )
    (out / "summary.json").write_text(
        json.dumps(summary.to_dict(), indent=2, sort_keys=True) + "\n",
        encoding="utf-8",
    )
