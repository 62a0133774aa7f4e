"""Scenario files: schema validation and loading."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

import jsonschema

from ..p2p import DEFAULT_P_PER_CONTACT
from ..patterns import DEFAULT_ALPHABET
from ..surveillance import DEFAULT_MIN_CONTACT_S, DEFAULT_WINDOW_S


class ScenarioError(ValueError):
    def __init__(self, field_path: str, detail: str):
        self.field = field_path
        super().__init__(f"{field_path}: {detail}")


_SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "title": "Simulation scenario",
    "type": "object",
    "required": ["seed", "population", "confirmed_cases"],
    "additionalProperties": False,
    "properties": {
        "seed": {"type": "integer"},
        "clock_start": {
            "type": "string",
            "pattern": "^\\d{2}/\\d{2}/\\d{2}-\\d{2}:\\d{2}:\\d{2}$",
        },
        "population": {
            "type": "object",
            "required": ["persons", "places"],
            "additionalProperties": False,
            "properties": {
                "persons": {
                    "type": "array",
                    "items": {"type": "string", "minLength": 1},
                },
                "places": {
                    "type": "array",
                    "items": {"type": "string", "minLength": 1},
                },
            },
        },
        "contact_log": {"type": "string"},
        "contacts": {"type": "array", "items": {"type": "object"}},
        "confirmed_cases": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["time", "case_id"],
                "additionalProperties": False,
                "properties": {
                    "time": {"type": "integer", "minimum": 0},
                    "case_id": {"type": "string", "minLength": 1},
                },
            },
        },
        "config": {
            "type": "object",
            "additionalProperties": False,
            "properties": {
                "block_capacity": {"type": "integer", "minimum": 1},
                "difficulty": {"type": "integer", "minimum": 0},
                "num_miners": {"type": "integer", "minimum": 1},
                "p_per_contact": {"type": "number", "minimum": 0, "maximum": 1},
                "min_contact_s": {"type": "integer", "minimum": 0},
                "window_s": {"type": "integer", "minimum": 1},
                "alphabet": {"type": "string", "minLength": 1},
                "min_instances": {"type": "integer", "minimum": 1},
                "max_depth": {"type": "integer", "minimum": 1},
            },
        },
    },
}


@dataclass(frozen=True)
class ScenarioConfig:
    block_capacity: int = 7
    difficulty: int = 8
    num_miners: int = 4
    p_per_contact: float = DEFAULT_P_PER_CONTACT
    min_contact_s: int = DEFAULT_MIN_CONTACT_S
    window_s: int = DEFAULT_WINDOW_S
    alphabet: tuple[str, ...] = DEFAULT_ALPHABET
    min_instances: int = 8
    max_depth: int = 4


@dataclass(frozen=True)
class Scenario:
    seed: int
    persons: tuple[str, ...]
    places: tuple[str, ...]
    confirmed_cases: tuple[tuple[int, str], ...]  # (sim time s, case id)
    config: ScenarioConfig = field(default_factory=ScenarioConfig)
    clock_start: str = "01/06/20-00:00:00"
    contacts_jsonl: str = ""


def scenario_from_dict(doc: dict, base_dir: Path | None = None) -> Scenario:
    try:
        jsonschema.validate(doc, _SCHEMA)
    except jsonschema.ValidationError as exc:
        path = "/".join(str(p) for p in exc.absolute_path) or "(root)"
        raise ScenarioError(path, exc.message) from None

    persons = tuple(doc["population"]["persons"])
    places = tuple(doc["population"]["places"])
    if len(set(persons)) != len(persons):
        raise ScenarioError("population/persons", "duplicate person ids")
    if len(set(places)) != len(places):
        raise ScenarioError("population/places", "duplicate place ids")
    schedule = tuple((c["time"], c["case_id"]) for c in doc["confirmed_cases"])
    for i, (_, case_id) in enumerate(schedule):
        if case_id not in persons:
            raise ScenarioError(
                f"confirmed_cases/{i}/case_id",
                f"{case_id!r} is not in the population",
            )

    contacts_jsonl = ""
    if "contacts" in doc:
        contacts_jsonl = "\n".join(json.dumps(ev) for ev in doc["contacts"])
    elif "contact_log" in doc:
        log_path = Path(doc["contact_log"])
        if base_dir is not None and not log_path.is_absolute():
            log_path = base_dir / log_path
        try:
            contacts_jsonl = log_path.read_text(encoding="utf-8")
        except OSError as exc:
            raise ScenarioError("contact_log", str(exc)) from None

    cfg_doc = doc.get("config", {})
    cfg_kwargs = dict(cfg_doc)
    if "alphabet" in cfg_kwargs:
        cfg_kwargs["alphabet"] = tuple(cfg_kwargs["alphabet"])
    config = ScenarioConfig(**cfg_kwargs)

    return Scenario(
        seed=doc["seed"],
        persons=persons,
        places=places,
        confirmed_cases=schedule,
        config=config,
        clock_start=doc.get("clock_start", "01/06/20-00:00:00"),
        contacts_jsonl=contacts_jsonl,
    )


def load_scenario(path: str | Path) -> Scenario:
    path = Path(path)
    try:
        doc = json.loads(path.read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as exc:
        raise ScenarioError("(file)", str(exc)) from None
    return scenario_from_dict(doc, base_dir=path.parent)


def json_schema() -> dict:
    return _SCHEMA
