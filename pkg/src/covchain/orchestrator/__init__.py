"""Pipeline orchestration: scenario runner, simulation state, control API."""

from .scenario import (
    Scenario,
    ScenarioConfig,
    ScenarioError,
    json_schema,
    load_scenario,
    scenario_from_dict,
)
from .sim import PipelineRecord, RunSummary, Simulation, run_scenario, write_outputs

__all__ = [
    "PipelineRecord",
    "RunSummary",
    "Scenario",
    "ScenarioConfig",
    "ScenarioError",
    "Simulation",
    "json_schema",
    "load_scenario",
    "run_scenario",
    "scenario_from_dict",
    "write_outputs",
]
