"""Command-line entry points.

`run` and `verify` work on local files; `serve` hosts the control API;
`risk` is a thin client against a running server.
"""

from __future__ import annotations

import dataclasses
import json
import sys
from pathlib import Path

import click

from .ledger import load_chain, validate_chain
from .orchestrator import ScenarioError, Simulation, load_scenario, run_scenario, write_outputs


@click.group()
def cli():
    """Infection-pattern blockchain simulator."""


@cli.command("run")
@click.option("--scenario", "scenario_path", required=True, type=click.Path(exists=True))
@click.option("--seed", type=int, default=None, help="Override the scenario seed.")
@click.option("--out", "out_dir", required=True, type=click.Path())
def run_cmd(scenario_path, seed, out_dir):
    """Run a scenario end to end and write chain/risk/summary files."""
    scenario = load_scenario(scenario_path)
    if seed is not None:
        scenario = dataclasses.replace(scenario, seed=seed)
    _, summary = run_scenario(scenario)
    write_outputs(summary, out_dir)
    click.echo(
        f"blocks={len(summary.chain_lines)} "
        f"chain_digest={summary.chain_digest} out={out_dir}"
    )


@cli.command("serve")
@click.option("--port", type=int, default=8000, show_default=True)
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--config", "config_path", required=True, type=click.Path(exists=True))
@click.option("--ui-dir", type=click.Path(), default=None,
              help="Static console bundle to mount at /ui.")
def serve_cmd(port, host, config_path, ui_dir):
    """Serve the control API for a scenario's population.

    The scenario's contact log is pre-ingested; confirmed cases are NOT
    auto-registered -- operators drive registration via POST /cases.
    """
    import uvicorn

    from .api import create_app

    scenario = load_scenario(config_path)
    sim = Simulation(
        persons=list(scenario.persons),
        places=list(scenario.places),
        config=scenario.config,
        seed=scenario.seed,
        clock_start=scenario.clock_start,
    )
    if scenario.contacts_jsonl:
        sim.ingest_contacts_jsonl(scenario.contacts_jsonl)
    if ui_dir is None:
        default_ui = Path(__file__).resolve().parents[2] / "frontend" / "dist"
        ui_dir = default_ui if default_ui.is_dir() else None
    app = create_app(sim, ui_dir=ui_dir)
    uvicorn.run(app, host=host, port=port)


@cli.command("verify")
@click.option("--code", required=True)
@click.option("--chain", "chain_path", required=True, type=click.Path(exists=True))
def verify_cmd(code, chain_path):
    """Check a code against the patterns persisted in a chain file."""
    chain = load_chain(chain_path)
    chain_ok = validate_chain(chain)
    result = {"code": code, "chain_valid": chain_ok, "valid": False}
    if code and code[0] in ("P", "B"):
        payload = code[1:]
        for block in chain.blocks:
            for pattern in block.patterns:
                if pattern.dfa.accepts(payload):
                    result.update(
                        valid=True,
                        pattern_id=pattern.pattern_id,
                        case_id=pattern.case_id,
                        block_height=block.height,
                        contagion_time=pattern.created_at,
                    )
                    break
            if result["valid"]:
                break
    click.echo(json.dumps(result, sort_keys=True))
    if not chain_ok:
        raise click.ClickException("chain file failed validation")


@cli.command("risk")
@click.option("--client", "client_id", required=True)
@click.option("--url", default="http://127.0.0.1:8000", show_default=True)
def risk_cmd(client_id, url):
    """Fetch a client's risk estimate from a running server."""
    import httpx

    resp = httpx.get(f"{url}/clients/{client_id}/risk", timeout=10.0)
    if resp.status_code != 200:
        raise click.ClickException(f"server returned {resp.status_code}: {resp.text}")
    body = resp.json()
    click.echo(json.dumps(body, sort_keys=True))


def main() -> int:
    try:
        cli.main(standalone_mode=False)
    except (click.UsageError, click.BadParameter) as exc:
        click.echo(f"usage error: {exc.format_message()}", err=True)
        return 1
    except click.Abort:
        return 1
    except ScenarioError as exc:
        click.echo(f"scenario error: {exc}", err=True)
        return 2
    except click.ClickException as exc:
        click.echo(f"error: {exc.format_message()}", err=True)
        return 2
    except Exception as exc:  # runtime failure contract: exit 2
        click.echo(f"error: {exc}", err=True)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
