"""HTTP control API over a Simulation instance.

All mutating endpoints funnel through one lock (single ledger writer);
reads serve the current in-memory state.
"""

from __future__ import annotations

import threading
from pathlib import Path

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse
from pydantic import BaseModel, Field

from .ledger import DuplicateCase, block_to_record
from .orchestrator import Simulation
from .p2p import ClusterTooSmall
from .patterns import LanguageExhausted
from .surveillance import SchemaError, UnknownPerson


class CaseRequest(BaseModel):
    case_id: str = Field(min_length=1)


class VerifyRequest(BaseModel):
    code: str


class ClusterRequest(BaseModel):
    member_ids: list[str]


def _error(status: int, code: str, detail: str) -> JSONResponse:
    return JSONResponse(status_code=status, content={"error": code, "detail": detail})


def create_app(sim: Simulation, ui_dir: str | Path | None = None) -> FastAPI:
    app = FastAPI(title="covchain control API")
    write_lock = threading.Lock()

    @app.get("/health")
    def health():
        return {"status": "ok", "blocks": sim.chain.height}

    @app.post("/cases")
    def register_case(req: CaseRequest):
        with write_lock:
            try:
                record = sim.register_case(req.case_id)
            except DuplicateCase as exc:
                return _error(409, "DuplicateCase", str(exc))
            except UnknownPerson as exc:
                return _error(404, "UnknownPerson", f"unknown person {exc.args[0]!r}")
            except LanguageExhausted as exc:
                return _error(422, "LanguageExhausted", str(exc))
        return record.to_dict()

    @app.get("/chain")
    def chain_summary():
        return [
            {
                "height": b.height,
                "n_patterns": len(b.patterns),
                "bhc": b.header.bhc,
                "prev_hash": b.header.prev_hash,
                "merkle_root": b.header.merkle_root,
                "winning_code": b.header.winning_code,
                "timestamp": b.header.timestamp,
            }
            for b in sim.chain.blocks
        ]

    @app.get("/blocks/{height}")
    def get_block(height: int):
        if height < 0 or height >= sim.chain.height:
            return _error(404, "UnknownBlock", f"no block at height {height}")
        return block_to_record(sim.chain.blocks[height])

    @app.post("/verify")
    def verify(req: VerifyRequest):
        detail = sim.verify_code(req.code)
        return {
            "code": detail.code,
            "valid": detail.valid,
            "pattern_id": detail.pattern_id,
            "case_id": detail.case_id,
            "contagion_place": detail.contagion_place,
            "contagion_time": detail.contagion_time,
            "undispatched": detail.undispatched,
        }

    @app.get("/clients/{client_id}/inbox")
    def inbox(client_id: str):
        box = sim.fleet.inboxes.get(client_id)
        if box is None:
            return _error(404, "UnknownClient", f"unknown client {client_id!r}")
        return {
            "client_id": client_id,
            "messages": [
                {"code": code, "received_at": at, "pattern_id": pid}
                for code, at, pid in box.messages
            ],
        }

    @app.get("/clients/{client_id}/risk")
    def risk(client_id: str):
        est = sim.fleet.risk_registry.get(client_id)
        if est is None:
            return _error(404, "UnknownClient", f"unknown client {client_id!r}")
        return {
            "client_id": client_id,
            "n_codes": est.n_codes,
            "p_per_contact": est.p_per_contact,
            "risk": est.risk,
            "pmf": list(est.pmf),
        }

    @app.get("/authority/suspects")
    def suspects(threshold: float | None = None, k: int | None = None):
        if threshold is not None and k is not None:
            return _error(400, "BadQuery", "give either threshold or k, not both")
        try:
            ranked = sim.fleet.detect_suspects(threshold=threshold, k=k)
        except ValueError as exc:
            return _error(400, "BadQuery", str(exc))
        return [
            {"client_id": e.client_id, "n_codes": e.n_codes, "risk": e.risk}
            for e in ranked
        ]

    @app.post("/clusters")
    def clusters(req: ClusterRequest):
        try:
            views = sim.fleet.exchange_warnings(req.member_ids, now=sim.clock.stamp())
        except ClusterTooSmall as exc:
            return _error(422, "ClusterTooSmall", str(exc))
        except KeyError as exc:
            return _error(404, "UnknownClient", str(exc.args[0]))
        return {
            receiver: [
                {"sender_id": w.sender_id, "risk": w.risk, "issued_at": w.issued_at}
                for w in msgs
            ]
            for receiver, msgs in views.items()
        }

    @app.post("/ingest/contacts")
    async def ingest(request: Request):
        body = (await request.body()).decode("utf-8")
        with write_lock:
            try:
                accepted = sim.ingest_contacts_jsonl(body)
            except SchemaError as exc:
                return _error(400, "SchemaError", str(exc))
        return {"accepted": accepted}

    if ui_dir is not None and Path(ui_dir).is_dir():
        from fastapi.staticfiles import StaticFiles

        app.mount("/ui", StaticFiles(directory=str(ui_dir), html=True), name="ui")

    return app
