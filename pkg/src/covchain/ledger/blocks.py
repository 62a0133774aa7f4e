"""Block structures and verification."""

from __future__ import annotations

import json
from dataclasses import dataclass

from ..clock import is_valid_stamp
from ..patterns import InfectionPattern, parse_pattern
from .hashing import ZERO_DIGEST, compute_bhc, merkle_root

BLOCK_VERSION = 1
DEFAULT_BLOCK_CAPACITY = 7


@dataclass(frozen=True)
class BlockHeader:
    version: int
    prev_hash: str
    merkle_root: str
    bhc: str
    winning_code: str
    timestamp: str


@dataclass(frozen=True)
class Block:
    header: BlockHeader
    patterns: tuple[InfectionPattern, ...]
    height: int


@dataclass(frozen=True)
class BlockVerification:
    reasons: tuple[str, ...]

    @property
    def ok(self) -> bool:
        return not self.reasons

    def __bool__(self) -> bool:
        return self.ok


def verify_block(block: Block, prev: Block | None) -> BlockVerification:
    """Recompute-and-compare check of a block against its predecessor.

    The winning code travels in the header, so the code/BHC relation is
    confirmed by recomputing the block hash rather than inverting it.
    """
    reasons: list[str] = []
    h = block.header
    if h.version != BLOCK_VERSION:
        reasons.append(f"version {h.version} != {BLOCK_VERSION}")
    if not is_valid_stamp(h.timestamp):
        reasons.append(f"timestamp {h.timestamp!r} malformed")
    if not block.patterns:
        reasons.append("block has no patterns")
    else:
        mr = merkle_root([p.source_text for p in block.patterns])
        if mr != h.merkle_root:
            reasons.append("merkle root mismatch")
    expected_prev = ZERO_DIGEST if prev is None else prev.header.bhc
    if h.prev_hash != expected_prev:
        reasons.append("prev hash does not match chain tip")
    try:
        if compute_bhc(h.merkle_root, h.prev_hash, h.winning_code) != h.bhc:
            reasons.append("block hash code mismatch")
    except ValueError as exc:
        reasons.append(f"block hash code uncomputable: {exc}")
    return BlockVerification(tuple(reasons))


# --- persistence record ---------------------------------------------------

def block_to_record(block: Block) -> dict:
    return {
        "height": block.height,
        "header": {
            "version": block.header.version,
            "prev_hash": block.header.prev_hash,
            "merkle_root": block.header.merkle_root,
            "bhc": block.header.bhc,
            "winning_code": block.header.winning_code,
            "timestamp": block.header.timestamp,
        },
        "patterns": [
            {
                "pattern_id": p.pattern_id,
                "case_id": p.case_id,
                "source_text": p.source_text,
                "alphabet": "".join(p.body.alphabet),
                "created_at": p.created_at,
            }
            for p in block.patterns
        ],
    }


def block_from_record(record: dict) -> Block:
    h = record["header"]
    header = BlockHeader(
        version=h["version"],
        prev_hash=h["prev_hash"],
        merkle_root=h["merkle_root"],
        bhc=h["bhc"],
        winning_code=h["winning_code"],
        timestamp=h["timestamp"],
    )
    patterns = tuple(
        InfectionPattern(
            pattern_id=p["pattern_id"],
            case_id=p["case_id"],
            body=parse_pattern(p["source_text"], tuple(p["alphabet"])),
            source_text=p["source_text"],
            created_at=p["created_at"],
        )
        for p in record["patterns"]
    )
    return Block(header=header, patterns=patterns, height=record["height"])


def block_to_line(block: Block) -> str:
    return json.dumps(block_to_record(block), sort_keys=True, separators=(",", ":"))
