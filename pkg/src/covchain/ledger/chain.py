"""Append-only chain state, whole-chain validation, JSONL persistence."""

from __future__ import annotations

import os
from dataclasses import dataclass, field

from ..patterns import InfectionInstance, InfectionPattern
from .blocks import (
    Block,
    BlockHeader,
    BLOCK_VERSION,
    block_from_record,
    block_to_line,
    verify_block,
)
from .hashing import ZERO_DIGEST, merkle_root
from .mining import MiningResult

import json


class InvalidBlock(ValueError):
    def __init__(self, reasons):
        self.reasons = list(reasons)
        super().__init__("; ".join(self.reasons))


@dataclass
class Chain:
    """Single-writer chain plus lookup registry over everything dispatched."""

    blocks: list[Block] = field(default_factory=list)
    pattern_index: dict[str, tuple[str, int]] = field(default_factory=dict)
    code_index: dict[str, InfectionInstance] = field(default_factory=dict)

    @property
    def tip_hash(self) -> str:
        return self.blocks[-1].header.bhc if self.blocks else ZERO_DIGEST

    @property
    def height(self) -> int:
        return len(self.blocks)

    def append(
        self,
        patterns: list[InfectionPattern],
        result: MiningResult,
        timestamp: str,
        instances: list[InfectionInstance] | None = None,
    ) -> Block:
        header = BlockHeader(
            version=BLOCK_VERSION,
            prev_hash=self.tip_hash,
            merkle_root=merkle_root([p.source_text for p in patterns]),
            bhc=result.bhc,
            winning_code=result.winning_code,
            timestamp=timestamp,
        )
        block = Block(header=header, patterns=tuple(patterns), height=self.height)
        check = verify_block(block, self.blocks[-1] if self.blocks else None)
        if not check.ok:
            raise InvalidBlock(check.reasons)
        self.blocks.append(block)
        for p in patterns:
            self.pattern_index[p.pattern_id] = (p.case_id, block.height)
        for inst in instances or []:
            self.register_instance(inst)
        return block

    def register_instance(self, inst: InfectionInstance) -> None:
        existing = self.code_index.get(inst.code)
        if existing is not None and existing != inst:
            raise ValueError(f"code {inst.code} already bound to another subject")
        self.code_index[inst.code] = inst

    def validate(self) -> tuple[bool, list[tuple[int, list[str]]]]:
        """Verify every height; returns (ok, [(height, reasons), ...])."""
        failures: list[tuple[int, list[str]]] = []
        prev: Block | None = None
        for i, block in enumerate(self.blocks):
            reasons = list(verify_block(block, prev).reasons)
            if block.height != i:
                reasons.append(f"height {block.height} != position {i}")
            if reasons:
                failures.append((i, reasons))
            prev = block
        return (not failures, failures)


def validate_chain(chain: Chain) -> bool:
    ok, _ = chain.validate()
    return ok


def save_chain(chain: Chain, path: str | os.PathLike) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        for block in chain.blocks:
            fh.write(block_to_line(block) + "\n")


def load_chain(path: str | os.PathLike) -> Chain:
    chain = Chain()
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            line = line.strip()
            if not line:
                continue
            block = block_from_record(json.loads(line))
            chain.blocks.append(block)
            for p in block.patterns:
                chain.pattern_index[p.pattern_id] = (p.case_id, block.height)
    return chain
