"""Infection-pattern blockchain: blocks, merkle fingerprints, code mining,
chain validation and persistence."""

from .blocks import (
    BLOCK_VERSION,
    Block,
    BlockHeader,
    BlockVerification,
    DEFAULT_BLOCK_CAPACITY,
    block_from_record,
    block_to_line,
    block_to_record,
    verify_block,
)
from .chain import Chain, InvalidBlock, load_chain, save_chain, validate_chain
from .hashing import (
    EmptyBlock,
    FormatError,
    ZERO_DIGEST,
    compute_bhc,
    leading_zero_bits,
    leaf_hash,
    merkle_root,
    node_hash,
    sha256_hex,
)
from .ipg import DuplicateCase, PatternGenerator, TrackingRequest
from .mining import MiningResult, NoCandidates, mine

__all__ = [
    "BLOCK_VERSION",
    "Block",
    "BlockHeader",
    "BlockVerification",
    "Chain",
    "DEFAULT_BLOCK_CAPACITY",
    "DuplicateCase",
    "EmptyBlock",
    "FormatError",
    "InvalidBlock",
    "MiningResult",
    "NoCandidates",
    "PatternGenerator",
    "TrackingRequest",
    "ZERO_DIGEST",
    "block_from_record",
    "block_to_line",
    "block_to_record",
    "compute_bhc",
    "leading_zero_bits",
    "leaf_hash",
    "load_chain",
    "merkle_root",
    "mine",
    "node_hash",
    "save_chain",
    "sha256_hex",
    "validate_chain",
    "verify_block",
]
