"""SHA-256 digest conventions shared by the whole ledger.

Encodings (bit-exact, relied on by external re-verification):
  - digests render as 64-char lowercase hex
  - block hash preimage = UTF-8 of (merkle hex || prev hex || winning code)
  - merkle leaf preimage = 0x00 || UTF-8 pattern source text
  - merkle node preimage = 0x01 || left digest bytes || right digest bytes
"""

from __future__ import annotations

import hashlib
import re

ZERO_DIGEST = "0" * 64
_HEX64 = re.compile(r"^[0-9a-f]{64}$")


class FormatError(ValueError):
    """Digest string is not 64 lowercase hex chars."""


class EmptyBlock(ValueError):
    """A block must carry at least one pattern."""


def _check_digest(name: str, value: str) -> None:
    if not _HEX64.match(value):
        raise FormatError(f"{name} is not a 64-char lowercase hex digest: {value!r}")


def sha256_hex(data: bytes) -> str:
    return hashlib.sha256(data).hexdigest()


def compute_bhc(merkle_root: str, prev_hash: str, code: str) -> str:
    """Block hash code: digest of merkle root, previous hash and the
    winning infection code concatenated without separators."""
    _check_digest("merkle_root", merkle_root)
    _check_digest("prev_hash", prev_hash)
    if not code:
        raise FormatError("winning code must be non-empty")
    return sha256_hex((merkle_root + prev_hash + code).encode("utf-8"))


def leaf_hash(source_text: str) -> str:
    return sha256_hex(b"\x00" + source_text.encode("utf-8"))


def node_hash(left: str, right: str) -> str:
    return sha256_hex(b"\x01" + bytes.fromhex(left) + bytes.fromhex(right))


def merkle_root(source_texts: list[str]) -> str:
    """Binary hash tree over pattern texts; an odd node at any level is
    paired with itself; a single leaf is its own root."""
    if not source_texts:
        raise EmptyBlock("merkle root of zero patterns")
    level = [leaf_hash(t) for t in source_texts]
    while len(level) > 1:
        if len(level) % 2:
            level.append(level[-1])
        level = [node_hash(level[i], level[i + 1]) for i in range(0, len(level), 2)]
    return level[0]


def leading_zero_bits(digest_hex: str) -> int:
    value = int(digest_hex, 16)
    if value == 0:
        return 256
    return 256 - value.bit_length()
