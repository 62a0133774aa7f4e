"""Infection-code mining: miners race through dispatched codes for one
whose block hash code clears the difficulty target."""

from __future__ import annotations

import random
from dataclasses import dataclass

from .hashing import compute_bhc, leading_zero_bits


class NoCandidates(ValueError):
    """Mining requires at least one dispatched infection code."""


@dataclass(frozen=True)
class MiningResult:
    winner_miner: int
    winning_code: str
    bhc: str
    tries_per_miner: tuple[int, ...]
    met_difficulty: bool


def mine(
    merkle_root: str,
    prev_hash: str,
    candidate_codes: list[str],
    num_miners: int = 4,
    difficulty: int = 8,
    seed=0,
) -> MiningResult:
    """Deterministic lockstep race.

    Codes are dealt round-robin to miners; each miner shuffles its hand
    with a per-miner seeded RNG and tries one code per round.  The first
    qualifying try (round order, then miner index) wins, which equals the
    fewest-tries rule with miner-index tie-break.  If no code qualifies,
    the candidate with the numerically smallest digest wins as a liveness
    fallback and met_difficulty is False.
    """
    if not candidate_codes:
        raise NoCandidates("no candidate codes to mine")
    if num_miners < 1:
        raise ValueError("num_miners must be >= 1")
    if difficulty < 0:
        raise ValueError("difficulty must be >= 0")

    hands: list[list[str]] = [[] for _ in range(num_miners)]
    for i, code in enumerate(candidate_codes):
        hands[i % num_miners].append(code)
    for m, hand in enumerate(hands):
        random.Random(f"{seed}:{m}").shuffle(hand)

    tries = [0] * num_miners
    max_rounds = max((len(h) for h in hands), default=0)
    for rnd in range(max_rounds):
        for m, hand in enumerate(hands):
            if rnd >= len(hand):
                continue
            code = hand[rnd]
            tries[m] += 1
            bhc = compute_bhc(merkle_root, prev_hash, code)
            if leading_zero_bits(bhc) >= difficulty:
                return MiningResult(
                    winner_miner=m,
                    winning_code=code,
                    bhc=bhc,
                    tries_per_miner=tuple(tries),
                    met_difficulty=True,
                )

    best_code = min(
        candidate_codes,
        key=lambda c: (int(compute_bhc(merkle_root, prev_hash, c), 16), c),
    )
    # fallback winner: the miner holding the best code
    winner = next(m for m, hand in enumerate(hands) if best_code in hand)
    return MiningResult(
        winner_miner=winner,
        winning_code=best_code,
        bhc=compute_bhc(merkle_root, prev_hash, best_code),
        tries_per_miner=tuple(tries),
        met_difficulty=False,
    )
