"""Seeded random generation of infection patterns."""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from .ast import DEFAULT_ALPHABET, Concat, Literal, Node, PatternAst, Plus, Star, Union
from .dfa import compile_pattern, enumerate_shortlex


class GenerationExhausted(RuntimeError):
    """Retry budget ran out while searching for a usable pattern."""


@dataclass(frozen=True)
class GenerationConfig:
    alphabet: tuple[str, ...] = DEFAULT_ALPHABET
    max_depth: int = 4
    min_instances: int = 8
    max_retries: int = 64
    # enumeration cap while checking language size; generous relative to
    # the string lengths depth-4 patterns can force
    probe_max_len: int = 24


def random_pattern(seed, cfg: GenerationConfig | None = None) -> PatternAst:
    """Deterministic for a fixed (seed, cfg).  Regenerates with the next
    sub-seed until the language holds at least cfg.min_instances strings."""
    cfg = cfg or GenerationConfig()
    for attempt in range(cfg.max_retries):
        rng = random.Random(f"{seed}:{attempt}")
        root = _random_node(rng, cfg, depth=0)
        ast = PatternAst(root=root, alphabet=cfg.alphabet)
        if _language_size_at_least(ast, cfg.min_instances, cfg.probe_max_len):
            return ast
    raise GenerationExhausted(
        f"no pattern with >= {cfg.min_instances} instances after "
        f"{cfg.max_retries} attempts (seed {seed!r})"
    )


def _language_size_at_least(ast: PatternAst, n: int, max_len: int) -> bool:
    count = 0
    for _ in enumerate_shortlex(compile_pattern(ast), max_len=max_len):
        count += 1
        if count >= n:
            return True
    return False


def _random_node(rng: random.Random, cfg: GenerationConfig, depth: int) -> Node:
    if depth >= cfg.max_depth:
        return Literal(rng.choice(cfg.alphabet))
    kind = rng.choices(
        ["lit", "concat", "union", "star", "plus"],
        weights=[4, 3, 2, 1, 2],
    )[0]
    if kind == "lit":
        return Literal(rng.choice(cfg.alphabet))
    if kind in ("concat", "union"):
        arity = rng.randint(2, 3)
        children = tuple(_random_node(rng, cfg, depth + 1) for _ in range(arity))
        return Concat(children) if kind == "concat" else Union(children)
    child = _random_node(rng, cfg, depth + 1)
    return Star(child) if kind == "star" else Plus(child)
