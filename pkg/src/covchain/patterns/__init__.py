"""Restricted regular-expression engine for infection patterns and codes."""

from .ast import (
    CLASS_MARKERS,
    DEFAULT_ALPHABET,
    Concat,
    Literal,
    Node,
    PatternAst,
    Plus,
    Star,
    Union,
    to_text,
)
from .dfa import (
    Dfa,
    LanguageExhausted,
    compile_pattern,
    enumerate_shortlex,
    take_shortlex,
)
from .generate import GenerationConfig, GenerationExhausted, random_pattern
from .model import InfectionInstance, InfectionPattern, derive_instances
from .parser import AlphabetError, PatternSyntaxError, parse_pattern

__all__ = [
    "CLASS_MARKERS",
    "DEFAULT_ALPHABET",
    "AlphabetError",
    "Concat",
    "Dfa",
    "GenerationConfig",
    "GenerationExhausted",
    "InfectionInstance",
    "InfectionPattern",
    "LanguageExhausted",
    "Literal",
    "Node",
    "PatternAst",
    "PatternSyntaxError",
    "Plus",
    "Star",
    "Union",
    "compile_pattern",
    "derive_instances",
    "enumerate_shortlex",
    "parse_pattern",
    "random_pattern",
    "take_shortlex",
    "to_text",
]
