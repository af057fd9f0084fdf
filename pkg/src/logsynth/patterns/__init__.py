"""Failure patterns: regular expressions over template IDs."""

from __future__ import annotations

import json
from collections.abc import Mapping
from dataclasses import dataclass, field

from ..errors import ParseError, ValidationError
from .containment import ContainmentReport, check_containment
from .language import (
    PatternMetrics,
    PatternType,
    classify,
    enumerate_language,
    matches,
    pattern_metrics,
    sample_word,
)
from .nfa import ThompsonNFA, compile_pattern
from .syntax import Alt, Concat, Empty, Literal, Node, Star, literals, parse_pattern, to_text

__all__ = [
    "Node", "Empty", "Literal", "Concat", "Alt", "Star",
    "parse_pattern", "to_text", "literals",
    "matches", "sample_word", "enumerate_language", "classify", "pattern_metrics",
    "PatternType", "PatternMetrics",
    "ContainmentReport", "check_containment",
    "ThompsonNFA", "compile_pattern",
    "FailurePattern", "load_patterns", "load_patterns_file", "dump_pattern",
]


@dataclass(frozen=True)
class FailurePattern:
    id: str
    model_ref: str
    expr: str
    ast: Node = field(repr=False)
    type_tag: PatternType
    metrics: PatternMetrics = field(repr=False)

    @classmethod
    def from_expr(cls, id, expr, model_ref="", alphabet=None, declared_type=None):
        """Parse ``expr`` and check ``declared_type`` (if given) against its language."""
        ast = parse_pattern(expr, alphabet)
        actual = classify(ast)
        if declared_type is not None and PatternType.parse(declared_type) is not actual:
            raise ValidationError(
                f"declared {PatternType.parse(declared_type)} but the language is "
                f"{'infinite' if actual is PatternType.INFINITE else 'finite'} ({actual})",
                f"pattern {id!r}",
            )
        return cls(id=id, model_ref=model_ref, expr=expr, ast=ast, type_tag=actual,
                   metrics=pattern_metrics(ast))

    def matches(self, word):
        return compile_pattern(self.ast).matches(word)


_PATTERN_KEYS = {"id", "model", "type", "expr"}


def _load_one(obj, alphabet, location):
    if not isinstance(obj, Mapping):
        raise ParseError(f"{location}: pattern entry must be a JSON object")
    unknown = sorted(set(obj) - _PATTERN_KEYS)
    if unknown:
        raise ValidationError(f"unknown keys {unknown}", location)
    missing = sorted(_PATTERN_KEYS - set(obj))
    if missing:
        raise ValidationError(f"missing keys {missing}", location)
    try:
        declared = PatternType.parse(obj["type"])
    except ValueError:
        raise ValidationError(f"type must be 'F' or 'I', got {obj['type']!r}", location) from None
    return FailurePattern.from_expr(str(obj["id"]), obj["expr"], str(obj["model"]), alphabet, declared)


def load_patterns(document, alphabet=None):
    """Load one pattern object or a JSON array of them.

    Raises :class:`ValidationError` when a declared type disagrees with the
    pattern language or ids collide.
    """
    if isinstance(document, (bytes, bytearray)):
        document = document.decode("utf-8")
    if isinstance(document, str):
        try:
            document = json.loads(document)
        except json.JSONDecodeError as exc:
            raise ParseError(f"malformed pattern document: {exc.msg}", f"line {exc.lineno}") from exc
    entries = document if isinstance(document, list) else [document]
    out = [_load_one(obj, alphabet, f"patterns[{i}]") for i, obj in enumerate(entries)]
    ids = [p.id for p in out]
    dupes = sorted({i for i in ids if ids.count(i) > 1})
    if dupes:
        raise ValidationError(f"duplicate pattern ids {dupes}", "patterns")
    return out


def load_patterns_file(path, alphabet=None):
    with open(path, encoding="utf-8") as fh:
        return load_patterns(fh.read(), alphabet)


def dump_pattern(p: FailurePattern) -> dict:
    return {"id": p.id, "model": p.model_ref, "type": p.type_tag.value, "expr": p.expr}
