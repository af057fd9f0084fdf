"""Post-hoc label audit of generated records against model and patterns."""

from __future__ import annotations

from dataclasses import dataclass

from ..automaton import accepts
from ..patterns import compile_pattern
from .core import Label, select_patterns

__all__ = ["Violation", "audit_records", "audit_dataset"]


@dataclass(frozen=True)
class Violation:
    position: int
    reason: str

    def __str__(self):
        return f"record {self.position}: {self.reason}"


def audit_records(records, model, patterns, mlsl, avoid_ids=None, positions=None):
    """Re-check every record against the failure/normal definitions.

    ``avoid_ids`` names the patterns normal records must not match (default:
    all given patterns).  ``positions`` restricts the audit to a sample.
    """
    by_id = {p.id: compile_pattern(p.ast) for p in patterns}
    avoid = list(avoid_ids) if avoid_ids is not None else list(by_id)
    out = []
    for pos in positions if positions is not None else range(len(records)):
        r = records[pos]
        n = len(r.templates)
        if n > mlsl:
            out.append(Violation(pos, f"length {n} exceeds maximum {mlsl}"))
        if n == 0:
            out.append(Violation(pos, "empty sequence"))
        if r.label is Label.FAILURE:
            m = by_id.get(r.pattern_id)
            if m is None:
                out.append(Violation(pos, f"failure record names unknown pattern {r.pattern_id!r}"))
            elif not m.matches(r.templates):
                out.append(Violation(pos, f"failure record does not match pattern {r.pattern_id!r}"))
        else:
            if not accepts(model, r.templates):
                out.append(Violation(pos, "normal record is not accepted by the model"))
            hit = [pid for pid in avoid if by_id[pid].matches(r.templates)]
            if hit:
                out.append(Violation(pos, f"normal record matches failure pattern(s) {', '.join(hit)}"))
    return out


def audit_dataset(dataset, positions=None):
    """Audit a :class:`Dataset` that carries its model and patterns."""
    strict = bool(dataset.manifest.get("generation", {}).get("strict", False))
    avoid = [p.id for p in select_patterns(dataset.patterns, dataset.spec, strict)]
    problems = audit_records(
        dataset.records, dataset.model, dataset.patterns, dataset.spec.mlsl, avoid, positions
    )
    expected = dataset.spec.failure_count
    actual = sum(r.is_failure for r in dataset.records)
    if actual != expected and positions is None:
        problems.append(Violation(-1, f"{actual} failure records, expected {expected}"))
    if len(dataset.records) != dataset.spec.size and positions is None:
        problems.append(Violation(-1, f"{len(dataset.records)} records, expected {dataset.spec.size}"))
    return problems
