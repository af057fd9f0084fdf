"""Labelled dataset assembly under controlled characteristics."""

from __future__ import annotations

import enum
import logging
from collections import Counter
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from math import floor

from .. import __version__
from ..automaton import compute_s_values
from ..errors import DegenerateModel, EmptyPool, SizeLimit, ValidationError
from ..generator import (
    DEFAULT_SAMPLES_PER_PATTERN,
    WalkConfig,
    _check_walkable,
    _normal_attempts,
    build_failure_pool,
    derive_rng,
    draw_failure_sequence,
)
from ..patterns import PatternType, check_containment

log = logging.getLogger(__name__)

__all__ = [
    "SIZE_LEVELS",
    "MLSL_LEVELS",
    "FAILURE_PCT_LEVELS",
    "Label",
    "DatasetSpec",
    "LabeledSequence",
    "Dataset",
    "DatasetStats",
    "round_half_up",
    "failure_count_for",
    "assemble",
    "compute_stats",
]

SIZE_LEVELS = (200, 500, 1000, 5000, 10000, 50000)
MLSL_LEVELS = (20, 50, 100, 500, 1000)
FAILURE_PCT_LEVELS = (5, 10, 20, 30, 40, 50)


class Label(str, enum.Enum):
    NORMAL = "normal"
    FAILURE = "failure"

    @classmethod
    def parse(cls, value):
        if isinstance(value, cls):
            return value
        return cls(str(value).strip().lower())


def round_half_up(x) -> int:
    """Round a non-negative number, halves going up (exact for decimal inputs)."""
    return floor(Fraction(str(x)) + Fraction(1, 2))


def failure_count_for(size, failure_pct) -> int:
    return floor(Fraction(size) * Fraction(str(failure_pct)) / 100 + Fraction(1, 2))


@dataclass(frozen=True)
class DatasetSpec:
    size: int
    mlsl: int
    failure_pct: float
    pattern_type: PatternType
    model_ref: str = ""
    seed: int = 0
    pattern_filter: tuple | None = None

    def __post_init__(self):
        object.__setattr__(self, "pattern_type", PatternType.parse(self.pattern_type))
        if self.pattern_filter is not None:
            object.__setattr__(self, "pattern_filter", tuple(self.pattern_filter))
        if self.size < 1:
            raise ValueError(f"size must be >= 1, got {self.size}")
        if self.mlsl < 1:
            raise ValueError(f"mlsl must be >= 1, got {self.mlsl}")
        if not 0 < self.failure_pct <= 100:
            raise ValueError(f"failure_pct must be in (0, 100], got {self.failure_pct}")
        if not 0 <= self.seed < 2**64:
            raise ValueError("seed must be an unsigned 64-bit integer")

    @property
    def failure_count(self):
        return failure_count_for(self.size, self.failure_pct)

    def off_grid(self):
        """Names of characteristics that are not one of the canonical levels."""
        out = []
        if self.size not in SIZE_LEVELS:
            out.append("size")
        if self.mlsl not in MLSL_LEVELS:
            out.append("mlsl")
        if self.failure_pct not in FAILURE_PCT_LEVELS:
            out.append("failure_pct")
        return out

    def to_json(self):
        d = asdict(self)
        d["pattern_type"] = self.pattern_type.value
        d["pattern_filter"] = list(self.pattern_filter) if self.pattern_filter is not None else None
        return d

    @classmethod
    def from_json(cls, d):
        return cls(
            size=d["size"],
            mlsl=d["mlsl"],
            failure_pct=d["failure_pct"],
            pattern_type=d["pattern_type"],
            model_ref=d.get("model_ref", ""),
            seed=d["seed"],
            pattern_filter=d.get("pattern_filter"),
        )


@dataclass(frozen=True)
class LabeledSequence:
    templates: tuple
    label: Label
    pattern_id: str | None = None
    index: int = 0
    augmented: bool = False

    def __post_init__(self):
        object.__setattr__(self, "templates", tuple(self.templates))
        object.__setattr__(self, "label", Label.parse(self.label))
        if self.label is Label.NORMAL and self.pattern_id is not None:
            raise ValueError("normal records carry no pattern id")

    def __len__(self):
        return len(self.templates)

    @property
    def is_failure(self):
        return self.label is Label.FAILURE


@dataclass(frozen=True)
class DatasetStats:
    count: int
    failure_count: int
    avg_lsl: float
    min_lsl: int
    max_lsl: int
    unique_templates: int

    @property
    def failure_pct(self):
        return 100.0 * self.failure_count / self.count if self.count else 0.0


def compute_stats(records) -> DatasetStats:
    if isinstance(records, Dataset):
        records = records.records
    lengths = [len(r.templates) for r in records]
    if not lengths:
        return DatasetStats(0, 0, 0.0, 0, 0, 0)
    return DatasetStats(
        count=len(lengths),
        failure_count=sum(r.is_failure for r in records),
        avg_lsl=sum(lengths) / len(lengths),
        min_lsl=min(lengths),
        max_lsl=max(lengths),
        unique_templates=len({t for r in records for t in r.templates}),
    )


@dataclass
class Dataset:
    spec: DatasetSpec | None
    records: list
    manifest: dict = field(default_factory=dict)
    model: object = field(default=None, repr=False, compare=False)
    catalog: object = field(default=None, repr=False, compare=False)
    patterns: list = field(default_factory=list, repr=False, compare=False)

    def __len__(self):
        return len(self.records)

    @property
    def stats(self):
        return compute_stats(self.records)

    def active_patterns(self, strict=False):
        return select_patterns(self.patterns, self.spec, strict)


def select_patterns(patterns, spec: DatasetSpec, strict=False):
    """Patterns a normal record must avoid (all of them when ``strict``)."""
    out = []
    for p in patterns:
        if spec.model_ref and p.model_ref and p.model_ref != spec.model_ref:
            continue
        if strict:
            out.append(p)
        elif p.type_tag is spec.pattern_type and (
            spec.pattern_filter is None or p.id in spec.pattern_filter
        ):
            out.append(p)
    return out


def _duplicate_count(records):
    counts = Counter((r.label, r.templates) for r in records)
    return sum(c - 1 for c in counts.values())


def assemble(
    model,
    catalog,
    patterns,
    spec: DatasetSpec,
    *,
    strict=False,
    max_attempts=1000,
    samples_per_pattern=DEFAULT_SAMPLES_PER_PATTERN,
    check_patterns=True,
) -> Dataset:
    """Generate a dataset with exactly ``spec.failure_count`` failure records.

    Every random decision is drawn from a stream keyed by ``spec.seed`` and
    the record's position in generation order, then the records are shuffled
    with a seed-derived stream.
    """
    active = select_patterns(patterns, spec, strict=False)
    if spec.pattern_filter is not None:
        missing = sorted(set(spec.pattern_filter) - {p.id for p in patterns})
        if missing:
            raise ValidationError(f"unknown pattern ids {missing}", "pattern_filter")
    if not active:
        raise EmptyPool(message=f"no {spec.pattern_type} failure patterns for model {spec.model_ref!r}")
    avoid = select_patterns(patterns, spec, strict=True) if strict else active

    proper = {}
    if check_patterns:
        for p in avoid:
            try:
                report = check_containment(p.ast, model)
            except SizeLimit:
                report = check_containment(p.ast, model, check_proper=False)
            if not report.included:
                raise ValidationError(
                    f"language not contained in the model; witness {' '.join(report.witness) or 'eps'}",
                    f"pattern {p.id!r}",
                )
            proper[p.id] = report.proper

    svalues = compute_s_values(model)
    _check_walkable(model, svalues, spec.mlsl)
    if model.initial in model.accepting:
        raise DegenerateModel(f"initial state {model.initial!r} is accepting; every walk is empty")

    n_fail = spec.failure_count
    n_norm = spec.size - n_fail
    pool = build_failure_pool(
        active, spec.mlsl, samples_per_pattern, seed=spec.seed, allow_empty_words=False
    )

    records = []
    for i in range(n_fail):
        word, pid = draw_failure_sequence(pool, derive_rng(spec.seed, "failure", i))
        records.append(LabeledSequence(word, Label.FAILURE, pid, i))

    cfg = WalkConfig(spec.mlsl, max_attempts)
    total_walks = 0
    for j in range(n_norm):
        word, attempts = _normal_attempts(
            model, svalues, avoid, cfg, derive_rng(spec.seed, "normal", j), reject_empty=True
        )
        total_walks += attempts
        records.append(LabeledSequence(word, Label.NORMAL, None, n_fail + j))

    derive_rng(spec.seed, "shuffle").shuffle(records)

    stats = compute_stats(records)
    warnings = []
    off = spec.off_grid()
    if off:
        warnings.append(f"off-grid characteristics: {', '.join(off)}")
    manifest = {
        "tool": "logsynth",
        "tool_version": __version__,
        "kind": "synthetic",
        "seed": spec.seed,
        "spec": spec.to_json(),
        "generation": {
            "strict": strict,
            "max_attempts": max_attempts,
            "samples_per_pattern": samples_per_pattern,
            "normal_walks": total_walks,
            "active_patterns": [p.id for p in active],
            "avoided_patterns": [p.id for p in avoid],
            "proper_inclusion": proper,
        },
        "pools": {pid: dict(meta) for pid, meta in pool.meta.items()},
        "stats": asdict(stats),
        "duplicate_count": _duplicate_count(records),
        "grid_conformant": not off,
        "warnings": warnings,
    }
    return Dataset(spec, records, manifest, model=model, catalog=catalog, patterns=list(patterns))
