"""Dataset assembly, splitting, statistics, serialization and ingestion."""

from .audit import Violation, audit_dataset, audit_records
from .core import (
    FAILURE_PCT_LEVELS,
    MLSL_LEVELS,
    SIZE_LEVELS,
    Dataset,
    DatasetSpec,
    DatasetStats,
    Label,
    LabeledSequence,
    assemble,
    compute_stats,
    failure_count_for,
    round_half_up,
    select_patterns,
)
from .io import read_dataset, render_records, write_dataset
from .realworld import IngestResult, LogRecord, prepare_real_world, read_labels_csv, read_records_csv
from .splits import Splits, oversample, split

__all__ = [
    "SIZE_LEVELS", "MLSL_LEVELS", "FAILURE_PCT_LEVELS",
    "Dataset", "DatasetSpec", "DatasetStats", "Label", "LabeledSequence",
    "assemble", "compute_stats", "failure_count_for", "round_half_up", "select_patterns",
    "Splits", "split", "oversample",
    "Violation", "audit_records", "audit_dataset",
    "write_dataset", "read_dataset", "render_records",
    "LogRecord", "IngestResult", "prepare_real_world", "read_records_csv", "read_labels_csv",
]
