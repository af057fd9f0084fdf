"""Turn task-partitioned real-world logs into failure-prediction sequences.

Each task becomes one sequence ordered by timestamp.  For failing tasks only
the messages strictly before the first failure message are kept, and long
sequences keep only their final ``cap`` messages.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass, field

from ..errors import EmptyAfterTruncation, FormatError
from .core import Label, LabeledSequence

__all__ = ["LogRecord", "IngestResult", "prepare_real_world", "read_records_csv", "read_labels_csv"]

DEFAULT_CAP = 1000


@dataclass(frozen=True)
class LogRecord:
    task_id: str
    timestamp: object
    template_id: str
    is_failure_message: bool


@dataclass
class IngestResult:
    sequences: list
    dropped: list = field(default_factory=list)
    """:class:`EmptyAfterTruncation` instances, one per dropped task."""
    truncated: int = 0
    capped: int = 0


def _sort_key(ts):
    # numeric timestamps sort numerically, anything else lexicographically
    if isinstance(ts, (int, float)):
        return (0, ts, "")
    try:
        return (0, float(ts), "")
    except (TypeError, ValueError):
        return (1, 0.0, str(ts))


def prepare_real_world(records, task_labels, cap=DEFAULT_CAP) -> IngestResult:
    """Build one labelled sequence per task.

    ``records`` are :class:`LogRecord` (or 4-tuples in the same order);
    ``task_labels`` maps task id to a label.  Ties in timestamp keep input
    order.  Tasks in ``records`` without a label raise :class:`FormatError`.
    """
    if cap < 1:
        raise ValueError("cap must be >= 1")
    tasks = {}
    for r in records:
        if not isinstance(r, LogRecord):
            r = LogRecord(*r)
        tasks.setdefault(r.task_id, []).append(r)

    result = IngestResult([])
    for task_id, msgs in tasks.items():
        if task_id not in task_labels:
            raise FormatError(f"task {task_id!r} has no label")
        label = Label.parse(task_labels[task_id])
        msgs = sorted(msgs, key=lambda m: _sort_key(m.timestamp))
        if label is Label.FAILURE:
            first = next((i for i, m in enumerate(msgs) if m.is_failure_message), None)
            if first is not None:
                if first == 0:
                    result.dropped.append(EmptyAfterTruncation(task_id))
                    continue
                msgs = msgs[:first]
                result.truncated += 1
        if len(msgs) > cap:
            msgs = msgs[-cap:]
            result.capped += 1
        result.sequences.append(
            LabeledSequence(tuple(m.template_id for m in msgs), label, None, len(result.sequences))
        )
    return result


_TRUE = {"1", "true", "yes", "y", "t"}
_FALSE = {"0", "false", "no", "n", "f", ""}


def read_records_csv(path):
    """Read ``task_id,timestamp,template_id,is_failure_message`` rows."""
    out = []
    with open(path, encoding="utf-8", newline="") as fh:
        reader = csv.DictReader(fh)
        need = ["task_id", "timestamp", "template_id", "is_failure_message"]
        if reader.fieldnames is None or any(c not in reader.fieldnames for c in need):
            raise FormatError(f"header must contain {','.join(need)}", 1, str(path))
        for lineno, row in enumerate(reader, 2):
            flag = (row["is_failure_message"] or "").strip().lower()
            if flag in _TRUE:
                is_fail = True
            elif flag in _FALSE:
                is_fail = False
            else:
                raise FormatError(f"bad is_failure_message {row['is_failure_message']!r}", lineno, str(path))
            if not row["task_id"] or not row["template_id"]:
                raise FormatError("empty task_id or template_id", lineno, str(path))
            out.append(LogRecord(row["task_id"], row["timestamp"], row["template_id"], is_fail))
    return out


def read_labels_csv(path):
    """Read ``task_id,label`` rows into a dict."""
    out = {}
    with open(path, encoding="utf-8", newline="") as fh:
        reader = csv.DictReader(fh)
        if reader.fieldnames is None or not {"task_id", "label"} <= set(reader.fieldnames):
            raise FormatError("header must contain task_id,label", 1, str(path))
        for lineno, row in enumerate(reader, 2):
            try:
                out[row["task_id"]] = Label.parse(row["label"])
            except ValueError:
                raise FormatError(f"bad label {row['label']!r}", lineno, str(path)) from None
    return out
