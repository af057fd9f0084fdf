"""On-disk dataset layout.

A dataset directory holds::

    records.jsonl            one {"seq", "label", "pattern", "index"} object per line
    manifest.json            spec, seed, pools, stats, splits, ...
    model.json               copy of the behaviour model (synthetic datasets)
    patterns.json            copy of the failure patterns (synthetic datasets)
    records.csv              optional: index,label,pattern,space-joined IDs
    rendered.log             optional: template text, blank line between sequences
    train_oversampled.jsonl  optional: balanced training records
"""

from __future__ import annotations

import csv
import json
from pathlib import Path

from ..automaton import dump_model, load_model
from ..errors import FormatError
from ..patterns import dump_pattern, load_patterns
from .core import Dataset, DatasetSpec, Label, LabeledSequence
from .splits import Splits

__all__ = [
    "write_dataset",
    "read_dataset",
    "record_to_json",
    "record_from_json",
    "write_records",
    "read_records",
    "render_records",
    "write_csv",
]

RECORDS = "records.jsonl"
MANIFEST = "manifest.json"
MODEL = "model.json"
PATTERNS = "patterns.json"
CSV = "records.csv"
RENDERED = "rendered.log"
OVERSAMPLED = "train_oversampled.jsonl"


def _dumps(obj):
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def record_to_json(r: LabeledSequence, with_augmented=False):
    d = {"seq": list(r.templates), "label": r.label.value, "pattern": r.pattern_id, "index": r.index}
    if with_augmented:
        d["augmented"] = r.augmented
    return d


def record_from_json(d, line=None, source=None):
    if not isinstance(d, dict):
        raise FormatError("record must be a JSON object", line, source)
    for key in ("seq", "label", "pattern"):
        if key not in d:
            raise FormatError(f"record lacks {key!r}", line, source)
    seq = d["seq"]
    if not isinstance(seq, list) or not all(isinstance(t, str) for t in seq):
        raise FormatError("'seq' must be a list of template ids", line, source)
    try:
        label = Label.parse(d["label"])
    except ValueError:
        raise FormatError(f"bad label {d['label']!r}", line, source) from None
    if label is Label.NORMAL and d["pattern"] is not None:
        raise FormatError("normal record with a pattern id", line, source)
    return LabeledSequence(
        tuple(seq), label, d["pattern"], int(d.get("index", (line or 1) - 1)), bool(d.get("augmented", False))
    )


def write_records(path, records, with_augmented=False):
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        for r in records:
            fh.write(json.dumps(record_to_json(r, with_augmented), ensure_ascii=False) + "\n")


def read_records(path):
    out = []
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, 1):
            if not line.strip():
                continue
            try:
                obj = json.loads(line)
            except json.JSONDecodeError as exc:
                raise FormatError(f"invalid JSON: {exc.msg}", lineno, path) from exc
            out.append(record_from_json(obj, lineno, path))
    return out


def render_records(records, catalog):
    """Yield log lines: catalog text per template, blank line after each sequence."""
    for r in records:
        for t in r.templates:
            yield catalog[t]
        yield ""


def write_csv(path, records):
    with open(path, "w", encoding="utf-8", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["index", "label", "pattern", "templates"])
        for r in records:
            w.writerow([r.index, r.label.value, r.pattern_id or "", " ".join(r.templates)])


def write_dataset(
    dataset: Dataset,
    splits: Splits | None,
    catalog,
    destination,
    *,
    rendered=False,
    csv_export=False,
    oversampled=None,
):
    """Write ``dataset`` under ``destination`` (created if needed); returns the paths written."""
    dest = Path(destination)
    dest.mkdir(parents=True, exist_ok=True)
    written = []

    path = dest / RECORDS
    write_records(path, dataset.records)
    written.append(path)

    manifest = dict(dataset.manifest)
    if splits is not None:
        manifest["splits"] = splits.to_json()
    path = dest / MANIFEST
    path.write_text(_dumps(manifest), encoding="utf-8")
    written.append(path)

    if dataset.model is not None:
        path = dest / MODEL
        path.write_text(_dumps(dump_model(dataset.model, catalog or dataset.catalog)), encoding="utf-8")
        written.append(path)
    if dataset.patterns:
        path = dest / PATTERNS
        path.write_text(_dumps([dump_pattern(p) for p in dataset.patterns]), encoding="utf-8")
        written.append(path)
    if rendered:
        catalog = catalog or dataset.catalog
        path = dest / RENDERED
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            for line in render_records(dataset.records, catalog):
                fh.write(line + "\n")
        written.append(path)
    if csv_export:
        path = dest / CSV
        write_csv(path, dataset.records)
        written.append(path)
    if oversampled is not None:
        path = dest / OVERSAMPLED
        write_records(path, oversampled, with_augmented=True)
        written.append(path)
    return written


def read_dataset(source):
    """Inverse of :func:`write_dataset`; returns ``(dataset, splits or None)``."""
    src = Path(source)
    mpath = src / MANIFEST
    if not mpath.exists():
        raise FormatError("missing manifest", source=str(mpath))
    try:
        manifest = json.loads(mpath.read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise FormatError(f"invalid JSON: {exc.msg}", exc.lineno, str(mpath)) from exc
    if not isinstance(manifest, dict):
        raise FormatError("manifest must be a JSON object", source=str(mpath))
    if "seed" not in manifest:
        raise FormatError("manifest lacks required field 'seed'", source=str(mpath))

    spec = None
    if "spec" in manifest:
        try:
            spec = DatasetSpec.from_json(manifest["spec"])
        except (KeyError, TypeError, ValueError) as exc:
            raise FormatError(f"bad spec: {exc}", source=str(mpath)) from exc
        if spec.seed != manifest["seed"]:
            raise FormatError("manifest seed disagrees with spec seed", source=str(mpath))

    records = read_records(src / RECORDS)
    model = catalog = None
    patterns = []
    if (src / MODEL).exists():
        model, catalog = load_model((src / MODEL).read_text(encoding="utf-8"))
    if (src / PATTERNS).exists():
        patterns = load_patterns((src / PATTERNS).read_text(encoding="utf-8"))

    splits = None
    if "splits" in manifest:
        splits = Splits.from_json(manifest.pop("splits"))
        n = len(records)
        every = sorted(splits.train + splits.validation + splits.test)
        if every != list(range(n)):
            raise FormatError("split index lists do not partition the records", source=str(mpath))
    return Dataset(spec, records, manifest, model=model, catalog=catalog, patterns=patterns), splits
