"""Stratified train/validation/test splitting and minority oversampling."""

from __future__ import annotations

from dataclasses import dataclass, replace
from fractions import Fraction

from ..errors import DegenerateClass
from .core import Dataset, Label, round_half_up

__all__ = ["Splits", "split", "oversample", "TEST_FRACTION", "VALIDATION_FRACTION"]

TEST_FRACTION = 0.2
VALIDATION_FRACTION = 0.2


@dataclass(frozen=True)
class Splits:
    """Disjoint position lists into ``Dataset.records``."""

    train: tuple
    validation: tuple
    test: tuple

    def to_json(self):
        return {"train": list(self.train), "validation": list(self.validation), "test": list(self.test)}

    @classmethod
    def from_json(cls, d):
        return cls(tuple(d["train"]), tuple(d["validation"]), tuple(d["test"]))

    def select(self, records, part):
        return [records[i] for i in getattr(self, part)]


def _records(dataset_or_records):
    return dataset_or_records.records if isinstance(dataset_or_records, Dataset) else list(dataset_or_records)


def _take(by_label, n, n_fail, total):
    """Remove ``n`` positions from the per-label pools, keeping the failure share."""
    k_fail = round_half_up(Fraction(n * n_fail, total)) if total else 0
    k_fail = min(k_fail, len(by_label[Label.FAILURE]))
    k_norm = n - k_fail
    if k_norm > len(by_label[Label.NORMAL]):
        k_norm = len(by_label[Label.NORMAL])
        k_fail = n - k_norm
    taken = by_label[Label.FAILURE][:k_fail] + by_label[Label.NORMAL][:k_norm]
    by_label[Label.FAILURE] = by_label[Label.FAILURE][k_fail:]
    by_label[Label.NORMAL] = by_label[Label.NORMAL][k_norm:]
    return tuple(sorted(taken))


def split(dataset, rng, test_fraction=TEST_FRACTION, validation_fraction=VALIDATION_FRACTION) -> Splits:
    """Stratified 80:20 train/test split, then 20 % of train held out for validation."""
    records = _records(dataset)
    by_label = {Label.FAILURE: [], Label.NORMAL: []}
    for i, r in enumerate(records):
        by_label[r.label].append(i)
    for label, idx in by_label.items():
        if not idx:
            raise DegenerateClass(f"no {label.value} records to stratify on")
        rng.shuffle(idx)

    size = len(records)
    n_test = round_half_up(Fraction(str(test_fraction)) * size)
    test = _take(by_label, n_test, len(by_label[Label.FAILURE]), size)
    rest = size - n_test
    n_val = round_half_up(Fraction(str(validation_fraction)) * rest)
    validation = _take(by_label, n_val, len(by_label[Label.FAILURE]), rest)
    train = tuple(sorted(by_label[Label.FAILURE] + by_label[Label.NORMAL]))
    return Splits(train, validation, test)


def oversample(train_records, rng):
    """Duplicate minority-label records (drawn with replacement) up to a 50:50 balance.

    Originals keep their order; duplicates are appended with ``augmented=True``.
    """
    train_records = list(train_records)
    fail = [r for r in train_records if r.label is Label.FAILURE]
    norm = [r for r in train_records if r.label is Label.NORMAL]
    if not fail or not norm:
        raise DegenerateClass("oversampling needs both normal and failure records")
    minority, majority = (fail, norm) if len(fail) <= len(norm) else (norm, fail)
    extra = [
        replace(minority[rng.randrange(len(minority))], augmented=True)
        for _ in range(len(majority) - len(minority))
    ]
    return train_records + extra
