import json
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from logsynth.automaton import BehaviourModel
from logsynth.errors import DegenerateClass, DegenerateModel, EmptyAfterTruncation, FormatError, ValidationError
from logsynth.dataset import (
    DatasetSpec,
    Label,
    LabeledSequence,
    LogRecord,
    assemble,
    audit_dataset,
    compute_stats,
    failure_count_for,
    oversample,
    prepare_real_world,
    read_dataset,
    split,
    write_dataset,
)
from logsynth.generator import derive_rng
from logsynth.patterns import FailurePattern


def recs(n_norm, n_fail):
    out = [LabeledSequence(("a",), Label.NORMAL, None, i) for i in range(n_norm)]
    out += [LabeledSequence(("b",), Label.FAILURE, "p", n_norm + i) for i in range(n_fail)]
    return out


@pytest.fixture(scope="module")
def toy_patterns():
    return [FailurePattern.from_expr("F1", "c d", "toy4"), FailurePattern.from_expr("I1", "c ( b )* c", "toy4")]


@pytest.mark.parametrize("size, pct, want", [(1000, 20, 200), (200, 5, 10), (500, 5, 25), (50, 5, 3), (10, 15, 2)])
def test_failure_count(size, pct, want):
    assert failure_count_for(size, pct) == want


def test_assemble_composition(toy, toy_patterns):
    model, catalog = toy
    ds = assemble(model, catalog, toy_patterns, DatasetSpec(1000, 100, 20, "F", "toy4", seed=3))
    labels = [r.label for r in ds.records]
    assert labels.count(Label.FAILURE) == 200 and labels.count(Label.NORMAL) == 800
    assert audit_dataset(ds) == []
    assert all(r.templates == ("c", "d") for r in ds.records if r.is_failure)


def test_assemble_type_i(toy, toy_patterns):
    model, catalog = toy
    ds = assemble(model, catalog, toy_patterns, DatasetSpec(200, 20, 5, "I", "toy4", seed=1))
    assert sum(r.is_failure for r in ds.records) == 10
    assert audit_dataset(ds) == []


def test_assemble_rejects_uncontained_pattern(toy):
    model, catalog = toy
    bad = [FailurePattern.from_expr("X", "c a", "toy4")]
    with pytest.raises(ValidationError) as info:
        assemble(model, catalog, bad, DatasetSpec(200, 20, 5, "F", "toy4"))
    assert "c a" in str(info.value)


def test_assemble_accepting_initial():
    m = BehaviourModel.from_triples(["a", "b"], "a", ["a"], ["x"], [("a", "x", "b"), ("b", "x", "a")])
    p = FailurePattern.from_expr("p", "x x")
    with pytest.raises(DegenerateModel):
        assemble(m, {}, [p], DatasetSpec(200, 20, 5, "F"))


def test_assemble_deterministic(toy, toy_patterns):
    model, catalog = toy
    spec = DatasetSpec(200, 20, 50, "I", "toy4", seed=42)
    assert assemble(model, catalog, toy_patterns, spec) == assemble(model, catalog, toy_patterns, spec)
    other = assemble(model, catalog, toy_patterns, DatasetSpec(200, 20, 50, "I", "toy4", seed=43))
    assert other.records != assemble(model, catalog, toy_patterns, spec).records


def test_split_sizes_200():
    s = split(recs(190, 10), random.Random(0))
    r = recs(190, 10)
    test = s.select(r, "test")
    assert len(test) == 40 and sum(x.is_failure for x in test) == 2


def test_split_sizes_1000():
    r = recs(800, 200)
    s = split(r, random.Random(0))
    assert (len(s.train), len(s.validation), len(s.test)) == (640, 160, 200)
    assert sum(x.is_failure for x in s.select(r, "test")) == 40
    assert sorted(s.train + s.validation + s.test) == list(range(1000))


def test_split_deterministic():
    r = recs(90, 10)
    assert split(r, derive_rng(5, "split")) == split(r, derive_rng(5, "split"))


def test_split_needs_both_labels():
    with pytest.raises(DegenerateClass):
        split(recs(10, 0), random.Random(0))


@settings(max_examples=200, deadline=None)
@given(st.integers(10, 3000), st.integers(1, 99), st.integers(0, 2**32))
def test_split_stratified(size, pct, seed):
    n_fail = failure_count_for(size, pct)
    if n_fail in (0, size):
        return
    r = recs(size - n_fail, n_fail)
    s = split(r, random.Random(seed))
    share = n_fail / size
    for part in ("train", "validation", "test"):
        chosen = s.select(r, part)
        if chosen:
            assert abs(sum(x.is_failure for x in chosen) / len(chosen) - share) <= 1 / len(chosen)


def test_oversample_152_8():
    out = oversample(recs(152, 8), random.Random(0))
    assert len(out) == 304
    assert sum(x.is_failure for x in out) == 152
    assert sum(x.augmented for x in out) == 144


def test_oversample_singleton_minority():
    out = oversample(recs(3, 1), random.Random(0))
    fails = [x for x in out if x.is_failure]
    assert len(out) == 6 and len(fails) == 3
    assert len({x.index for x in fails}) == 1


def test_oversample_balanced_fixed_point():
    r = recs(5, 5)
    assert oversample(r, random.Random(0)) == r


def test_stats():
    r = [LabeledSequence(t, Label.NORMAL) for t in (("a", "b"), ("a", "c"), ("a", "b", "c", "d"))]
    st_ = compute_stats(r)
    assert st_.avg_lsl == pytest.approx(2.67, abs=0.01)
    assert (st_.min_lsl, st_.max_lsl, st_.unique_templates) == (2, 4, 4)


def test_normal_record_with_pattern_rejected():
    with pytest.raises(ValueError):
        LabeledSequence(("a",), Label.NORMAL, "p")


def test_write_read_round_trip(tmp_path, toy, toy_patterns):
    model, catalog = toy
    ds = assemble(model, catalog, toy_patterns, DatasetSpec(200, 20, 20, "F", "toy4", seed=8))
    s = split(ds, derive_rng(8, "split"))
    write_dataset(ds, s, catalog, tmp_path, rendered=True, csv_export=True)
    back, s2 = read_dataset(tmp_path)
    assert back == ds and s2 == s
    assert back.model == model
    lines = (tmp_path / "rendered.log").read_text().splitlines()
    assert catalog["b"] == "sent block * in *"
    first = ds.records[0]
    assert lines[: len(first)] == [catalog[t] for t in first.templates]


def test_manifest_without_seed(tmp_path, toy, toy_patterns):
    model, catalog = toy
    ds = assemble(model, catalog, toy_patterns, DatasetSpec(200, 20, 20, "F", "toy4", seed=8))
    write_dataset(ds, None, catalog, tmp_path)
    m = json.loads((tmp_path / "manifest.json").read_text())
    del m["seed"]
    (tmp_path / "manifest.json").write_text(json.dumps(m))
    with pytest.raises(FormatError):
        read_dataset(tmp_path)


def test_bad_record_line_reported(tmp_path, toy, toy_patterns):
    model, catalog = toy
    ds = assemble(model, catalog, toy_patterns, DatasetSpec(200, 20, 20, "F", "toy4", seed=8))
    write_dataset(ds, None, catalog, tmp_path)
    lines = (tmp_path / "records.jsonl").read_text().splitlines()
    lines[4] = "{not json"
    (tmp_path / "records.jsonl").write_text("\n".join(lines) + "\n")
    with pytest.raises(FormatError) as info:
        read_dataset(tmp_path)
    assert info.value.line == 5


def test_audit_catches_flipped_label(toy, toy_patterns):
    model, catalog = toy
    ds = assemble(model, catalog, toy_patterns, DatasetSpec(200, 20, 20, "F", "toy4", seed=8))
    i = next(k for k, r in enumerate(ds.records) if r.is_failure)
    ds.records[i] = LabeledSequence(ds.records[i].templates, Label.NORMAL, None, ds.records[i].index)
    positions = {v.position for v in audit_dataset(ds)}
    assert i in positions


# ---------------------------------------------------------------- real-world ingestion


def test_truncate_before_first_failure():
    rows = [LogRecord("t", k, f"m{k}", k >= 4) for k in range(1, 6)]
    out = prepare_real_world(rows, {"t": "failure"})
    assert [s.templates for s in out.sequences] == [("m1", "m2", "m3")]
    assert out.sequences[0].label is Label.FAILURE


def test_cap_keeps_last_messages():
    rows = [LogRecord("t", k, f"m{k}", False) for k in range(1200)]
    out = prepare_real_world(rows, {"t": "normal"})
    assert out.sequences[0].templates == tuple(f"m{k}" for k in range(200, 1200))


def test_timestamps_sorted_numerically():
    rows = [LogRecord("t", "10", "late", False), LogRecord("t", "9", "early", False)]
    assert prepare_real_world(rows, {"t": "normal"}).sequences[0].templates == ("early", "late")


def test_failure_first_dropped():
    rows = [LogRecord("bad", 1, "x", True), LogRecord("bad", 2, "y", False), LogRecord("ok", 1, "z", False)]
    out = prepare_real_world(rows, {"bad": "failure", "ok": "normal"})
    assert len(out.sequences) == 1
    (dropped,) = out.dropped
    assert isinstance(dropped, EmptyAfterTruncation) and dropped.task_id == "bad"
