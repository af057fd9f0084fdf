"""Generate a labelled dataset, split it, balance it and audit it.

Run from the repository root:  python3 demos/02_build_a_dataset.py [outdir]
"""

import sys
import tempfile
from pathlib import Path

from logsynth.automaton import load_model_file
from logsynth.dataset import DatasetSpec, assemble, audit_dataset, compute_stats, oversample, split, write_dataset
from logsynth.generator import derive_rng
from logsynth.patterns import check_containment, load_patterns_file

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"

model, catalog = load_model_file(FIXTURES / "m2.json")
patterns = load_patterns_file(FIXTURES / "m2_patterns.json", set(model.alphabet))

# Failure patterns must describe behaviour the model can actually produce.
for p in patterns:
    rep = check_containment(p.ast, model)
    print(f"{p.id:6} {p.type_tag}  star_depth={p.metrics.star_depth}  contained={rep.included}")

spec = DatasetSpec(size=1000, mlsl=50, failure_pct=10, pattern_type="I", model_ref="m2", seed=2024)
ds = assemble(model, catalog, patterns, spec)
stats = compute_stats(ds)
print(f"\n{stats.count} records, {stats.failure_count} failures, avg length {stats.avg_lsl:.1f}, "
      f"{stats.unique_templates} distinct templates")

# 80:20 train/test, then 20% of train for validation, label shares preserved.
parts = split(ds, derive_rng(spec.seed, "split"))
for name in ("train", "validation", "test"):
    chosen = parts.select(ds.records, name)
    print(f"{name:10} {len(chosen):4} records, {sum(r.is_failure for r in chosen):3} failures")

balanced = oversample(parts.select(ds.records, "train"), derive_rng(spec.seed, "oversample"))
print(f"oversampled train: {len(balanced)} records, {sum(r.is_failure for r in balanced)} failures")

print(f"audit: {len(audit_dataset(ds))} violations")

out = Path(sys.argv[1]) if len(sys.argv) > 1 else Path(tempfile.mkdtemp(prefix="logsynth-demo-"))
write_dataset(ds, parts, catalog, out, rendered=True, oversampled=balanced)
print(f"written to {out}")
