"""Turn task-partitioned logs into sequences the same way synthetic data is shaped.

Run from the repository root:  python3 demos/04_ingest_task_logs.py
"""

from logsynth.dataset import LogRecord, compute_stats, prepare_real_world

logs = [
    # task, timestamp, template, is this message a failure report?
    ("boot-1", 1.0, "E1", False),
    ("boot-1", 2.0, "E2", False),
    ("boot-1", 3.0, "E3", False),
    ("boot-2", 1.5, "E1", False),
    ("boot-2", 2.5, "E4", False),
    ("boot-2", 3.5, "E9", True),   # first failure message: cut here
    ("boot-2", 4.5, "E5", False),
    ("boot-3", 0.5, "E9", True),   # fails immediately: nothing to learn from
    ("boot-3", 1.0, "E1", False),
]
labels = {"boot-1": "normal", "boot-2": "failure", "boot-3": "failure"}

result = prepare_real_world([LogRecord(*row) for row in logs], labels, cap=1000)
for seq in result.sequences:
    print(f"{seq.label.value:8} {' '.join(seq.templates)}")
for dropped in result.dropped:
    print(f"dropped  {dropped.task_id}: {dropped}")

stats = compute_stats(result.sequences)
print(f"{stats.count} sequences, {stats.failure_pct:.2f}% failures")
