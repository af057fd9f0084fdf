"""Ask the advisor what to train for a few dataset shapes.

Run from the repository root:  python3 demos/03_pick_a_predictor.py
"""

from logsynth.advisor import ModelConfig, advise, expected_f1

shapes = [
    (200, 5, 20),
    (300, 20, 100),
    (1000, 10, 1000),
    (1000, 20, 500),
    (5000, 10, 100),
    (50000, 50, 50),
]

print(f"{'size':>6} {'fail%':>6} {'mlsl':>5}  {'config':9} {'F1':>5}  batch  epochs")
for size, pct, mlsl in shapes:
    a = advise(size, pct, mlsl)
    print(f"{size:6} {pct:6} {mlsl:5}  {a.config.value:9} {a.expected_f1:5.3f}  {a.batch_size:5}  {a.epochs:6}")

# The estimates of the alternatives for the same shape are available too.
size, pct, mlsl = 1000, 10, 1000
print(f"\nall configurations at size={size}, failures={pct}%, mlsl={mlsl}:")
for c in ModelConfig:
    print(f"  {c.value:9} {expected_f1(c, size, pct, mlsl):.3f}")
