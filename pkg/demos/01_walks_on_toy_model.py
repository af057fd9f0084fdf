"""Walk through the four-state example model step by step.

Run from the repository root:  python3 demos/01_walks_on_toy_model.py
"""

import random
from collections import Counter
from pathlib import Path

from logsynth.automaton import accepts, compute_s_values, load_model_file
from logsynth.generator import filtered_random_walk

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"

model, catalog = load_model_file(FIXTURES / "toy4.json")
sv = compute_s_values(model)

# Every state knows how far it is from acceptance.
print("shortest distance to acceptance:")
for state in model.states:
    print(f"  {state}: {sv[state]}")

# With a budget of 5 the walk may wander, but it always keeps a way home.
budget = 5
state = "q0"
print(f"\noptions from {state} with budget {budget}:")
for sym, nxt in model.outgoing(state):
    ok = sv[nxt] < budget
    print(f"  {sym} -> {nxt} (distance {sv[nxt]}) {'allowed' if ok else 'filtered out'}")

rng = random.Random(5)
walks = [filtered_random_walk(model, sv, budget, rng) for _ in range(10_000)]
assert all(accepts(model, w) and len(w) <= budget for w in walks)
lengths = Counter(map(len, walks))
print(f"\n10000 walks, all accepted; length histogram {dict(sorted(lengths.items()))}")

# Render one walk as log lines.
w = walks[0]
print("\none sequence as log text:")
for tid in w:
    print(f"  [{tid}] {catalog[tid]}")
