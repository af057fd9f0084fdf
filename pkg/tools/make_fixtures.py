"""Regenerate the behaviour-model and failure-pattern fixtures under fixtures/.

Target sizes (templates / states / transitions) are m1 70/154/195,
m2 16/91/189 and m3 115/350/486; extra edges added so that every state can
reach acceptance can push the transition counts above the targets.

Patterns are built from paths of each model, so their languages are
contained in the model by construction; every pattern is re-checked with
the exact inclusion test before it is written.

    python tools/make_fixtures.py [outdir]
"""

import json
import random
import sys
from collections import deque
from pathlib import Path

from logsynth.automaton import BehaviourModel, compute_s_values, dump_model
from logsynth.patterns import check_containment, classify, parse_pattern

SPECS = {
    # name: (templates, states, transitions, accepting, seed)
    "m1": (70, 154, 195, 6, 11),
    "m2": (16, 91, 189, 5, 22),
    "m3": (115, 350, 486, 10, 33),
}

VERBS = ["Receiving", "Sending", "Opening", "Closing", "Starting", "Stopping", "Allocating",
         "Releasing", "Verifying", "Writing", "Reading", "Deleting", "Registering", "Scheduling"]
NOUNS = ["block", "session", "connection", "task", "volume", "instance", "lease", "replica",
         "request", "job", "container", "snapshot", "token", "port"]
TAILS = ["from *", "to * on port *", "in * ms", "for user *", "src: * dest: *", "with id *",
         "size *", "after * retries", "at node *", ""]


def make_templates(k, rng):
    seen = set()
    out = {}
    while len(out) < k:
        text = " ".join(w for w in (rng.choice(VERBS), rng.choice(NOUNS), "*", rng.choice(TAILS)) if w)
        if text in seen:
            continue
        seen.add(text)
        out[f"t{len(out)}"] = text
    return out


def _distances(n, edges, accepting):
    preds = [[] for _ in range(n)]
    for (s, _), d in edges.items():
        preds[d].append(s)
    dist = [None] * n
    queue = deque()
    for a in accepting:
        dist[a] = 0
        queue.append(a)
    while queue:
        j = queue.popleft()
        for i in preds[j]:
            if dist[i] is None:
                dist[i] = dist[j] + 1
                queue.append(i)
    return dist


def make_model(k, n, m, n_accept, seed):
    rng = random.Random(seed)
    symbols = [f"t{i}" for i in range(k)]
    use = {s: 0 for s in symbols}
    edges = {}

    def add(src, dst):
        used_here = {s for (q, s) in edges if q == src}
        free = [s for s in symbols if s not in used_here]
        low = min(use[s] for s in free)
        sym = rng.choice([s for s in free if use[s] == low])
        use[sym] += 1
        edges[(src, sym)] = dst

    # random recursive tree rooted at the initial state, biased towards chains
    for i in range(1, n):
        add(i - 1 if rng.random() < 0.5 else rng.randrange(i), i)
    out_deg = [0] * n
    for (s, _) in edges:
        out_deg[s] += 1
    leaves = [i for i in range(1, n) if out_deg[i] == 0]
    rng.shuffle(leaves)
    accepting = set(leaves[:n_accept])

    # every non-accepting state must be able to reach acceptance
    while True:
        dist = _distances(n, edges, accepting)
        stuck = [i for i in range(n) if dist[i] is None]
        if not stuck:
            break
        src = rng.choice(stuck)
        good = [j for j in range(n) if dist[j] is not None and j != src]
        add(src, rng.choice(good))
    while len(edges) < m:
        src = rng.choice([i for i in range(n) if i not in accepting])
        add(src, rng.randrange(n))

    states = [f"s{i}" for i in range(n)]
    triples = [(states[s], sym, states[d]) for (s, sym), d in edges.items()]
    model = BehaviourModel.from_triples(states, "s0", [states[a] for a in accepting], symbols, triples)
    return model, make_templates(k, rng)


def _walk(model, sv, start, budget, rng, avoid_accepting=False):
    """Random path from ``start`` honouring the sValue filter; stops at acceptance."""
    word, cur = [], start
    while cur not in model.accepting or (avoid_accepting and not word):
        opts = [(s, q) for s, q in model.outgoing(cur) if isinstance(sv[q], int) and sv[q] < budget]
        if not opts:
            return None, None
        sym, cur = rng.choice(opts)
        word.append(sym)
        budget -= 1
    return word, cur


def _prefix(model, sv, rng, length):
    word, cur = [], model.initial
    for _ in range(length):
        opts = [(s, q) for s, q in model.outgoing(cur) if q not in model.accepting and isinstance(sv[q], int)]
        if not opts:
            break
        sym, cur = rng.choice(opts)
        word.append(sym)
    return word, cur


def _cycle(model, start, max_len, rng):
    """A random short cycle through ``start`` found by BFS, or None."""
    parent = {start: None}
    queue = deque([(start, 0)])
    found = []
    while queue:
        q, d = queue.popleft()
        if d >= max_len:
            continue
        opts = model.outgoing(q)
        rng.shuffle(opts)
        for sym, nxt in opts:
            if nxt == start:
                path = [sym]
                node = q
                while parent[node] is not None:
                    node, s = parent[node]
                    path.append(s)
                found.append(list(reversed(path)))
            elif nxt not in parent and nxt not in model.accepting:
                parent[nxt] = (q, sym)
                queue.append((nxt, d + 1))
    return found


def _group(words):
    return " | ".join(" ".join(w) for w in words)


def make_patterns(name, model, rng, count=3, max_len=20):
    sv = compute_s_values(model)
    finite, infinite = [], []
    tries = 0
    while (len(finite) < count or len(infinite) < count) and tries < 5000:
        tries += 1
        prefix, q = _prefix(model, sv, rng, rng.randint(2, 4))
        if not isinstance(sv[q], int) or len(prefix) + sv[q] > max_len - 2:
            continue
        if len(finite) < count:
            suffixes = set()
            for _ in range(20):
                w, _ = _walk(model, sv, q, max_len - len(prefix), rng)
                if w:
                    suffixes.add(tuple(w))
            suffixes = sorted(suffixes, key=lambda w: (len(w), w))[: rng.randint(2, 4)]
            if len(suffixes) >= 2:
                expr = f"{' '.join(prefix)} ( {_group(suffixes)} )"
                finite.append(expr)
                continue
        if len(infinite) < count:
            cycles = _cycle(model, q, 6, rng)
            if not cycles:
                continue
            cycles = sorted({tuple(c) for c in cycles}, key=lambda c: (len(c), c))[: rng.randint(1, 2)]
            w, _ = _walk(model, sv, q, max_len - len(prefix), rng)
            if not w:
                continue
            expr = f"{' '.join(prefix)} ( {_group(cycles)} )* {' '.join(w)}"
            infinite.append(expr)

    out = []
    for kind, exprs in (("F", finite), ("I", infinite)):
        for i, expr in enumerate(exprs, 1):
            ast = parse_pattern(expr, set(model.alphabet))
            assert classify(ast).value == kind, expr
            assert check_containment(ast, model, check_proper=False).included, expr
            out.append({"id": f"{name}-{kind}{i}", "model": name, "type": kind, "expr": expr})
    return out


def main(outdir="fixtures"):
    outdir = Path(outdir)
    outdir.mkdir(exist_ok=True)
    for name, (k, n, m, n_accept, seed) in SPECS.items():
        model, templates = make_model(k, n, m, n_accept, seed)
        sv = compute_s_values(model)
        assert sv[model.initial] <= 20, name
        patterns = make_patterns(name, model, random.Random(seed + 1))
        (outdir / f"{name}.json").write_text(json.dumps(dump_model(model, templates), indent=1) + "\n")
        (outdir / f"{name}_patterns.json").write_text(json.dumps(patterns, indent=2) + "\n")
        print(f"{name}: states={len(model.states)} transitions={len(model.transitions)} "
              f"templates={k} sValue(q0)={sv[model.initial]} patterns={len(patterns)}")


if __name__ == "__main__":
    main(*sys.argv[1:])
