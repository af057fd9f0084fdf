"""Random generation of normal and failure log sequences.

Normal sequences come from bounded random walks over the behaviour model:
at every step only transitions whose target can still reach acceptance
within the remaining budget are eligible, and one of them is picked
uniformly.  Failure sequences are drawn from per-pattern pools of words.
"""

from __future__ import annotations

import hashlib
import random
from bisect import bisect_left
from dataclasses import dataclass, field

from .automaton import UNREACHABLE, BehaviourModel, SValueMap
from .errors import AttemptsExhausted, CapExceeded, DegenerateModel, EmptyPool
from .patterns import PatternType, classify, compile_pattern, enumerate_language, sample_word
from .patterns.syntax import Node

__all__ = [
    "WalkConfig",
    "FailurePool",
    "derive_rng",
    "filtered_random_walk",
    "generate_normal_sequence",
    "build_failure_pool",
    "draw_failure_sequence",
    "DEFAULT_SAMPLES_PER_PATTERN",
    "DEFAULT_ENUMERATION_CAP",
]

DEFAULT_SAMPLES_PER_PATTERN = 2500
DEFAULT_ENUMERATION_CAP = 100_000


def derive_rng(seed, *key) -> random.Random:
    """Independent Mersenne Twister stream for ``(seed, *key)``.

    Streams depend only on the key, never on how many other streams exist,
    so generation order and worker count cannot change the output.
    """
    digest = hashlib.blake2b(repr((int(seed),) + key).encode(), digest_size=16).digest()
    return random.Random(int.from_bytes(digest, "big"))


@dataclass(frozen=True)
class WalkConfig:
    mlsl: int
    max_attempts: int = 1000

    def __post_init__(self):
        if self.mlsl < 1:
            raise ValueError(f"mlsl must be >= 1, got {self.mlsl}")
        if self.max_attempts < 1:
            raise ValueError(f"max_attempts must be >= 1, got {self.max_attempts}")


class _WalkTable:
    """Per-state outgoing edges sorted by the sValue of their target.

    The eligible options for budget ``b`` are then a prefix of the list,
    found by bisection on the sorted sValues.
    """

    def __init__(self, model: BehaviourModel, svalues: SValueMap):
        dist = svalues._dist
        self.final = [s in model.accepting for s in model.states]
        self.svals = []
        self.edges = []
        for succ in model._succ:
            usable = sorted((dist[j], sym, j) for sym, j in succ if dist[j] is not None)
            self.svals.append([d for d, _, _ in usable])
            self.edges.append([(sym, j) for _, sym, j in usable])
        self.initial = model._index[model.initial]


def _table(model, svalues) -> _WalkTable:
    table = getattr(svalues, "_walk_table", None)
    if table is None:
        table = _WalkTable(model, svalues)
        svalues._walk_table = table
    return table


def _check_walkable(model, svalues, mlsl):
    s0 = svalues[model.initial]
    if s0 is UNREACHABLE:
        raise DegenerateModel(f"initial state {model.initial!r} cannot reach an accepting state")
    if s0 > mlsl:
        raise DegenerateModel(
            f"shortest accepted sequence has length {s0}, longer than the maximum length {mlsl}"
        )


def filtered_random_walk(model: BehaviourModel, svalues: SValueMap, mlsl: int, rng) -> tuple:
    """One bounded, uniformly branching walk from the initial state to acceptance."""
    _check_walkable(model, svalues, mlsl)
    table = _table(model, svalues)
    final, svals, edges = table.final, table.svals, table.edges
    cur = table.initial
    budget = mlsl
    word = []
    while not final[cur]:
        k = bisect_left(svals[cur], budget)
        # sValue(cur) <= budget holds by induction, so a minimising successor always qualifies
        assert k > 0, f"walk stranded at {model.states[cur]!r} with budget {budget}"
        sym, cur = edges[cur][rng.randrange(k)]
        word.append(sym)
        budget -= 1
    return tuple(word)


def _ast(p):
    return p if isinstance(p, Node) else p.ast


def _normal_attempts(model, svalues, patterns, cfg, rng, reject_empty=False):
    _check_walkable(model, svalues, cfg.mlsl)
    matchers = [compile_pattern(_ast(p)) for p in patterns]
    for attempt in range(1, cfg.max_attempts + 1):
        word = filtered_random_walk(model, svalues, cfg.mlsl, rng)
        if reject_empty and not word:
            continue
        if not any(m.matches(word) for m in matchers):
            return word, attempt
    raise AttemptsExhausted(cfg.max_attempts)


def generate_normal_sequence(model, svalues, patterns, cfg: WalkConfig, rng, *, reject_empty=False):
    """Repeat walks until one matches none of ``patterns``.

    Raises :class:`AttemptsExhausted` after ``cfg.max_attempts`` rejected walks.
    """
    return _normal_attempts(model, svalues, patterns, cfg, rng, reject_empty)[0]


def _word_key(w):
    return (len(w), w)


@dataclass
class FailurePool:
    """Words available for failure sequences, per pattern id."""

    words: dict = field(default_factory=dict)
    meta: dict = field(default_factory=dict)

    def __len__(self):
        return sum(len(ws) for ws in self.words.values())

    def nonempty_ids(self):
        return [pid for pid, ws in self.words.items() if ws]


def build_failure_pool(
    patterns,
    mlsl,
    samples_per_pattern=DEFAULT_SAMPLES_PER_PATTERN,
    rng=None,
    *,
    enumeration_cap=DEFAULT_ENUMERATION_CAP,
    allow_empty_words=True,
    seed=None,
) -> FailurePool:
    """Collect, per pattern, words of length <= ``mlsl``.

    Finite languages are enumerated exactly when they fit under
    ``enumeration_cap``; otherwise ``samples_per_pattern`` random words are
    drawn with star repetitions bounded by ``mlsl`` and deduplicated.

    Sampling uses ``rng`` if given, else a stream derived from ``seed`` and
    the pattern id (so pools do not depend on pattern order).
    """
    if samples_per_pattern < 1:
        raise ValueError("samples_per_pattern must be >= 1")
    pool = FailurePool()
    for p in patterns:
        pid, ast = p.id, p.ast
        words = None
        meta = {"star_limit": mlsl}
        if classify(ast) is PatternType.FINITE:
            try:
                words = set(enumerate_language(ast, mlsl, enumeration_cap))
                meta.update(mode="enumerated", samples=0)
            except CapExceeded:
                words = None
        if words is None:
            prng = rng if rng is not None else derive_rng(seed or 0, "pool", pid)
            words = set()
            for _ in range(samples_per_pattern):
                w = sample_word(ast, prng, star_limit=mlsl, max_length=mlsl)
                if w is not None:
                    words.add(w)
            meta.update(mode="sampled", samples=samples_per_pattern)
        if not allow_empty_words:
            words.discard(())
        if not words:
            raise EmptyPool(pid)
        pool.words[pid] = tuple(sorted(words, key=_word_key))
        meta["size"] = len(pool.words[pid])
        pool.meta[pid] = meta
    return pool


def draw_failure_sequence(pool: FailurePool, rng):
    """Pick a pattern uniformly, then one of its words uniformly (with replacement)."""
    ids = pool.nonempty_ids()
    if not ids:
        raise EmptyPool()
    pid = ids[rng.randrange(len(ids))]
    words = pool.words[pid]
    return words[rng.randrange(len(words))], pid
