import random
from collections import Counter

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.stats import chisquare

import oracles
from logsynth.automaton import BehaviourModel, accepts, compute_s_values
from logsynth.errors import AttemptsExhausted, DegenerateModel, EmptyPool
from logsynth.generator import (
    FailurePool,
    WalkConfig,
    build_failure_pool,
    derive_rng,
    draw_failure_sequence,
    filtered_random_walk,
    generate_normal_sequence,
)
from logsynth.patterns import FailurePattern, parse_pattern


def pat(pid, expr):
    return FailurePattern.from_expr(pid, expr)


def test_walks_accepted_and_bounded(toy_model):
    sv = compute_s_values(toy_model)
    rng = random.Random(11)
    seen = Counter()
    for _ in range(2000):
        w = filtered_random_walk(toy_model, sv, 5, rng)
        assert len(w) <= 5 and accepts(toy_model, w)
        seen[w] += 1
    assert ("c", "a", "b", "d", "d") in seen


def test_walk_from_accepting_initial_is_empty():
    m = BehaviourModel.from_triples(["a", "b"], "a", ["a"], ["x"], [("a", "x", "b"), ("b", "x", "a")])
    assert filtered_random_walk(m, compute_s_values(m), 3, random.Random(0)) == ()


def test_mlsl_below_initial_svalue(toy_model):
    with pytest.raises(DegenerateModel):
        filtered_random_walk(toy_model, compute_s_values(toy_model), 1, random.Random(0))


def test_walk_exactly_at_bound(toy_model):
    # with mlsl == sValue(q0) only shortest paths qualify
    sv = compute_s_values(toy_model)
    rng = random.Random(4)
    got = {filtered_random_walk(toy_model, sv, 2, rng) for _ in range(500)}
    assert all(len(w) == 2 for w in got)
    assert got == {("a", "a"), ("b", "a"), ("c", "c"), ("c", "d"), ("d", "c"), ("d", "d")}


@settings(max_examples=80, deadline=None)
@given(st.integers(0, 2**32), st.integers(1, 30))
def test_random_models_walks(seed, mlsl):
    rng = random.Random(seed)
    states, init, acc, alpha, delta = oracles.random_dfa(rng, 15, 4)
    model = BehaviourModel.from_triples(states, init, acc, alpha, [(s, a, d) for (s, a), d in delta.items()])
    sv = compute_s_values(model, check_initial=False)
    s0 = sv[init]
    if not isinstance(s0, int) or s0 > mlsl:
        with pytest.raises(DegenerateModel):
            filtered_random_walk(model, sv, mlsl, rng)
        return
    for _ in range(20):
        w = filtered_random_walk(model, sv, mlsl, rng)
        assert len(w) <= mlsl and oracles.dfa_accepts(init, set(acc), delta, w)


def test_normal_sequence_avoids_pattern(toy_model):
    sv = compute_s_values(toy_model)
    p = pat("cd", "c d")
    rng = random.Random(5)
    for _ in range(1000):
        w = generate_normal_sequence(toy_model, sv, [p], WalkConfig(5), rng)
        assert w != ("c", "d") and accepts(toy_model, w)


def test_no_patterns_equals_plain_walk(toy_model):
    sv = compute_s_values(toy_model)
    a = [generate_normal_sequence(toy_model, sv, [], WalkConfig(5), derive_rng(3, i)) for i in range(50)]
    b = [filtered_random_walk(toy_model, sv, 5, derive_rng(3, i)) for i in range(50)]
    assert a == b


def test_attempts_exhausted():
    m = BehaviourModel.from_triples(["0", "1"], "0", ["1"], ["a", "b"], [("0", "a", "1"), ("0", "b", "1")])
    sv = compute_s_values(m)
    with pytest.raises(AttemptsExhausted):
        generate_normal_sequence(m, sv, [pat("all", "a | b")], WalkConfig(3, max_attempts=100), random.Random(0))


def test_pool_finite_exact():
    pool = build_failure_pool([pat("p", "x(y|z)")], 20)
    assert set(pool.words["p"]) == {("x", "y"), ("x", "z")}
    assert pool.meta["p"]["mode"] == "enumerated"


def test_pool_infinite_sampled_within_bound():
    pool = build_failure_pool([pat("p", "x* y")], 3, seed=9)
    got = set(pool.words["p"])
    assert got and got <= {("y",), ("x", "y"), ("x", "x", "y")}
    assert pool.meta["p"]["mode"] == "sampled"


def test_pool_too_long():
    expr = " ".join(["a"] * 25) + " ( b )*"
    with pytest.raises(EmptyPool) as info:
        build_failure_pool([pat("long", expr)], 20, seed=1)
    assert info.value.pattern_id == "long"
    with pytest.raises(EmptyPool):
        build_failure_pool([pat("long", " ".join(["a"] * 25))], 20)


def test_pool_independent_of_pattern_order():
    ps = [pat("p", "a ( b )* c"), pat("q", "( a | b )* c")]
    one = build_failure_pool(ps, 10, seed=4)
    two = build_failure_pool(ps[::-1], 10, seed=4)
    assert one.words == two.words


def test_draw_uniform_words():
    pool = FailurePool({"p1": (("x", "y"), ("x", "z"))})
    rng = random.Random(8)
    counts = Counter(draw_failure_sequence(pool, rng)[0] for _ in range(10_000))
    assert chisquare(list(counts.values())).pvalue > 0.001


def test_draw_uniform_patterns():
    pool = FailurePool({"p1": (("a",), ("b",)), "p2": (("c",), ("d",), ("e",), ("f",))})
    rng = random.Random(12)
    counts = Counter(draw_failure_sequence(pool, rng)[1] for _ in range(10_000))
    assert chisquare([counts["p1"], counts["p2"]]).pvalue > 0.001


def test_draw_singleton_and_empty():
    pool = FailurePool({"p": (("only",),)})
    assert draw_failure_sequence(pool, random.Random(0)) == (("only",), "p")
    with pytest.raises(EmptyPool):
        draw_failure_sequence(FailurePool({"p": ()}), random.Random(0))


def test_derive_rng_streams():
    assert derive_rng(1, "a", 2).random() == derive_rng(1, "a", 2).random()
    assert derive_rng(1, "a", 2).random() != derive_rng(1, "a", 3).random()
    assert derive_rng(1, "a").random() != derive_rng(2, "a").random()
