"""Exact inclusion check ``L(pattern) <= L(model)`` by product construction."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from .nfa import compile_pattern

__all__ = ["ContainmentReport", "check_containment"]


@dataclass(frozen=True)
class ContainmentReport:
    included: bool
    witness: tuple | None = None
    proper: bool | None = None
    """``True`` when the model accepts some word outside the pattern language."""


def _model_tables(model):
    delta = [dict(succ) for succ in model._succ]
    final = [s in model.accepting for s in model.states]
    return delta, final, model._index[model.initial]


def _find_witness(nfa, model):
    """Shortest word accepted by the NFA and rejected by the completed model.

    0-1 BFS over (nfa state, model state or sink); epsilon edges cost 0.
    """
    delta, final, q0 = _model_tables(model)
    sink = len(delta)
    start = (nfa.start, q0)
    parent = {start: None}
    dist = {start: 0}
    dq = deque([start])
    done = set()
    while dq:
        node = dq.popleft()
        if node in done:
            continue
        done.add(node)
        i, m = node
        if i == nfa.accept and (m == sink or not final[m]):
            word = []
            while parent[node] is not None:
                node, sym = parent[node]
                if sym is not None:
                    word.append(sym)
            return tuple(reversed(word))
        d = dist[node]
        for j in nfa.eps[i]:
            nxt = (j, m)
            if dist.get(nxt, d + 1) > d:
                dist[nxt] = d
                parent[nxt] = (node, None)
                dq.appendleft(nxt)
        for sym, j in nfa.moves[i]:
            m2 = sink if m == sink else delta[m].get(sym, sink)
            nxt = (j, m2)
            if nxt not in dist or dist[nxt] > d + 1:
                dist[nxt] = d + 1
                parent[nxt] = (node, sym)
                dq.append(nxt)
    return None


def _model_exceeds_pattern(nfa, model, budget):
    """Whether some word of L(model) is not matched (needs a DFA for the pattern)."""
    alphabet = set(model.alphabet) | set(nfa.symbols())
    subsets, pdelta, pstart = nfa.determinize(alphabet, budget)
    pfinal = [nfa.is_final(s) for s in subsets]
    delta, final, q0 = _model_tables(model)
    start = (q0, pstart)
    seen = {start}
    queue = deque([start])
    while queue:
        m, p = queue.popleft()
        if final[m] and not pfinal[p]:
            return True
        for sym, m2 in delta[m].items():
            nxt = (m2, pdelta[p][sym])
            if nxt not in seen:
                seen.add(nxt)
                queue.append(nxt)
    return False


def check_containment(ast, model, *, check_proper=True, state_budget=10_000) -> ContainmentReport:
    """Decide whether every word of the pattern is accepted by ``model``.

    On failure the report carries a shortest counterexample.  When inclusion
    holds and ``check_proper`` is set, ``proper`` tells whether the inclusion
    is strict; this needs the determinized pattern and may raise
    :class:`~logsynth.errors.SizeLimit` past ``state_budget`` subsets.
    """
    nfa = compile_pattern(ast)
    witness = _find_witness(nfa, model)
    if witness is not None:
        return ContainmentReport(included=False, witness=witness, proper=None)
    proper = _model_exceeds_pattern(nfa, model, state_budget) if check_proper else None
    return ContainmentReport(included=True, witness=None, proper=proper)
