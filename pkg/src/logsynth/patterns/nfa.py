"""Thompson construction and subset-construction utilities for pattern ASTs."""

from __future__ import annotations

from functools import lru_cache

from ..errors import SizeLimit
from .syntax import Alt, Concat, Empty, Literal, Star

__all__ = ["ThompsonNFA", "compile_pattern"]


class ThompsonNFA:
    """epsilon-NFA with a single start and a single accepting state.

    Subsets reached while matching are memoised, so repeated calls to
    :meth:`matches` behave like a lazily built DFA.
    """

    def __init__(self, ast):
        self.eps = []
        self.moves = []
        self.start, self.accept = self._build(ast)
        self.moves = [tuple(m) for m in self.moves]
        self.eps = [tuple(e) for e in self.eps]
        self.start_set = self.closure((self.start,))
        self._delta = {}

    def _new(self):
        self.eps.append([])
        self.moves.append([])
        return len(self.eps) - 1

    def _build(self, node):
        if isinstance(node, Literal):
            s, t = self._new(), self._new()
            self.moves[s].append((node.symbol, t))
            return s, t
        if isinstance(node, Empty):
            s, t = self._new(), self._new()
            self.eps[s].append(t)
            return s, t
        if isinstance(node, Concat):
            s1, t1 = self._build(node.left)
            s2, t2 = self._build(node.right)
            self.eps[t1].append(s2)
            return s1, t2
        if isinstance(node, Alt):
            s, t = self._new(), self._new()
            s1, t1 = self._build(node.left)
            s2, t2 = self._build(node.right)
            self.eps[s] += [s1, s2]
            self.eps[t1].append(t)
            self.eps[t2].append(t)
            return s, t
        if isinstance(node, Star):
            s, t = self._new(), self._new()
            s1, t1 = self._build(node.inner)
            self.eps[s] += [s1, t]
            self.eps[t1] += [s1, t]
            return s, t
        raise TypeError(f"not a pattern node: {node!r}")

    def __len__(self):
        return len(self.eps)

    def closure(self, states):
        seen = set(states)
        stack = list(states)
        eps = self.eps
        while stack:
            for j in eps[stack.pop()]:
                if j not in seen:
                    seen.add(j)
                    stack.append(j)
        return frozenset(seen)

    def step(self, subset, symbol):
        key = (subset, symbol)
        nxt = self._delta.get(key)
        if nxt is None:
            targets = [j for i in subset for sym, j in self.moves[i] if sym == symbol]
            nxt = self.closure(targets)
            self._delta[key] = nxt
        return nxt

    def is_final(self, subset):
        return self.accept in subset

    def matches(self, word):
        cur = self.start_set
        for sym in word:
            cur = self.step(cur, sym)
            if not cur:
                return False
        return self.accept in cur

    def symbols(self):
        return sorted({sym for m in self.moves for sym, _ in m})

    def determinize(self, alphabet=None, budget=10_000):
        """Full subset construction.

        Returns ``(subsets, delta, start_index)`` where ``delta[i]`` maps a
        symbol to a subset index.  The empty subset is included as a dead
        state when some symbol of ``alphabet`` falls out of the language.
        """
        alphabet = self.symbols() if alphabet is None else sorted(alphabet)
        index = {self.start_set: 0}
        subsets = [self.start_set]
        delta = [{}]
        i = 0
        while i < len(subsets):
            cur = subsets[i]
            for sym in alphabet:
                nxt = self.step(cur, sym)
                j = index.get(nxt)
                if j is None:
                    if len(subsets) >= budget:
                        raise SizeLimit(f"determinized pattern exceeds {budget} states")
                    j = index[nxt] = len(subsets)
                    subsets.append(nxt)
                    delta.append({})
                delta[i][sym] = j
            i += 1
        return subsets, delta, 0


@lru_cache(maxsize=1024)
def compile_pattern(ast) -> ThompsonNFA:
    return ThompsonNFA(ast)
