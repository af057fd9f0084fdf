"""Language-level operations on pattern ASTs: matching, sampling, enumeration,
type classification and structural metrics."""

from __future__ import annotations

import enum
from dataclasses import dataclass

from ..errors import CapExceeded
from .nfa import compile_pattern
from .syntax import Alt, Concat, Empty, Literal, Star, iter_nodes

__all__ = [
    "PatternType",
    "PatternMetrics",
    "matches",
    "sample_word",
    "enumerate_language",
    "classify",
    "pattern_metrics",
]


class PatternType(str, enum.Enum):
    FINITE = "F"
    INFINITE = "I"

    @classmethod
    def parse(cls, value):
        if isinstance(value, cls):
            return value
        v = str(value).strip().upper()
        if v.startswith("TYPE-"):
            v = v[5:]
        return cls(v)

    def __str__(self):
        return f"Type-{self.value}"


@dataclass(frozen=True)
class PatternMetrics:
    length: int
    alphabet_size: int
    operator_count: int
    star_depth: int


def matches(ast, word) -> bool:
    """Whole-sequence membership test ``word in L(ast)``."""
    return compile_pattern(ast).matches(word)


def _alternatives(node):
    out = []
    stack = [node]
    while stack:
        n = stack.pop()
        if isinstance(n, Alt):
            stack.append(n.right)
            stack.append(n.left)
        else:
            out.append(n)
    return out


class _TooLong(Exception):
    pass


def sample_word(ast, rng, star_limit=3, max_length=None):
    """Draw a random word of ``L(ast)`` by random choices on the parse tree.

    Every alternative of an alternation chain ``a | b | c`` is equally likely,
    and each star repeats its operand ``rng.randint(0, star_limit)`` times.
    With ``max_length`` set, sampling stops early and returns ``None`` as soon
    as the word grows past the bound.
    """
    if star_limit < 0:
        raise ValueError("star_limit must be >= 0")
    out = []

    def walk(node):
        if isinstance(node, Literal):
            out.append(node.symbol)
            if max_length is not None and len(out) > max_length:
                raise _TooLong
        elif isinstance(node, Concat):
            walk(node.left)
            walk(node.right)
        elif isinstance(node, Alt):
            alts = _alternatives(node)
            walk(alts[rng.randrange(len(alts))])
        elif isinstance(node, Star):
            for _ in range(rng.randint(0, star_limit)):
                walk(node.inner)
        elif not isinstance(node, Empty):
            raise TypeError(f"not a pattern node: {node!r}")

    try:
        walk(ast)
    except _TooLong:
        return None
    return tuple(out)


def enumerate_language(ast, max_length, cap=100_000):
    """All words of ``L(ast)`` with length at most ``max_length``.

    Words are built bottom-up per subexpression, so :class:`CapExceeded` is
    raised as soon as any subexpression has more than ``cap`` words within
    the bound (the whole language is then at least as large in most cases).
    """
    if max_length < 0:
        raise ValueError("max_length must be >= 0")

    def check(words):
        if len(words) > cap:
            raise CapExceeded(f"more than {cap} words of length <= {max_length}")
        return words

    def lang(node):
        if isinstance(node, Literal):
            return {(node.symbol,)} if max_length >= 1 else set()
        if isinstance(node, Empty):
            return {()}
        if isinstance(node, Alt):
            return check(lang(node.left) | lang(node.right))
        if isinstance(node, Concat):
            left, right = lang(node.left), lang(node.right)
            return check({u + v for u in left for v in right if len(u) + len(v) <= max_length})
        if isinstance(node, Star):
            inner = [w for w in lang(node.inner) if w]
            result = {()}
            frontier = {()}
            while frontier:
                new = {u + v for u in frontier for v in inner if len(u) + len(v) <= max_length}
                new -= result
                result |= new
                check(result)
                frontier = new
            return result
        raise TypeError(f"not a pattern node: {node!r}")

    return frozenset(lang(ast))


def _has_nonempty_word(node):
    # The grammar has no empty-language constructor, so every subexpression
    # denotes a non-empty language and emptiness of words is compositional.
    if isinstance(node, Literal):
        return True
    if isinstance(node, Empty):
        return False
    if isinstance(node, (Concat, Alt)):
        return _has_nonempty_word(node.left) or _has_nonempty_word(node.right)
    if isinstance(node, Star):
        return _has_nonempty_word(node.inner)
    raise TypeError(f"not a pattern node: {node!r}")


def classify(ast) -> PatternType:
    """Type-I iff the language is infinite, i.e. some star can pump a non-empty word."""
    for n in iter_nodes(ast):
        if isinstance(n, Star) and _has_nonempty_word(n.inner):
            return PatternType.INFINITE
    return PatternType.FINITE


def _star_depth(node):
    if isinstance(node, Star):
        return 1 + _star_depth(node.inner)
    if isinstance(node, (Concat, Alt)):
        return max(_star_depth(node.left), _star_depth(node.right))
    return 0


def pattern_metrics(ast) -> PatternMetrics:
    """Letters + operators length, distinct literals, Alt/Star count, star nesting depth.

    ``eps`` counts as a letter; each binary alternation counts as one operator.
    """
    letters = operators = 0
    alphabet = set()
    for n in iter_nodes(ast):
        if isinstance(n, Literal):
            letters += 1
            alphabet.add(n.symbol)
        elif isinstance(n, Empty):
            letters += 1
        elif isinstance(n, (Alt, Star)):
            operators += 1
    return PatternMetrics(
        length=letters + operators,
        alphabet_size=len(alphabet),
        operator_count=operators,
        star_depth=_star_depth(ast),
    )
