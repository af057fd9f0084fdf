"""Regex AST over template IDs and its textual syntax.

Grammar (whitespace separates tokens but is otherwise insignificant)::

    alt    := concat ('|' concat)*
    concat := star ('.'? star)*
    star   := atom '*'*
    atom   := LITERAL | 'eps' | '(' alt ')'

Concatenation and alternation are left-associative binary nodes.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from ..errors import ParseError, UnknownSymbol

__all__ = ["Node", "Empty", "Literal", "Concat", "Alt", "Star", "parse_pattern", "to_text", "EPS"]

EPS = "eps"
_TOKEN = re.compile(r"\s*(?:([()|*.])|([^\s()|*.]+))")


class Node:
    __slots__ = ()


@dataclass(frozen=True)
class Empty(Node):
    pass


@dataclass(frozen=True)
class Literal(Node):
    symbol: str


@dataclass(frozen=True)
class Concat(Node):
    left: Node
    right: Node


@dataclass(frozen=True)
class Alt(Node):
    left: Node
    right: Node


@dataclass(frozen=True)
class Star(Node):
    inner: Node


def tokenize(text):
    tokens = []
    pos = 0
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:  # pragma: no cover - the token regex matches any non-space run
            raise ParseError("unexpected character", pos)
        kind = "op" if m.group(1) else "lit"
        value = m.group(1) or m.group(2)
        tokens.append((kind, value, m.start(1) if m.group(1) else m.start(2)))
        pos = m.end()
    return tokens


class _Parser:
    def __init__(self, text, alphabet):
        self.tokens = tokenize(text)
        self.i = 0
        self.alphabet = alphabet
        self.end = len(text)

    def peek(self):
        return self.tokens[self.i] if self.i < len(self.tokens) else None

    def take(self):
        tok = self.peek()
        self.i += 1
        return tok

    def parse(self):
        if not self.tokens:
            raise ParseError("empty pattern", 0)
        node = self.alt()
        tok = self.peek()
        if tok is not None:
            raise ParseError(f"unexpected {tok[1]!r}", tok[2])
        return node

    def alt(self):
        node = self.concat()
        while (tok := self.peek()) is not None and tok[1] == "|" and tok[0] == "op":
            self.take()
            node = Alt(node, self.concat())
        return node

    def _starts_atom(self, tok):
        return tok is not None and (tok[0] == "lit" or tok[1] == "(")

    def concat(self):
        tok = self.peek()
        if not self._starts_atom(tok):
            where = tok[2] if tok else self.end
            raise ParseError(f"expected a literal, 'eps' or '(' but found {tok[1] if tok else 'end of input'!r}", where)
        node = self.star()
        while True:
            tok = self.peek()
            if tok is not None and tok == ("op", ".", tok[2]):
                self.take()
                if not self._starts_atom(self.peek()):
                    raise ParseError("'.' must be followed by an operand", tok[2])
            elif not self._starts_atom(tok):
                return node
            node = Concat(node, self.star())

    def star(self):
        node = self.atom()
        while (tok := self.peek()) is not None and tok[:2] == ("op", "*"):
            self.take()
            node = Star(node)
        return node

    def atom(self):
        kind, value, pos = self.take()
        if kind == "lit":
            if value == EPS:
                return Empty()
            if self.alphabet is not None and value not in self.alphabet:
                raise UnknownSymbol(value, pos)
            return Literal(value)
        # only '(' reaches here, see _starts_atom
        node = self.alt()
        tok = self.take()
        if tok is None or tok[:2] != ("op", ")"):
            raise ParseError("unbalanced '('", pos)
        return node


def parse_pattern(text: str, alphabet=None) -> Node:
    """Parse a failure-pattern expression.

    ``alphabet`` restricts literals; pass ``None`` to accept any template ID.

    >>> parse_pattern("x ( y | z )", {"x", "y", "z"})
    Concat(left=Literal(symbol='x'), right=Alt(left=Literal(symbol='y'), right=Literal(symbol='z')))
    """
    if alphabet is not None:
        alphabet = frozenset(alphabet)
    return _Parser(text, alphabet).parse()


_PREC = {Alt: 0, Concat: 1, Star: 2, Literal: 3, Empty: 3}


def to_text(node: Node) -> str:
    """Render an AST back to pattern syntax; ``parse_pattern(to_text(n)) == n``."""

    def wrap(child, min_prec):
        s = to_text(child)
        return f"( {s} )" if _PREC[type(child)] < min_prec else s

    if isinstance(node, Literal):
        return node.symbol
    if isinstance(node, Empty):
        return EPS
    if isinstance(node, Star):
        return wrap(node.inner, 3) + "*"
    if isinstance(node, Concat):
        # left-assoc: a right operand that is itself a Concat needs parentheses
        return f"{wrap(node.left, 1)} {wrap(node.right, 2)}"
    if isinstance(node, Alt):
        return f"{wrap(node.left, 0)} | {wrap(node.right, 1)}"
    raise TypeError(f"not a pattern node: {node!r}")


def iter_nodes(node):
    stack = [node]
    while stack:
        n = stack.pop()
        yield n
        if isinstance(n, (Concat, Alt)):
            stack.append(n.right)
            stack.append(n.left)
        elif isinstance(n, Star):
            stack.append(n.inner)


def literals(node):
    return {n.symbol for n in iter_nodes(node) if isinstance(n, Literal)}
