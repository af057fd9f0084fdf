"""Deterministic behaviour models over log-template IDs.

A behaviour model is a (partial) DFA ``<Q, A, q0, Sigma, delta>`` whose
alphabet is made of template IDs.  States and symbols are opaque strings at
the API boundary; internally they are interned to dense integers so that
walks over large models only touch tuples.
"""

from __future__ import annotations

import json
import re
from collections import deque
from collections.abc import Iterable, Mapping, Sequence
from dataclasses import dataclass, field
from types import MappingProxyType

from .errors import DegenerateModel, ParseError, ValidationError

__all__ = [
    "BehaviourModel",
    "TemplateCatalog",
    "SValueMap",
    "UNREACHABLE",
    "REJECT",
    "load_model",
    "load_model_file",
    "dump_model",
    "extended_transition",
    "accepts",
    "compute_s_values",
]

# whitespace plus the pattern metacharacters
_FORBIDDEN = re.compile(r"[\s|*().]")
RESERVED_SYMBOLS = frozenset({"eps"})


class _Sentinel:
    __slots__ = ("_name",)

    def __init__(self, name):
        self._name = name

    def __repr__(self):
        return self._name

    def __reduce__(self):
        return self._name


UNREACHABLE = _Sentinel("UNREACHABLE")
"""Value of a state from which no accepting state can be reached."""

REJECT = _Sentinel("REJECT")
"""Result of :func:`extended_transition` when some step is undefined."""


def check_template_id(tid, location=None):
    if not isinstance(tid, str) or not tid:
        raise ValidationError(f"template id must be a non-empty string, got {tid!r}", location)
    if _FORBIDDEN.search(tid):
        raise ValidationError(f"template id {tid!r} contains whitespace or a pattern metacharacter", location)
    if tid in RESERVED_SYMBOLS:
        raise ValidationError(f"template id {tid!r} is reserved by the pattern syntax", location)


@dataclass(frozen=True, eq=False)
class BehaviourModel:
    """Deterministic finite-state behaviour model.

    ``transitions`` maps ``(state, symbol)`` to the target state.  The map is
    partial: missing pairs simply have no transition.
    """

    states: tuple
    initial: str
    accepting: frozenset
    alphabet: tuple
    transitions: Mapping
    _index: dict = field(init=False, repr=False)
    _succ: tuple = field(init=False, repr=False)

    def __post_init__(self):
        states = tuple(self.states)
        alphabet = tuple(self.alphabet)
        object.__setattr__(self, "states", states)
        object.__setattr__(self, "alphabet", alphabet)
        object.__setattr__(self, "accepting", frozenset(self.accepting))

        index = {}
        for i, s in enumerate(states):
            if not isinstance(s, str) or not s:
                raise ValidationError(f"state id must be a non-empty string, got {s!r}", f"states[{i}]")
            if s in index:
                raise ValidationError(f"duplicate state {s!r}", f"states[{i}]")
            index[s] = i
        seen = set()
        for i, t in enumerate(alphabet):
            check_template_id(t, f"alphabet[{i}]")
            if t in seen:
                raise ValidationError(f"duplicate template id {t!r}", f"alphabet[{i}]")
            seen.add(t)
        if self.initial not in index:
            raise ValidationError(f"unknown state {self.initial!r}", "initial")
        for s in sorted(self.accepting - index.keys()):
            raise ValidationError(f"unknown state {s!r}", "accepting")

        succ = [[] for _ in states]
        trans = {}
        for (src, sym), dst in self.transitions.items():
            loc = f"transition ({src}, {sym}) -> {dst}"
            if src not in index:
                raise ValidationError(f"unknown state {src!r}", loc)
            if dst not in index:
                raise ValidationError(f"unknown state {dst!r}", loc)
            if sym not in seen:
                raise ValidationError(f"unknown symbol {sym!r}", loc)
            trans[(src, sym)] = dst
            succ[index[src]].append((sym, index[dst]))
        for lst in succ:
            lst.sort()
        object.__setattr__(self, "transitions", MappingProxyType(trans))
        object.__setattr__(self, "_index", index)
        object.__setattr__(self, "_succ", tuple(tuple(lst) for lst in succ))

    @classmethod
    def from_triples(cls, states, initial, accepting, alphabet, triples: Iterable[Sequence[str]]):
        """Build a model from ``(src, symbol, dst)`` triples, rejecting non-determinism."""
        trans = {}
        for i, (src, sym, dst) in enumerate(triples):
            key = (src, sym)
            if key in trans and trans[key] != dst:
                raise ValidationError(
                    f"non-deterministic: ({src}, {sym}) already goes to {trans[key]!r}, "
                    f"second target {dst!r}",
                    f"transitions[{i}]",
                )
            if key in trans:
                raise ValidationError(f"duplicate transition ({src}, {sym}) -> {dst}", f"transitions[{i}]")
            trans[key] = dst
        return cls(states, initial, accepting, alphabet, trans)

    def __eq__(self, other):
        if not isinstance(other, BehaviourModel):
            return NotImplemented
        return (
            set(self.states) == set(other.states)
            and self.initial == other.initial
            and self.accepting == other.accepting
            and set(self.alphabet) == set(other.alphabet)
            and dict(self.transitions) == dict(other.transitions)
        )

    __hash__ = None

    def __repr__(self):
        return (
            f"BehaviourModel(states={len(self.states)}, transitions={len(self.transitions)}, "
            f"alphabet={len(self.alphabet)}, initial={self.initial!r})"
        )

    def step(self, state, symbol):
        """One application of delta; ``None`` when undefined."""
        return self.transitions.get((state, symbol))

    def outgoing(self, state):
        """Sorted ``(symbol, target)`` pairs leaving ``state``."""
        return [(sym, self.states[j]) for sym, j in self._succ[self._index[state]]]

    def triples(self):
        for (src, sym), dst in sorted(self.transitions.items()):
            yield src, sym, dst

    def isolated_states(self):
        """States other than the initial one with no incoming and no outgoing transitions."""
        touched = {self.initial}
        for (src, _), dst in self.transitions.items():
            touched.add(src)
            touched.add(dst)
        return [s for s in self.states if s not in touched]

    def reachable_states(self):
        seen = {self._index[self.initial]}
        queue = deque(seen)
        while queue:
            i = queue.popleft()
            for _, j in self._succ[i]:
                if j not in seen:
                    seen.add(j)
                    queue.append(j)
        return [s for i, s in enumerate(self.states) if i in seen]


class TemplateCatalog(Mapping):
    """Read-only map from template ID to template text (dynamic parts shown as ``*``)."""

    def __init__(self, entries=None):
        self._entries = dict(entries or {})

    def __getitem__(self, key):
        return self._entries[key]

    def __iter__(self):
        return iter(self._entries)

    def __len__(self):
        return len(self._entries)

    def __repr__(self):
        return f"TemplateCatalog({len(self._entries)} templates)"

    def render(self, word):
        return [self._entries[t] for t in word]

    def check_covers(self, model: BehaviourModel):
        for t in model.alphabet:
            if t not in self._entries:
                raise ValidationError(f"missing catalog entry for template {t!r}", "templates")


_MODEL_KEYS = {"states", "initial", "accepting", "alphabet", "transitions", "templates"}


def _expect(cond, message, location):
    if not cond:
        raise ValidationError(message, location)


def load_model(document):
    """Parse and validate a model document.

    ``document`` may be JSON text, bytes, or an already decoded mapping.
    Returns ``(model, catalog)``.
    """
    if isinstance(document, (bytes, bytearray)):
        document = document.decode("utf-8")
    if isinstance(document, str):
        try:
            document = json.loads(document)
        except json.JSONDecodeError as exc:
            raise ParseError(f"malformed model document: {exc.msg}", f"line {exc.lineno} column {exc.colno}") from exc
    if not isinstance(document, Mapping):
        raise ParseError("model document must be a JSON object")

    unknown = sorted(set(document) - _MODEL_KEYS)
    _expect(not unknown, f"unknown keys {unknown}", "document")
    missing = sorted(_MODEL_KEYS - set(document))
    _expect(not missing, f"missing keys {missing}", "document")

    states = document["states"]
    alphabet = document["alphabet"]
    accepting = document["accepting"]
    _expect(isinstance(states, list), "must be a list", "states")
    _expect(isinstance(alphabet, list), "must be a list", "alphabet")
    _expect(isinstance(accepting, list), "must be a list", "accepting")
    _expect(isinstance(document["initial"], str), "must be a string", "initial")
    _expect(isinstance(document["templates"], Mapping), "must be an object", "templates")
    _expect(isinstance(document["transitions"], list), "must be a list", "transitions")

    triples = []
    for i, t in enumerate(document["transitions"]):
        loc = f"transitions[{i}]"
        _expect(isinstance(t, Mapping), "must be an object", loc)
        _expect(set(t) == {"src", "symbol", "dst"}, "needs exactly keys src, symbol, dst", loc)
        triples.append((t["src"], t["symbol"], t["dst"]))
    # reference errors are located by transition index, so check them here
    state_set, sym_set = set(states), set(alphabet)
    for i, (src, sym, dst) in enumerate(triples):
        for s in (src, dst):
            _expect(s in state_set, f"unknown state {s!r}", f"transitions[{i}]")
        _expect(sym in sym_set, f"unknown symbol {sym!r}", f"transitions[{i}]")

    model = BehaviourModel.from_triples(states, document["initial"], accepting, alphabet, triples)
    catalog = TemplateCatalog(document["templates"])
    for k, v in catalog.items():
        _expect(isinstance(v, str), "template text must be a string", f"templates[{k!r}]")
    catalog.check_covers(model)
    return model, catalog


def load_model_file(path):
    with open(path, encoding="utf-8") as fh:
        return load_model(fh.read())


def dump_model(model: BehaviourModel, catalog: Mapping | None = None) -> dict:
    """Inverse of :func:`load_model` (returns the decoded JSON object)."""
    return {
        "states": list(model.states),
        "initial": model.initial,
        "accepting": sorted(model.accepting),
        "alphabet": list(model.alphabet),
        "transitions": [{"src": s, "symbol": a, "dst": d} for s, a, d in model.triples()],
        "templates": dict(catalog or {}),
    }


def extended_transition(model: BehaviourModel, word):
    """delta*(q0, word), or :data:`REJECT` if a step is undefined."""
    state = model.initial
    trans = model.transitions
    for sym in word:
        state = trans.get((state, sym))
        if state is None:
            return REJECT
    return state


def accepts(model: BehaviourModel, word) -> bool:
    state = extended_transition(model, word)
    return state is not REJECT and state in model.accepting


class SValueMap(Mapping):
    """Shortest distance from every state to an accepting state.

    Values are ints or :data:`UNREACHABLE`.
    """

    def __init__(self, model: BehaviourModel, dist):
        self._model = model
        self._dist = tuple(dist)

    def __getitem__(self, state):
        d = self._dist[self._model._index[state]]
        return UNREACHABLE if d is None else d

    def __iter__(self):
        return iter(self._model.states)

    def __len__(self):
        return len(self._dist)

    def __repr__(self):
        return f"SValueMap({dict(self)})"

    @property
    def model(self):
        return self._model

    def unreachable(self):
        return [s for s, d in zip(self._model.states, self._dist) if d is None]

    def initial_value(self):
        return self[self._model.initial]


def compute_s_values(model: BehaviourModel, *, check_initial=True) -> SValueMap:
    """Multi-source BFS over reversed transitions from all accepting states.

    Raises :class:`DegenerateModel` when the initial state cannot reach
    acceptance, unless ``check_initial`` is false.
    """
    n = len(model.states)
    preds = [[] for _ in range(n)]
    for i, succ in enumerate(model._succ):
        for _, j in succ:
            preds[j].append(i)
    dist = [None] * n
    queue = deque()
    for s in model.accepting:
        i = model._index[s]
        dist[i] = 0
        queue.append(i)
    while queue:
        j = queue.popleft()
        for i in preds[j]:
            if dist[i] is None:
                dist[i] = dist[j] + 1
                queue.append(i)
    svalues = SValueMap(model, dist)
    if check_initial and dist[model._index[model.initial]] is None:
        raise DegenerateModel(f"initial state {model.initial!r} cannot reach an accepting state")
    return svalues
