"""
models/nerode.py
Regular sets R of state words: regular expressions over state names, minimal
DFAs whose states are the Myhill-Nerode classes of R, images under letter
maps and the suffix-closure test.

Orbit constructions consume a state word r = r_k…r_1 from its rightmost letter
(the one that acts first); they therefore run `NerodeDFA.mirror`, the minimal
DFA of the reversed language.
"""

import logging
from collections import deque
from dataclasses import dataclass
from functools import cached_property
from typing import Dict, FrozenSet, Iterable, List, Mapping, Optional, Sequence, Set, Tuple

from models.automaton import moore_partition
from utils.config import LIMITS
from utils.errors import InputError, ResourceLimitError

logger = logging.getLogger(__name__)

FULL_LANGUAGE = "Q*"
EPSILON = "ε"
_SPECIAL = "()|*"

# An ε-NFA: transitions (state, letter or None) -> targets
_Moves = Dict[Tuple[int, Optional[str]], Set[int]]


@dataclass(frozen=True)
class NerodeDFA:
    """
    Minimal complete DFA of a regular language over state names.

    Classes are numbered 0..n_classes-1 breadth-first from the initial class
    (alphabet in declaration order), so equal languages give equal DFAs.
    """

    alphabet: Tuple[str, ...]
    delta: Mapping[Tuple[int, str], int]
    initial: int
    accepting: FrozenSet[int]
    n_classes: int

    @property
    def classes(self) -> range:
        return range(self.n_classes)

    def step(self, c: int, letter: str) -> int:
        return self.delta[(c, letter)]

    def run(self, word: Iterable[str]) -> int:
        c = self.initial
        for x in word:
            if (c, x) not in self.delta:
                raise InputError(f"'{x}' is not a letter of the language's alphabet")
            c = self.delta[(c, x)]
        return c

    def accepts(self, word: Iterable[str]) -> bool:
        return self.run(word) in self.accepting

    @cached_property
    def mirror(self) -> "NerodeDFA":
        """Minimal DFA of the reversed language."""
        moves: _Moves = {}
        for (c, x), d in self.delta.items():
            moves.setdefault((d, x), set()).add(c)
        return _minimal_dfa(self.alphabet, moves, frozenset(self.accepting), {self.initial})


# ── Subset construction and minimization ────────────────────────────────────────
def _eclose(moves: _Moves, states: Iterable[int]) -> FrozenSet[int]:
    found = set(states)
    stack = list(found)
    while stack:
        x = stack.pop()
        for y in moves.get((x, None), ()):
            if y not in found:
                found.add(y)
                stack.append(y)
    return frozenset(found)


def _minimal_dfa(
    alphabet: Sequence[str], moves: _Moves, initial: FrozenSet[int], accepting: Set[int]
) -> NerodeDFA:
    start = _eclose(moves, initial)
    index = {start: 0}
    subsets = [start]
    delta: Dict[Tuple[int, str], int] = {}
    i = 0
    while i < len(subsets):
        cur = subsets[i]
        for x in alphabet:
            nxt = _eclose(moves, (z for y in cur for z in moves.get((y, x), ())))
            if nxt not in index:
                if len(subsets) >= LIMITS["subset_construction_limit"]:
                    raise ResourceLimitError("subset_construction_limit", len(subsets))
                index[nxt] = len(subsets)
                subsets.append(nxt)
            delta[(i, x)] = index[nxt]
        i += 1
    final = {i for i, sub in enumerate(subsets) if sub & accepting}
    return _canonical(alphabet, range(len(subsets)), delta, 0, final)


def _canonical(
    alphabet: Sequence[str], states: Iterable[int], delta: Mapping[Tuple[int, str], int],
    initial: int, accepting: Set[int],
) -> NerodeDFA:
    """Merge equivalent states and renumber breadth-first from the initial one."""
    states = list(states)

    def _step(s, x):
        return s in accepting, delta[(s, x)]

    block = moore_partition(states, alphabet, _step)
    number = {block[initial]: 0}
    order = [initial]
    new_delta: Dict[Tuple[int, str], int] = {}
    i = 0
    while i < len(order):
        s = order[i]
        for x in alphabet:
            t = delta[(s, x)]
            if block[t] not in number:
                number[block[t]] = len(number)
                order.append(t)
            new_delta[(i, x)] = number[block[t]]
        i += 1
    final = frozenset(number[block[s]] for s in order if s in accepting)
    return NerodeDFA(tuple(alphabet), new_delta, 0, final, len(order))


# ── Regular expressions ─────────────────────────────────────────────────────────
def _tokenize(text: str, alphabet: Sequence[str]) -> List[Tuple[str, int]]:
    """Split into special characters, ε and state names (longest match first)."""
    names = sorted(alphabet, key=len, reverse=True)
    tokens = []
    i = 0
    while i < len(text):
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if ch in _SPECIAL or ch == EPSILON:
            tokens.append((ch, i + 1))
            i += 1
            continue
        for name in names:
            if text.startswith(name, i):
                tokens.append((name, i + 1))
                i += len(name)
                break
        else:
            raise InputError(f"unknown state name at '{text[i:i + 8]}'", line=1, column=i + 1)
    return tokens


class _RegexParser:
    """
    Recursive-descent parser building a Thompson ε-NFA.

    Grammar:  expr := term ('|' term)* ;  term := factor* ;
              factor := atom '*'* ;  atom := name | 'ε' | '(' expr ')'
    """

    def __init__(self, text: str, alphabet: Sequence[str]):
        self.tokens = _tokenize(text, alphabet)
        self.alphabet = set(alphabet)
        self.pos = 0
        self.moves: _Moves = {}
        self.count = 0

    def _new(self) -> int:
        self.count += 1
        return self.count - 1

    def _edge(self, x: int, letter: Optional[str], y: int) -> None:
        self.moves.setdefault((x, letter), set()).add(y)

    def _peek(self) -> Optional[str]:
        return self.tokens[self.pos][0] if self.pos < len(self.tokens) else None

    def _fail(self, message: str) -> None:
        column = self.tokens[self.pos][1] if self.pos < len(self.tokens) else None
        raise InputError(message, line=1, column=column)

    def parse(self) -> Tuple[int, int]:
        frag = self._expr()
        if self._peek() is not None:
            self._fail(f"unexpected '{self._peek()}'")
        return frag

    def _expr(self) -> Tuple[int, int]:
        start, end = self._new(), self._new()
        while True:
            s, e = self._term()
            self._edge(start, None, s)
            self._edge(e, None, end)
            if self._peek() != "|":
                return start, end
            self.pos += 1

    def _term(self) -> Tuple[int, int]:
        start = end = self._new()
        while self._peek() not in (None, "|", ")"):
            s, e = self._factor()
            self._edge(end, None, s)
            end = e
        return start, end

    def _factor(self) -> Tuple[int, int]:
        s, e = self._atom()
        while self._peek() == "*":
            self.pos += 1
            start, end = self._new(), self._new()
            self._edge(start, None, s)
            self._edge(start, None, end)
            self._edge(e, None, s)
            self._edge(e, None, end)
            s, e = start, end
        return s, e

    def _atom(self) -> Tuple[int, int]:
        tok = self._peek()
        if tok == "(":
            self.pos += 1
            frag = self._expr()
            if self._peek() != ")":
                self._fail("missing ')'")
            self.pos += 1
            return frag
        if tok == EPSILON:
            self.pos += 1
            x = self._new()
            return x, x
        if tok in self.alphabet:
            self.pos += 1
            s, e = self._new(), self._new()
            self._edge(s, tok, e)
            return s, e
        self._fail(f"unexpected '{tok}'" if tok is not None else "unexpected end of expression")


def parse_regex(text: str, alphabet: Sequence[str]) -> NerodeDFA:
    """Minimal DFA of a regular expression over the given state names."""
    parser = _RegexParser(text, alphabet)
    start, end = parser.parse()
    return _minimal_dfa(alphabet, parser.moves, frozenset([start]), {end})


def full_language(alphabet: Sequence[str]) -> NerodeDFA:
    """Q*: a single accepting class."""
    return NerodeDFA(tuple(alphabet), {(0, x): 0 for x in alphabet}, 0, frozenset([0]), 1)


def generated_language(alphabet: Sequence[str], generators: Sequence[str]) -> NerodeDFA:
    """G* for a set G of states, as a language over the whole alphabet."""
    gens = set(generators)
    unknown = gens - set(alphabet)
    if unknown:
        raise InputError(f"unknown generators: {sorted(unknown)}")
    delta = {}
    for x in alphabet:
        delta[(0, x)] = 0 if x in gens else 1
        delta[(1, x)] = 1
    return _canonical(alphabet, range(2), delta, 0, {0})


def nerode(language, alphabet: Sequence[str]) -> NerodeDFA:
    """
    Minimal DFA for R given as 'Q*', a regular expression or an explicit NerodeDFA.

    Raises:
        InputError: the expression is malformed or the DFA uses another alphabet.
    """
    if isinstance(language, NerodeDFA):
        if set(language.alphabet) != set(alphabet):
            raise InputError("the DFA alphabet differs from the automaton's states")
        states = range(language.n_classes)
        return _canonical(tuple(alphabet), states, language.delta, language.initial, set(language.accepting))
    if language.strip() == FULL_LANGUAGE:
        return full_language(alphabet)
    return parse_regex(language, alphabet)


def parse_dfa_text(text: str, alphabet: Sequence[str]) -> NerodeDFA:
    """
    Read an explicit DFA and minimize it.

    Format (one item per line, '#' starts a comment):
        initial: c0
        accepting: c0 c1
        c0 q -> c1
    Missing transitions go to a rejecting sink.
    """
    initial = None
    accepting: Set[str] = set()
    moves: Dict[Tuple[str, str], str] = {}
    names: Dict[str, int] = {}
    letters = set(alphabet)

    def _id(name: str) -> int:
        return names.setdefault(name, len(names))

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("initial:"):
            initial = line.split(":", 1)[1].strip()
            _id(initial)
        elif line.startswith("accepting:"):
            accepting.update(line.split(":", 1)[1].split())
            for name in accepting:
                _id(name)
        else:
            parts = line.split()
            if len(parts) != 4 or parts[2] != "->":
                raise InputError("expected 'class letter -> class'", line=lineno)
            c, x, _, d = parts
            if x not in letters:
                raise InputError(f"unknown state name '{x}'", line=lineno)
            if (c, x) in moves:
                raise InputError(f"duplicate transition for ({c}, {x})", line=lineno)
            moves[(c, x)] = d
            _id(c)
            _id(d)
    if initial is None:
        raise InputError("missing 'initial:' line")

    sink = len(names)
    delta = {}
    for name, i in names.items():
        for x in alphabet:
            delta[(i, x)] = names[moves[(name, x)]] if (name, x) in moves else sink
    for x in alphabet:
        delta[(sink, x)] = sink
    final = {names[a] for a in accepting}
    return _canonical(tuple(alphabet), range(sink + 1), delta, names[initial], final)


# ── Properties ──────────────────────────────────────────────────────────────────
def is_suffix_closed(D: NerodeDFA) -> bool:
    """
    True iff every suffix of a word of R (the empty word included) is in R.

    Pairs (class after u v', class after v') are explored for every prefix u;
    whenever u v is accepted, v must be accepted as well.
    """
    live = _co_reachable(D)
    if not live:
        return True
    starts = {c for c in _reachable(D, [D.initial]) if c in live}
    pairs = {(c, D.initial) for c in starts}
    queue = deque(pairs)
    while queue:
        c, d = queue.popleft()
        if c in D.accepting and d not in D.accepting:
            return False
        for x in D.alphabet:
            nc, nd = D.step(c, x), D.step(d, x)
            if nc in live and (nc, nd) not in pairs:
                pairs.add((nc, nd))
                queue.append((nc, nd))
    return True


def _reachable(D: NerodeDFA, start: Iterable[int]) -> Set[int]:
    found = set(start)
    queue = deque(found)
    while queue:
        c = queue.popleft()
        for x in D.alphabet:
            d = D.step(c, x)
            if d not in found:
                found.add(d)
                queue.append(d)
    return found


def _co_reachable(D: NerodeDFA) -> Set[int]:
    back: Dict[int, List[int]] = {}
    for (c, _), d in D.delta.items():
        back.setdefault(d, []).append(c)
    live = set(D.accepting)
    queue = deque(live)
    while queue:
        d = queue.popleft()
        for c in back.get(d, ()):
            if c not in live:
                live.add(c)
                queue.append(c)
    return live


def nerode_image(D: NerodeDFA, letter_map: Mapping[str, str], alphabet: Sequence[str]) -> NerodeDFA:
    """
    Minimal DFA of the letter-by-letter image of L(D).

    Args:
        D: Source language.
        letter_map: Source letter -> target letter (every source letter mapped).
        alphabet: Target alphabet.
    """
    missing = [x for x in D.alphabet if x not in letter_map]
    if missing:
        raise InputError(f"letters without image: {missing}")
    target = set(alphabet)
    if not set(letter_map.values()) <= target:
        raise InputError("the letter map leaves the target alphabet")
    moves: _Moves = {}
    for (c, x), d in D.delta.items():
        moves.setdefault((c, letter_map[x]), set()).add(d)
    return _minimal_dfa(tuple(alphabet), moves, frozenset([D.initial]), set(D.accepting))
