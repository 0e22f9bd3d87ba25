"""
models/automaton.py
Complete S-automata (deterministic, complete letter-to-letter transducers),
their left action on letter words, the dual right action on state words, and
the automaton algebra: power, composition, union, dual and minimization.
"""

import itertools
import logging
from collections import deque
from dataclasses import dataclass
from typing import Callable, Dict, Hashable, Iterable, List, Mapping, Sequence, Tuple

from utils.config import SEPARATOR
from utils.errors import InputError

logger = logging.getLogger(__name__)

StateWord = Tuple[str, ...]
LetterWord = Tuple[str, ...]
Transition = Tuple[str, str]


@dataclass(frozen=True)
class SAutomaton:
    """
    A complete S-automaton (Q, Σ, δ).

    Attributes:
        states: State identifiers in declaration order.
        alphabet: Letter identifiers in declaration order.
        delta: Map (state, input letter) -> (output letter, next state).
    """

    states: Tuple[str, ...]
    alphabet: Tuple[str, ...]
    delta: Mapping[Tuple[str, str], Transition]

    def __post_init__(self):
        if not self.states:
            raise InputError("an automaton needs at least one state")
        if not self.alphabet:
            raise InputError("an automaton needs at least one letter")
        if len(set(self.states)) != len(self.states):
            raise InputError("duplicate state identifier")
        if len(set(self.alphabet)) != len(self.alphabet):
            raise InputError("duplicate letter identifier")
        clash = set(self.states) & set(self.alphabet)
        if clash:
            raise InputError(f"identifiers used both as state and letter: {sorted(clash)}")

        state_set, letter_set = set(self.states), set(self.alphabet)
        for (p, a), (b, q) in self.delta.items():
            if p not in state_set or q not in state_set:
                raise InputError(f"transition {p} {a} -> {b} {q} references an unknown state")
            if a not in letter_set or b not in letter_set:
                raise InputError(f"transition {p} {a} -> {b} {q} references an unknown letter")
        if len(self.delta) != len(self.states) * len(self.alphabet):
            missing = [
                (p, a) for p in self.states for a in self.alphabet if (p, a) not in self.delta
            ]
            raise InputError(f"incomplete transition function, missing {missing[:5]}")

    def step(self, state: str, letter: str) -> Transition:
        """Return (output letter, next state) of the transition for (state, letter)."""
        return self.delta[(state, letter)]

    def check_states(self, word: Iterable[str]) -> None:
        known = set(self.states)
        for p in word:
            if p not in known:
                raise InputError(f"unknown state '{p}'")

    def check_letters(self, word: Iterable[str]) -> None:
        known = set(self.alphabet)
        for a in word:
            if a not in known:
                raise InputError(f"unknown letter '{a}'")


def join_names(word: Sequence[str]) -> str:
    """Name of the power/product state q_k…q_1 built from its components."""
    return SEPARATOR.join(word)


def _checked(states: List[str], what: str) -> None:
    if len(set(states)) != len(states):
        raise InputError(f"{what}: state names collide under the '{SEPARATOR}' separator")


# ── Actions ─────────────────────────────────────────────────────────────────────
def run(T: SAutomaton, state: str, u: Sequence[str]) -> Tuple[LetterWord, str]:
    """
    Follow the unique run of T starting in `state` with input `u`.

    Returns:
        Tuple of (output word, end state).
    """
    out = []
    for a in u:
        b, state = T.delta[(state, a)]
        out.append(b)
    return tuple(out), state


def step_word(T: SAutomaton, p: Sequence[str], a: str) -> Tuple[str, StateWord]:
    """Single-letter action of the state word p: returns (p∘a, p·a)."""
    nxt = list(p)
    for i in range(len(p) - 1, -1, -1):
        a, nxt[i] = T.delta[(p[i], a)]
    return a, tuple(nxt)


def act(T: SAutomaton, p: Sequence[str], u: Sequence[str]) -> LetterWord:
    """
    Compute p∘u; the rightmost state of p acts first.

    Args:
        T: The automaton.
        p: State word p_k…p_1.
        u: Letter word.

    Returns:
        The output word, of the same length as u.
    """
    T.check_states(p)
    T.check_letters(u)
    u = tuple(u)
    for state in reversed(p):
        u, _ = run(T, state, u)
    return u


def dual_act(T: SAutomaton, p: Sequence[str], u: Sequence[str]) -> StateWord:
    """Compute the dual action p·u, a state word of the same length as p."""
    T.check_states(p)
    T.check_letters(u)
    u = tuple(u)
    ends = []
    for state in reversed(p):
        u, end = run(T, state, u)
        ends.append(end)
    return tuple(reversed(ends))


# ── Automaton algebra ───────────────────────────────────────────────────────────
def power(T: SAutomaton, k: int) -> SAutomaton:
    """
    The k-fold composition of T with itself.

    State (q_k, …, q_1) is named 'q_k.….q_1' and acts exactly like the state word.
    """
    if k < 1:
        raise InputError("power exponent must be at least 1")
    if k == 1:
        return T
    return reachable_power(T, itertools.product(T.states, repeat=k), complete=True)


def reachable_power(
    T: SAutomaton, words: Iterable[Sequence[str]], complete: bool = False
) -> SAutomaton:
    """
    Sub-automaton of the powers of T reachable from the given state words.

    Every word becomes a single state named by `join_names`; words of length one
    keep their original name.

    Args:
        T: The automaton.
        words: Nonempty state words, possibly of different lengths.
        complete: Callers pass every tuple of one length; skips exploration.
    """
    start = [tuple(p) for p in words]
    for p in start:
        if not p:
            raise InputError("the empty state word has no power state")
        T.check_states(p)

    order: List[StateWord] = []
    seen = set()
    queue = deque()
    for p in start:
        if p not in seen:
            seen.add(p)
            order.append(p)
            queue.append(p)
    delta: Dict[Tuple[str, str], Transition] = {}
    while queue:
        p = queue.popleft()
        for a in T.alphabet:
            b, nxt = step_word(T, p, a)
            delta[(join_names(p), a)] = (b, join_names(nxt))
            if nxt not in seen:
                if complete:
                    raise InputError("power tuples are not closed under the dual action")
                seen.add(nxt)
                order.append(nxt)
                queue.append(nxt)

    names = [join_names(p) for p in order]
    _checked(names, "power")
    return SAutomaton(tuple(names), T.alphabet, delta)


def _same_alphabet(T1: SAutomaton, T2: SAutomaton, what: str) -> None:
    if set(T1.alphabet) != set(T2.alphabet):
        raise InputError(f"{what} needs identical alphabets")


def compose(T2: SAutomaton, T1: SAutomaton) -> SAutomaton:
    """T2 ∘ T1 on state set Q2 Q1; state p2.p1 acts as p2 after p1."""
    _same_alphabet(T2, T1, "composition")
    delta = {}
    names = []
    for p2 in T2.states:
        for p1 in T1.states:
            name = join_names((p2, p1))
            names.append(name)
            for a in T1.alphabet:
                b, q1 = T1.delta[(p1, a)]
                c, q2 = T2.delta[(p2, b)]
                delta[(name, a)] = (c, join_names((q2, q1)))
    _checked(names, "composition")
    return SAutomaton(tuple(names), T1.alphabet, delta)


def disjoint_renaming(T1: SAutomaton, T2: SAutomaton) -> Dict[str, str]:
    """Names for the states of T2 that avoid every identifier of T1 (primes appended)."""
    taken = set(T1.states) | set(T1.alphabet) | set(T2.alphabet)
    mapping = {}
    for p in T2.states:
        name = p
        while name in taken:
            name += "'"
        taken.add(name)
        mapping[p] = name
    return mapping


def rename_states(T: SAutomaton, mapping: Mapping[str, str]) -> SAutomaton:
    """Rename states through an injective map (states not in the map keep their name)."""
    new = {p: mapping.get(p, p) for p in T.states}
    delta = {(new[p], a): (b, new[q]) for (p, a), (b, q) in T.delta.items()}
    return SAutomaton(tuple(new[p] for p in T.states), T.alphabet, delta)


def union(T1: SAutomaton, T2: SAutomaton) -> SAutomaton:
    """
    Disjoint union of two automata over the same alphabet.

    States of T2 that collide with T1 are renamed by `disjoint_renaming`.
    """
    _same_alphabet(T1, T2, "union")
    T2 = rename_states(T2, disjoint_renaming(T1, T2))
    delta = dict(T1.delta)
    delta.update(T2.delta)
    return SAutomaton(T1.states + T2.states, T1.alphabet, delta)


def restrict(T: SAutomaton, subset: Iterable[str]) -> SAutomaton:
    """The restriction T|_S to a closed subset S."""
    chosen = set(subset)
    T.check_states(chosen)
    keep = [p for p in T.states if p in chosen]
    delta = {(p, a): T.delta[(p, a)] for p in keep for a in T.alphabet}
    for (p, a), (_, q) in delta.items():
        if q not in keep:
            raise InputError(f"subset is not closed: {p}·{a} = {q}")
    return SAutomaton(tuple(keep), T.alphabet, delta)


def dual(T: SAutomaton) -> SAutomaton:
    """Swap the roles of states and letters: a --p/q--> b for every p --a/b--> q."""
    delta = {}
    for (p, a), (b, q) in T.delta.items():
        delta[(a, p)] = (q, b)
    return SAutomaton(T.alphabet, T.states, delta)


# ── Minimization and the word problem ───────────────────────────────────────────
def moore_partition(
    states: Sequence[Hashable],
    alphabet: Sequence[str],
    step: Callable[[Hashable, str], Tuple[str, Hashable]],
) -> Dict[Hashable, int]:
    """
    Coarsest partition of Mealy-machine states with equal behaviour.

    Blocks are numbered in order of first appearance in `states`.

    Args:
        states: All states, closed under `step`.
        alphabet: Input letters.
        step: (state, letter) -> (output letter, next state).

    Returns:
        Map state -> block index.
    """
    def _number(keys: Dict[Hashable, Hashable]) -> Dict[Hashable, int]:
        ids: Dict[Hashable, int] = {}
        return {s: ids.setdefault(keys[s], len(ids)) for s in states}

    block = _number({s: tuple(step(s, a)[0] for a in alphabet) for s in states})
    while True:
        refined = _number(
            {s: (block[s], tuple(block[step(s, a)[1]] for a in alphabet)) for s in states}
        )
        if len(set(refined.values())) == len(set(block.values())):
            return refined
        block = refined


def minimize(T: SAutomaton) -> Tuple[SAutomaton, Dict[str, str]]:
    """
    Merge states with equal action (partition refinement on output and successor block).

    Each block is represented by its first declared state.

    Returns:
        Tuple of (minimized automaton, map old state -> representative).
    """
    block = moore_partition(T.states, T.alphabet, T.step)
    rep: Dict[int, str] = {}
    for p in T.states:
        rep.setdefault(block[p], p)
    image = {p: rep[block[p]] for p in T.states}

    states = tuple(rep[b] for b in sorted(rep))
    delta = {}
    for p in states:
        for a in T.alphabet:
            b, q = T.delta[(p, a)]
            delta[(p, a)] = (b, image[q])
    if len(states) < len(T.states):
        logger.debug("minimize: %d -> %d states", len(T.states), len(states))
    return SAutomaton(states, T.alphabet, delta), image


def equal_actions(T: SAutomaton, p: Sequence[str], q: Sequence[str]) -> bool:
    """
    Decide p =_T q by breadth-first search over reachable pairs of power states.

    The empty word acts as the identity, so comparing against it is allowed.
    """
    T.check_states(p)
    T.check_states(q)
    start = (tuple(p), tuple(q))
    seen = {start}
    queue = deque([start])
    while queue:
        x, y = queue.popleft()
        for a in T.alphabet:
            bx, nx = step_word(T, x, a)
            by, ny = step_word(T, y, a)
            if bx != by:
                return False
            if (nx, ny) not in seen:
                seen.add((nx, ny))
                queue.append((nx, ny))
    return True


def action_signature(T: SAutomaton, p: Sequence[str]) -> Tuple:
    """
    Canonical, hashable description of the action of the state word p.

    The reachable part of T^{|p|} from p is minimized and numbered breadth-first;
    two words get the same signature iff they have equal actions.
    """
    T.check_states(p)
    start = tuple(p)
    reach = [start]
    seen = {start}
    queue = deque([start])
    while queue:
        x = queue.popleft()
        for a in T.alphabet:
            _, nxt = step_word(T, x, a)
            if nxt not in seen:
                seen.add(nxt)
                reach.append(nxt)
                queue.append(nxt)

    def _step(x, a):
        return step_word(T, x, a)

    block = moore_partition(reach, T.alphabet, _step)
    number = {block[start]: 0}
    order = [start]
    rows = []
    i = 0
    while i < len(order):
        x = order[i]
        row = []
        for a in T.alphabet:
            b, nxt = _step(x, a)
            if block[nxt] not in number:
                number[block[nxt]] = len(number)
                order.append(nxt)
            row.append((b, number[block[nxt]]))
        rows.append(tuple(row))
        i += 1
    return tuple(rows)
