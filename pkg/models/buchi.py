"""
models/buchi.py
Transition-accepting Büchi acceptors over letters: the deterministic orbit
acceptor whose states are isomorphism classes of expansion acceptors, the
emptiness test with lasso witnesses, complementation of deterministic
acceptors and the search for periodic words through transition monoids.
"""

import logging
from collections import deque
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, Hashable, List, Mapping, NamedTuple, Optional, Sequence, Set, Tuple

import networkx as nx
import numpy as np
from joblib import Parallel, delayed

from models.activity import automaton_active_acceptor, growth_class
from models.automaton import LetterWord
from models.expansion import expansion_acceptor, nfra_canonical
from models.nerode import NerodeDFA
from models.semigroup import SaturatedAutomaton
from utils.config import LIMITS
from utils.errors import InputError, PreconditionError, ResourceLimitError

logger = logging.getLogger(__name__)

BuchiEdge = Tuple[Hashable, str, Hashable]


@dataclass(frozen=True)
class UltimatelyPeriodicWord:
    """The infinite word stem·loop·loop·…"""

    stem: LetterWord
    loop: LetterWord

    def __post_init__(self):
        if not self.loop:
            raise InputError("the loop of an ultimately periodic word must be nonempty")

    def prefix(self, n: int) -> LetterWord:
        word = list(self.stem)
        while len(word) < n:
            word.extend(self.loop)
        return tuple(word[:n])

    def __str__(self) -> str:
        return f"{' '.join(self.stem)} ({' '.join(self.loop)})^ω".strip()


@dataclass(frozen=True, eq=False)
class BuchiAcceptor:
    """
    Büchi acceptor with accepting transitions.

    Attributes:
        labels: Representative word of each state (deterministic orbit acceptor only).
        orbit_sizes: R-orbit size of each representative word.
    """

    states: Tuple[Hashable, ...]
    alphabet: Tuple[str, ...]
    transitions: Tuple[BuchiEdge, ...]
    initial: Hashable
    accepting: FrozenSet[BuchiEdge]
    deterministic: bool
    labels: Mapping[Hashable, LetterWord] = field(default_factory=dict)
    orbit_sizes: Mapping[Hashable, int] = field(default_factory=dict)

    def __post_init__(self):
        known = set(self.states)
        if self.initial not in known:
            raise InputError("the initial state is not a declared state")
        seen = set()
        for y, a, z in self.transitions:
            if y not in known or z not in known or a not in self.alphabet:
                raise InputError(f"transition ({y}, {a}, {z}) uses an undeclared state or letter")
            if self.deterministic:
                if (y, a) in seen:
                    raise InputError(f"two transitions leave {y} on {a} in a deterministic acceptor")
                seen.add((y, a))
        if not self.accepting <= set(self.transitions):
            raise InputError("accepting transitions must be transitions")

    def successors(self) -> Dict[Hashable, List[Tuple[str, Hashable, bool]]]:
        """state -> [(letter, target, accepting)], letters in alphabet order."""
        position = {a: i for i, a in enumerate(self.alphabet)}
        succ: Dict[Hashable, List[Tuple[str, Hashable, bool]]] = {y: [] for y in self.states}
        for t in self.transitions:
            y, a, z = t
            succ[y].append((a, z, t in self.accepting))
        for edges in succ.values():
            edges.sort(key=lambda e: position[e[0]])
        return succ

    def is_complete(self) -> bool:
        pairs = {(y, a) for y, a, _ in self.transitions}
        return all((y, a) in pairs for y in self.states for a in self.alphabet)


# ── The orbit acceptor ──────────────────────────────────────────────────────────
def _successor_summary(
    SA: SaturatedAutomaton, D: NerodeDFA, word: LetterWord, activity_bound: Optional[int]
) -> Tuple[bytes, int]:
    """Canonical form of A_word and the R-orbit size of word."""
    A, _, P = expansion_acceptor(SA, word, D, activity_bound)
    return nfra_canonical(A), len(P.orbit())


def build_orbit_buchi(
    SA: SaturatedAutomaton,
    D: NerodeDFA,
    n_jobs: int = LIMITS["n_jobs"],
    state_limit: int = LIMITS["buchi_state_limit"],
    length_limit: int = LIMITS["buchi_word_length_limit"],
) -> BuchiAcceptor:
    """
    Deterministic Büchi acceptor of the ω-words with an infinite R-orbit.

    States are isomorphism classes of A_w (one breadth-first representative
    word each); w --a--> wa is accepting iff a expands w. The successors of a
    frontier are computed in parallel with joblib.

    Raises:
        PreconditionError: the activity of SA is not bounded.
        ResourceLimitError: too many states or too long representatives.
    """
    report = growth_class(automaton_active_acceptor(SA))
    if not report.bounded:
        raise PreconditionError("bounded activity", f"activity grows {report.klass}ly")
    bound = report.sup_count

    root: LetterWord = ()
    canon, size = _successor_summary(SA, D, root, bound)
    reps: List[LetterWord] = [root]
    sizes = [size]
    index: Dict[bytes, int] = {canon: 0}
    transitions: List[BuchiEdge] = []
    accepting: Set[BuchiEdge] = set()

    frontier = [0]
    alphabet = SA.automaton.alphabet
    while frontier:
        tasks = [(i, a) for i in frontier for a in alphabet]
        words = [reps[i] + (a,) for i, a in tasks]
        if words and len(words[-1]) > length_limit:
            raise ResourceLimitError("buchi_word_length_limit", len(words[-1]))
        results = Parallel(n_jobs=n_jobs)(
            delayed(_successor_summary)(SA, D, word, bound) for word in words
        )
        frontier = []
        for (i, a), word, (canon, size) in zip(tasks, words, results):
            j = index.get(canon)
            if j is None:
                j = len(reps)
                if j >= state_limit:
                    raise ResourceLimitError("buchi_state_limit", state_limit)
                index[canon] = j
                reps.append(word)
                sizes.append(size)
                frontier.append(j)
            edge = (i, a, j)
            transitions.append(edge)
            if size > sizes[i]:
                accepting.add(edge)
        logger.info("orbit acceptor: %d states, frontier %d", len(reps), len(frontier))

    states = tuple(range(len(reps)))
    return BuchiAcceptor(
        states=states,
        alphabet=alphabet,
        transitions=tuple(transitions),
        initial=0,
        accepting=frozenset(accepting),
        deterministic=True,
        labels=dict(zip(states, reps)),
        orbit_sizes=dict(zip(states, sizes)),
    )


# ── Emptiness ───────────────────────────────────────────────────────────────────
def _shortlex_paths(B: BuchiAcceptor, succ, source: Hashable) -> Dict[Hashable, LetterWord]:
    """Shortest, then lexicographically least, word from `source` to every reachable state."""
    paths = {source: ()}
    queue = deque([source])
    while queue:
        y = queue.popleft()
        for a, z, _ in succ[y]:
            if z not in paths:
                paths[z] = paths[y] + (a,)
                queue.append(z)
    return paths


def buchi_nonempty(B: BuchiAcceptor) -> Optional[UltimatelyPeriodicWord]:
    """
    A lasso witness stem·loop^ω for a nonempty language, else None.

    Among accepting transitions inside a strongly connected component, the
    witness minimizes (|stem|, |loop|, stem, loop) with stem and loop the
    shortlex paths to and around the transition.
    """
    succ = B.successors()
    position = {a: i for i, a in enumerate(B.alphabet)}
    G = nx.DiGraph()
    G.add_nodes_from(B.states)
    G.add_edges_from((y, z) for y, _, z in B.transitions)
    component = {}
    for k, comp in enumerate(nx.strongly_connected_components(G)):
        for y in comp:
            component[y] = k

    reach = _shortlex_paths(B, succ, B.initial)
    from_state: Dict[Hashable, Dict[Hashable, LetterWord]] = {}
    best = None
    for y, a, z in sorted(B.accepting, key=lambda e: position[e[1]]):
        if y not in reach or component[y] != component[z]:
            continue
        if z not in from_state:
            from_state[z] = _shortlex_paths(B, succ, z)
        stem = reach[y]
        loop = (a,) + from_state[z][y]
        key = (len(stem), len(loop), [position[x] for x in stem], [position[x] for x in loop])
        if best is None or key < best[0]:
            best = (key, stem, loop)
    if best is None:
        return None
    return UltimatelyPeriodicWord(best[1], best[2])


def complement_det_buchi(B: BuchiAcceptor) -> BuchiAcceptor:
    """
    Nondeterministic acceptor of the complement of a complete deterministic acceptor.

    Copy 0 follows B; at any point a run may move to copy 1, which keeps only
    the non-accepting transitions of B and accepts on each of them.
    """
    if not B.deterministic:
        raise InputError("only deterministic acceptors can be complemented")
    if not B.is_complete():
        raise InputError("the deterministic acceptor must be complete")
    transitions = []
    accepting = set()
    for edge in B.transitions:
        y, a, z = edge
        transitions.append(((y, 0), a, (z, 0)))
        if edge not in B.accepting:
            transitions.append(((y, 0), a, (z, 1)))
            kept = ((y, 1), a, (z, 1))
            transitions.append(kept)
            accepting.add(kept)
    states = tuple((y, k) for k in (0, 1) for y in B.states)
    return BuchiAcceptor(
        states=states,
        alphabet=B.alphabet,
        transitions=tuple(transitions),
        initial=(B.initial, 0),
        accepting=frozenset(accepting),
        deterministic=False,
    )


# ── Ultimately periodic words ───────────────────────────────────────────────────
class FlaggedMonoidElement(NamedTuple):
    """
    A word as a Boolean relation on states; `accepting[y, z]` marks runs from y
    to z that pass an accepting transition.
    """

    reach: np.ndarray
    accepting: np.ndarray


class _Matrices:
    """Boolean reachability/acceptance matrices of B, one pair per letter."""

    def __init__(self, B: BuchiAcceptor):
        self.index = {y: i for i, y in enumerate(B.states)}
        n = len(B.states)
        self.letters: Dict[str, FlaggedMonoidElement] = {}
        for a in B.alphabet:
            self.letters[a] = FlaggedMonoidElement(np.zeros((n, n), dtype=bool), np.zeros((n, n), dtype=bool))
        for edge in B.transitions:
            y, a, z = edge
            reach, acc = self.letters[a]
            reach[self.index[y], self.index[z]] = True
            if edge in B.accepting:
                acc[self.index[y], self.index[z]] = True

    @staticmethod
    def compose(x: FlaggedMonoidElement, y: FlaggedMonoidElement) -> FlaggedMonoidElement:
        """Element of the word xy: reach and 'passes an accepting transition'."""
        rx, ax = x[0].astype(np.int64), x[1].astype(np.int64)
        ry, ay = y[0].astype(np.int64), y[1].astype(np.int64)
        return FlaggedMonoidElement((rx @ ry) > 0, ((ax @ ry) + (rx @ ay)) > 0)

    def word(self, word: Sequence[str]) -> FlaggedMonoidElement:
        m = self.letters[word[0]]
        for a in word[1:]:
            m = self.compose(m, self.letters[a])
        return m


def _image(states: np.ndarray, reach: np.ndarray) -> np.ndarray:
    return (states.astype(np.int64) @ reach.astype(np.int64)) > 0


def _loop_accepts(m: FlaggedMonoidElement, start: np.ndarray) -> bool:
    """
    True iff some run from a state in `start` reading the loop forever passes
    accepting transitions infinitely often.
    """
    powers = []
    seen = set()
    cur = m
    while True:
        key = (cur[0].tobytes(), cur[1].tobytes())
        if key in seen:
            break
        seen.add(key)
        powers.append(cur)
        cur = _Matrices.compose(cur, m)
    reachable = start.copy()
    for reach, _ in powers:
        reachable |= _image(start, reach)
    for reach, acc in powers:
        if np.any(reachable & np.diag(acc) & np.diag(reach)):
            return True
    return False


def _det_run(succ_map, y, word) -> Optional[Tuple[Hashable, bool]]:
    accepted = False
    for a in word:
        if (y, a) not in succ_map:
            return None
        y, acc = succ_map[(y, a)]
        accepted = accepted or acc
    return y, accepted


def accepts_ultimately_periodic(B: BuchiAcceptor, stem: Sequence[str], loop: Sequence[str]) -> bool:
    """Membership of stem·loop^ω."""
    if not loop:
        raise InputError("the loop of an ultimately periodic word must be nonempty")
    if B.deterministic:
        succ_map = {(y, a): (z, (y, a, z) in B.accepting) for y, a, z in B.transitions}
        state = _det_run(succ_map, B.initial, stem)
        if state is None:
            return False
        y = state[0]
        visits: Dict[Hashable, int] = {}
        flags: List[bool] = []
        while y not in visits:
            visits[y] = len(flags)
            state = _det_run(succ_map, y, loop)
            if state is None:
                return False
            y, acc = state
            flags.append(acc)
        return any(flags[visits[y]:])

    M = _Matrices(B)
    start = np.zeros(len(B.states), dtype=bool)
    start[M.index[B.initial]] = True
    if stem:
        start = _image(start, M.word(stem)[0])
    return _loop_accepts(M.word(loop), start)


def periodic_word_in_buchi(
    B: BuchiAcceptor, limit: int = LIMITS["monoid_size_limit"]
) -> Optional[LetterWord]:
    """
    Shortest, then lexicographically least, u with u^ω accepted by B.

    Enumerates the flagged transition monoid breadth-first; returns None when
    no element's ω-power is accepted.
    """
    M = _Matrices(B)
    start = np.zeros(len(B.states), dtype=bool)
    start[M.index[B.initial]] = True
    seen = set()
    queue = deque()
    for a in B.alphabet:
        m = M.letters[a]
        key = (m[0].tobytes(), m[1].tobytes())
        if key not in seen:
            seen.add(key)
            queue.append((m, (a,)))
    while queue:
        m, word = queue.popleft()
        if _loop_accepts(m, start):
            return word
        for a in B.alphabet:
            nxt = _Matrices.compose(m, M.letters[a])
            key = (nxt[0].tobytes(), nxt[1].tobytes())
            if key not in seen:
                if len(seen) >= limit:
                    raise ResourceLimitError("monoid_size_limit", limit)
                seen.add(key)
                queue.append((nxt, word + (a,)))
    return None


def buchi_summary(B: BuchiAcceptor) -> Dict:
    """Plain description of an acceptor for reports."""
    return {
        "states": len(B.states),
        "transitions": len(B.transitions),
        "accepting_transitions": len(B.accepting),
        "deterministic": B.deterministic,
        "representatives": {str(y): " ".join(B.labels[y]) for y in B.states if y in B.labels},
    }
