"""
models/activity.py
S-activity of a saturated automaton: nondeterministic acceptors for the
active words, growth classification of their languages, and the brute-force
counts used to cross-check them.
"""

import itertools
import logging
from collections import deque
from dataclasses import dataclass
from typing import Dict, FrozenSet, Hashable, List, Optional, Sequence, Set, Tuple

import networkx as nx
import numpy as np
import pandas as pd

from models.automaton import LetterWord, join_names, run, step_word
from models.semigroup import SaturatedAutomaton, in_s_plus
from utils.config import LIMITS
from utils.errors import InputError, ResourceLimitError

logger = logging.getLogger(__name__)

GROWTH_CLASSES = ("finite", "polynomial", "exponential")


@dataclass(frozen=True)
class WordNFA:
    """Nondeterministic finite acceptor over letter words."""

    states: Tuple[Hashable, ...]
    alphabet: Tuple[str, ...]
    transitions: FrozenSet[Tuple[Hashable, str, Hashable]]
    initial: FrozenSet[Hashable]
    accepting: FrozenSet[Hashable]

    def __post_init__(self):
        known = set(self.states)
        letters = set(self.alphabet)
        for y, a, z in self.transitions:
            if y not in known or z not in known or a not in letters:
                raise InputError(f"transition ({y}, {a}, {z}) uses an undeclared state or letter")
        if not self.initial <= known or not self.accepting <= known:
            raise InputError("initial and accepting states must be declared states")

    def successors(self) -> Dict[Tuple[Hashable, str], List[Hashable]]:
        succ: Dict[Tuple[Hashable, str], List[Hashable]] = {}
        for y, a, z in self.transitions:
            succ.setdefault((y, a), []).append(z)
        return succ

    def accepts(self, word: Sequence[str]) -> bool:
        succ = self.successors()
        cur = set(self.initial)
        for a in word:
            cur = {z for y in cur for z in succ.get((y, a), ())}
        return bool(cur & self.accepting)


@dataclass(frozen=True)
class GrowthReport:
    """
    Growth of a regular language.

    Attributes:
        klass: One of GROWTH_CLASSES.
        degree: Polynomial degree d (count(n) = Θ(n^d)) for the polynomial class.
        bounded: True iff the number of words per length is bounded.
        sup_count: The bound sup_n count(n) when bounded.
    """

    klass: str
    degree: Optional[int]
    bounded: bool
    sup_count: Optional[int]

    def to_dict(self) -> Dict:
        return {
            "class": self.klass,
            "degree": self.degree,
            "bounded": self.bounded,
            "sup": self.sup_count,
        }


# ── Acceptors ───────────────────────────────────────────────────────────────────
def active_word_acceptor(SA: SaturatedAutomaton, p: Sequence[str]) -> WordNFA:
    """
    Acceptor for the output words q with p --u/q--> p' and p' ∉ S⁺.

    States are the power states reachable from p; transitions are labelled
    with the output letter.
    """
    if not p:
        raise InputError("the active words of the empty state word are undefined")
    T = SA.automaton
    T.check_states(p)
    start = tuple(p)
    order = [start]
    seen = {start}
    queue = deque([start])
    edges = set()
    while queue:
        x = queue.popleft()
        for a in T.alphabet:
            b, nxt = step_word(T, x, a)
            edges.add((join_names(x), b, join_names(nxt)))
            if nxt not in seen:
                seen.add(nxt)
                order.append(nxt)
                queue.append(nxt)
    accepting = frozenset(join_names(x) for x in order if not in_s_plus(SA, x))
    return WordNFA(
        states=tuple(join_names(x) for x in order),
        alphabet=T.alphabet,
        transitions=frozenset(edges),
        initial=frozenset([join_names(start)]),
        accepting=accepting,
    )


def automaton_active_acceptor(SA: SaturatedAutomaton) -> WordNFA:
    """Acceptor for A = ⋃_q A(q): every state initial, P-states accepting."""
    T = SA.automaton
    edges = frozenset((p, b, q) for (p, _), (b, q) in T.delta.items())
    return WordNFA(
        states=T.states,
        alphabet=T.alphabet,
        transitions=edges,
        initial=frozenset(T.states),
        accepting=frozenset(SA.p_states),
    )


# ── Growth classification ───────────────────────────────────────────────────────
def _determinize(
    N: WordNFA, limit: int
) -> Tuple[List[FrozenSet], Dict[Tuple[int, str], int], Set[int]]:
    """Subset construction without the empty subset; state 0 is initial."""
    start = frozenset(N.initial)
    succ = N.successors()
    index = {start: 0}
    subsets = [start]
    delta: Dict[Tuple[int, str], int] = {}
    i = 0
    while i < len(subsets):
        cur = subsets[i]
        for a in N.alphabet:
            nxt = frozenset(z for y in cur for z in succ.get((y, a), ()))
            if not nxt:
                continue
            if nxt not in index:
                if len(subsets) >= limit:
                    raise ResourceLimitError("subset_construction_limit", limit)
                index[nxt] = len(subsets)
                subsets.append(nxt)
            delta[(i, a)] = index[nxt]
        i += 1
    accepting = {i for i, sub in enumerate(subsets) if sub & N.accepting}
    return subsets, delta, accepting


def _trim(delta: Dict[Tuple[int, str], int], accepting: Set[int]) -> Set[int]:
    """States that reach an accepting state (all are accessible by construction)."""
    back: Dict[int, List[int]] = {}
    for (i, _), j in delta.items():
        back.setdefault(j, []).append(i)
    live = set(accepting)
    queue = deque(accepting)
    while queue:
        j = queue.popleft()
        for i in back.get(j, ()):
            if i not in live:
                live.add(i)
                queue.append(i)
    return live


def _sup_count(
    live: List[int], delta: Dict[Tuple[int, str], int], accepting: Set[int], alphabet: Sequence[str]
) -> int:
    """Maximum of count(n) over all n, for a language of bounded growth."""
    pos = {x: k for k, x in enumerate(live)}
    M = np.zeros((len(live), len(live)), dtype=np.int64)
    for x in live:
        for a in alphabet:
            y = delta.get((x, a))
            if y in pos:
                M[pos[x], pos[y]] += 1
    final = np.array([1 if x in accepting else 0 for x in live], dtype=np.int64)
    v = np.zeros(len(live), dtype=np.int64)
    v[pos[0]] = 1
    seen = set()
    best = 0
    while v.tobytes() not in seen:
        seen.add(v.tobytes())
        best = max(best, int(v @ final))
        v = v @ M
    return best


def growth_class(N: WordNFA, limit: int = LIMITS["subset_construction_limit"]) -> GrowthReport:
    """
    Classify the growth of L(N) through its trimmed subset automaton.

    A strongly connected component with more internal edges than states gives
    exponential growth; otherwise the degree is one less than the largest
    number of cyclic components on a path of the condensation.
    """
    subsets, delta, accepting = _determinize(N, limit)
    live = _trim(delta, accepting)
    if not live:
        return GrowthReport("finite", None, True, 0)

    G = nx.MultiDiGraph()
    G.add_nodes_from(live)
    for (i, a), j in delta.items():
        if i in live and j in live:
            G.add_edge(i, j, letter=a)

    sccs = list(nx.strongly_connected_components(G))
    cyclic = []
    for comp in sccs:
        internal = G.subgraph(comp).number_of_edges()
        if internal > len(comp):
            logger.debug("component of %d states with %d internal edges", len(comp), internal)
            return GrowthReport("exponential", None, False, None)
        cyclic.append(1 if internal else 0)

    C = nx.condensation(nx.DiGraph(G), scc=sccs)
    best: Dict[int, int] = {}
    for c in nx.topological_sort(C):
        best[c] = cyclic[c] + max((best[b] for b in C.predecessors(c)), default=0)
    chain = max(best.values())

    if chain == 0:
        return GrowthReport("finite", None, True, _sup_count(sorted(live), delta, accepting, N.alphabet))
    degree = chain - 1
    if degree == 0:
        sup = _sup_count(sorted(live), delta, accepting, N.alphabet)
        return GrowthReport("polynomial", 0, True, sup)
    return GrowthReport("polynomial", degree, False, None)


def active_counts(N: WordNFA, n_max: int, limit: int = LIMITS["subset_construction_limit"]) -> List[int]:
    """Number of accepted words of each length 0..n_max (exact integers)."""
    subsets, delta, accepting = _determinize(N, limit)
    v: Dict[int, int] = {0: 1}
    counts = []
    for _ in range(n_max + 1):
        counts.append(sum(c for x, c in v.items() if x in accepting))
        nxt: Dict[int, int] = {}
        for x, c in v.items():
            for a in N.alphabet:
                y = delta.get((x, a))
                if y is not None:
                    nxt[y] = nxt.get(y, 0) + c
        v = nxt
    return counts


def is_bounded_activity(SA: SaturatedAutomaton) -> bool:
    return growth_class(automaton_active_acceptor(SA)).bounded


# ── Brute force ─────────────────────────────────────────────────────────────────
def active_words_bruteforce(SA: SaturatedAutomaton, n: int) -> Set[LetterWord]:
    """A(n): the set q∘u over all u of length n and states q with q·u ∈ P."""
    if n > LIMITS["brute_force_length"]:
        raise ResourceLimitError("brute_force_length", n)
    T = SA.automaton
    p_states = set(SA.p_states)
    words = set()
    for u in itertools.product(T.alphabet, repeat=n):
        for q in T.states:
            out, end = run(T, q, u)
            if end in p_states:
                words.add(out)
    return words


def count_active(SA: SaturatedAutomaton, n: int) -> int:
    """|A(n)| by enumerating every input word of length n."""
    return len(active_words_bruteforce(SA, n))


def activity_profile(SA: SaturatedAutomaton, n_max: int, brute_force: bool = True) -> pd.DataFrame:
    """
    Table of |A(n)| for n = 0..n_max.

    Columns: n, acceptor (count from the acceptor) and, when `brute_force`
    is set and n is within LIMITS["brute_force_length"], brute_force.
    """
    counts = active_counts(automaton_active_acceptor(SA), n_max)
    df = pd.DataFrame({"n": range(n_max + 1), "acceptor": counts})
    if brute_force:
        cutoff = min(n_max, LIMITS["brute_force_length"])
        df["brute_force"] = [count_active(SA, n) if n <= cutoff else None for n in df["n"]]
    return df
