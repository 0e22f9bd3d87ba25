"""
models/expansion.py
The expansion relation E_w of a finite word w and the nondeterministic finite
relation acceptor (NFRA) A_w that recognizes it, together with a brute-force
evaluation of E_w and a canonical labeling that identifies isomorphic NFRAs.

Acceptors read state words from their rightmost letter (the one that acts first).
"""

import itertools
import json
import logging
from collections import deque
from dataclasses import dataclass
from functools import cached_property
from typing import Dict, FrozenSet, Hashable, Iterable, List, NamedTuple, Optional, Sequence, Set, Tuple

from models.activity import automaton_active_acceptor
from models.automaton import LetterWord, StateWord
from models.nerode import NerodeDFA
from models.orbits import ProductMachine, ProductState, orbital_transducer, product_with_R
from models.semigroup import SaturatedAutomaton, normal_form
from utils.config import LIMITS
from utils.errors import PreconditionError, ResourceLimitError

logger = logging.getLogger(__name__)


class ExpansionState(NamedTuple):
    """
    A state (u, s, C, D) of A_w; `tag` is None for the ε-states (u, ε, C, C).
    """

    word: LetterWord
    tag: Optional[str]
    in_class: int
    out_class: int


@dataclass(frozen=True, eq=False)
class NFRA:
    """
    Nondeterministic finite relation acceptor (Z, Q', δ, z0, F).

    A pair (p, q) of nonempty words is accepted iff runs on p and on q from z0
    end in states y, z with (y, z) ∈ F.
    """

    states: Tuple[Hashable, ...]
    alphabet: Tuple[str, ...]
    transitions: FrozenSet[Tuple[Hashable, str, Hashable]]
    initial: Hashable
    acceptance: FrozenSet[Tuple[Hashable, Hashable]]

    @cached_property
    def successors(self) -> Dict[Tuple[Hashable, str], List[Hashable]]:
        succ: Dict[Tuple[Hashable, str], List[Hashable]] = {}
        for y, a, z in self.transitions:
            succ.setdefault((y, a), []).append(z)
        return succ

    def ends(self, word: Sequence[str]) -> Set[Hashable]:
        """States reached from z0 reading `word` from its rightmost letter."""
        cur = {self.initial}
        for a in reversed(word):
            cur = {z for y in cur for z in self.successors.get((y, a), ())}
            if not cur:
                break
        return cur


WitnessMap = Dict[ExpansionState, FrozenSet[LetterWord]]


def nfra_accepts(A: NFRA, p: Sequence[str], q: Sequence[str]) -> bool:
    if not p or not q:
        return False
    ends_p = A.ends(p)
    ends_q = A.ends(q)
    return any((y, z) in A.acceptance for y in ends_p for z in ends_q)


# ── Active words of one length ──────────────────────────────────────────────────
def active_words_of_length(
    SA: SaturatedAutomaton, n: int, limit: int = LIMITS["orbit_word_limit"]
) -> Set[LetterWord]:
    """
    A(n) read off the activity acceptor, exploring only prefixes that can
    still be completed to an accepted word of length n.
    """
    N = automaton_active_acceptor(SA)
    back: Dict[Hashable, Set[Hashable]] = {}
    for y, _, z in N.transitions:
        back.setdefault(z, set()).add(y)
    # alive[k]: states from which an accepting state is reached in exactly k steps
    alive = [set(N.accepting)]
    for _ in range(n):
        alive.append({y for z in alive[-1] for y in back.get(z, ())})

    succ = N.successors()
    level = {(x, ()) for x in N.initial if x in alive[n]}
    for i in range(n):
        nxt = set()
        for x, word in level:
            for a in N.alphabet:
                for z in succ.get((x, a), ()):
                    if z in alive[n - i - 1]:
                        nxt.add((z, word + (a,)))
        if len(nxt) > limit:
            raise ResourceLimitError("orbit_word_limit", len(nxt))
        level = nxt
    return {word for _, word in level}


# ── Construction of A_w ─────────────────────────────────────────────────────────
def _s_reach(SA: SaturatedAutomaton, P: ProductMachine, start: ProductState) -> Set[Tuple[ProductState, int]]:
    """
    Pairs (x, e): x is reached from `start` by a nonempty run whose outputs are
    all s_states and whose output word multiplies to semigroup element e.
    """
    elem = SA.state_element
    table = SA.semigroup.table
    found: Set[Tuple[ProductState, int]] = set()
    queue = deque()
    for _, out, target in P.edges.get(start, ()):
        if out in elem:
            item = (target, elem[out])
            if item not in found:
                found.add(item)
                queue.append(item)
    while queue:
        x, e = queue.popleft()
        for _, out, target in P.edges[x]:
            if out in elem:
                item = (target, int(table[elem[out], e]))
                if item not in found:
                    found.add(item)
                    queue.append(item)
    return found


def _word_key(alphabet: Sequence[str]):
    position = {a: i for i, a in enumerate(alphabet)}
    return lambda word: tuple(position[a] for a in word)


def expansion_acceptor(
    SA: SaturatedAutomaton, w: Sequence[str], D: NerodeDFA, activity_bound: Optional[int] = None
) -> Tuple[NFRA, WitnessMap, ProductMachine]:
    """
    Build A_w with its witness map W and the product machine it is read from.

    Args:
        SA: Saturated automaton.
        w: The letter word.
        D: Minimal DFA of R.
        activity_bound: sup_n |A(n)|; checked against the number of orbit
                        words used when given.
    """
    T = SA.automaton
    T.check_letters(w)
    w = tuple(w)
    P = product_with_R(orbital_transducer(T, w), D)
    classes = range(P.n_classes)
    c0 = P.root[1]

    key = _word_key(T.alphabet)
    words = [w] + sorted(active_words_of_length(SA, len(w)) - {w}, key=key)
    if activity_bound is not None and len(words) > activity_bound + 1:
        raise PreconditionError(
            "bounded activity", f"{len(words)} orbit words exceed the activity bound {activity_bound} + 1"
        )
    known = set(words)

    elem = SA.state_element
    table = SA.semigroup.table
    s_states = SA.s_states
    p_states = set(SA.p_states)

    W: WitnessMap = {}
    states: List[ExpansionState] = []
    for u in words:
        for c in classes:
            z = ExpansionState(u, None, c, c)
            states.append(z)
            W[z] = frozenset([u])
        for c in classes:
            reach = _s_reach(SA, P, (u, c)) if (u, c) in P.edges else set()
            for s in s_states:
                for d in classes:
                    z = ExpansionState(u, s, c, d)
                    states.append(z)
                    W[z] = frozenset(x for (x, e_class), e in reach if e_class == d and e == elem[s])

    if activity_bound is not None:
        n = P.n_classes
        bound = (activity_bound + 1) * n * (len(s_states) * n + 1)
        if len(states) > bound:
            raise ResourceLimitError("nfra_state_bound", len(states))

    transitions = set()

    def _p_edges(z: ExpansionState, sources: Iterable[LetterWord], d: int) -> None:
        for x in sources:
            for _, out, (v, e) in P.edges.get((x, d), ()):
                if out in p_states:
                    if v not in known:
                        raise PreconditionError("bounded activity", f"orbit word {v} is missing from the active words")
                    transitions.add((z, out, ExpansionState(v, None, e, e)))

    for z in states:
        if z.tag is None:
            for s in s_states:
                for d in classes:
                    transitions.add((z, s, ExpansionState(z.word, s, z.in_class, d)))
            _p_edges(z, [z.word], z.in_class)
        else:
            for t in s_states:
                merged = s_states[int(table[elem[t], elem[z.tag]])]
                transitions.add((z, t, ExpansionState(z.word, merged, z.in_class, z.out_class)))
            _p_edges(z, W[z], z.out_class)

    groups: Dict[LetterWord, List[ExpansionState]] = {}
    for z in states:
        if z.out_class in P.accepting_classes:
            for x in W[z]:
                groups.setdefault(x, []).append(z)
    acceptance = frozenset(pair for group in groups.values() for pair in itertools.product(group, repeat=2))

    A = NFRA(
        states=tuple(states),
        alphabet=T.alphabet,
        transitions=frozenset(transitions),
        initial=ExpansionState(w, None, c0, c0),
        acceptance=acceptance,
    )
    logger.debug(
        "A_%s: %d orbit words, %d states, %d transitions",
        "".join(w), len(words), len(states), len(transitions),
    )
    return A, W, P


def build_nfra(
    SA: SaturatedAutomaton, w: Sequence[str], D: NerodeDFA, activity_bound: Optional[int] = None
) -> Tuple[NFRA, WitnessMap]:
    """A_w and its witness map."""
    A, W, _ = expansion_acceptor(SA, w, D, activity_bound)
    return A, W


# ── Brute force ─────────────────────────────────────────────────────────────────
def _prepend(SA: SaturatedAutomaton, out: str, nf: StateWord) -> StateWord:
    if nf and out in SA.state_element and nf[0] in SA.state_element:
        return (SA.product_state(out, nf[0]),) + nf[1:]
    return (out,) + nf


def expansion_relation_bruteforce(
    SA: SaturatedAutomaton, w: Sequence[str], D: NerodeDFA, max_len: int
) -> Set[Tuple[StateWord, StateWord]]:
    """
    E_w restricted to pairs of words of length <= max_len, by exploring the
    product machine paired with normal forms of the output word.
    """
    if max_len > LIMITS["brute_force_length"]:
        raise ResourceLimitError("brute_force_length", max_len)
    T = SA.automaton
    P = product_with_R(orbital_transducer(T, w), D)

    start = (P.root, ())
    seen = {start}
    queue = deque([start])
    reached: Dict[LetterWord, Set[StateWord]] = {}
    while queue:
        x, nf = queue.popleft()
        for _, out, target in P.edges[x]:
            nf2 = _prepend(SA, out, nf)
            if len(nf2) > max_len or (target, nf2) in seen:
                continue
            seen.add((target, nf2))
            queue.append((target, nf2))
            if target[1] in P.accepting_classes:
                reached.setdefault(target[0], set()).add(nf2)

    by_form: Dict[StateWord, List[StateWord]] = {}
    for k in range(1, max_len + 1):
        for p in itertools.product(T.states, repeat=k):
            by_form.setdefault(normal_form(SA, p), []).append(p)

    relation = set()
    for forms in reached.values():
        members = [p for nf in forms for p in by_form.get(nf, ())]
        relation.update(itertools.product(members, repeat=2))
    return relation


# ── Canonical labeling ──────────────────────────────────────────────────────────
class _Structure:
    """Integer view of an NFRA for colour refinement."""

    def __init__(self, A: NFRA):
        self.index = {z: i for i, z in enumerate(A.states)}
        n = len(A.states)
        self.n = n
        self.initial = self.index[A.initial]
        self.out: List[List[Tuple[str, int]]] = [[] for _ in range(n)]
        self.inc: List[List[Tuple[str, int]]] = [[] for _ in range(n)]
        for y, a, z in A.transitions:
            self.out[self.index[y]].append((a, self.index[z]))
            self.inc[self.index[z]].append((a, self.index[y]))
        self.f_out: List[List[int]] = [[] for _ in range(n)]
        self.f_in: List[List[int]] = [[] for _ in range(n)]
        for y, z in A.acceptance:
            self.f_out[self.index[y]].append(self.index[z])
            self.f_in[self.index[z]].append(self.index[y])
        self.edges = [(self.index[y], a, self.index[z]) for y, a, z in A.transitions]
        self.pairs = [(self.index[y], self.index[z]) for y, z in A.acceptance]


def _rank(keys: Sequence) -> List[int]:
    ids = {k: i for i, k in enumerate(sorted(set(keys)))}
    return [ids[k] for k in keys]


def _refine(S: _Structure, colors: List[int]) -> List[int]:
    while True:
        keys = [
            (
                colors[i],
                tuple(sorted((a, colors[j]) for a, j in S.out[i])),
                tuple(sorted((a, colors[j]) for a, j in S.inc[i])),
                tuple(sorted(colors[j] for j in S.f_out[i])),
                tuple(sorted(colors[j] for j in S.f_in[i])),
            )
            for i in range(S.n)
        ]
        refined = _rank(keys)
        if len(set(refined)) == len(set(colors)):
            return refined
        colors = refined


def _certificate(S: _Structure, pos: Sequence[int]) -> Tuple:
    return (
        S.n,
        pos[S.initial],
        tuple(sorted((pos[y], a, pos[z]) for y, a, z in S.edges)),
        tuple(sorted((pos[y], pos[z]) for y, z in S.pairs)),
    )


def _orbits(n: int, automorphisms: Iterable[Sequence[int]]) -> List[int]:
    parent = list(range(n))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for g in automorphisms:
        for x in range(n):
            a, b = find(x), find(g[x])
            if a != b:
                parent[max(a, b)] = min(a, b)
    return [find(x) for x in range(n)]


def nfra_canonical(A: NFRA, leaf_limit: int = LIMITS["canonical_leaf_limit"]) -> bytes:
    """
    Canonical form of A: equal bytes iff the NFRAs are isomorphic (initial
    state, labelled transitions and acceptance pairs preserved).

    Colour refinement with individualization of the first non-singleton cell;
    automorphisms found at equal leaves prune branches in the same orbit.
    """
    S = _Structure(A)
    base = [
        (
            i == S.initial,
            len(S.out[i]),
            len(S.inc[i]),
            tuple(sorted(a for a, _ in S.out[i])),
            tuple(sorted(a for a, _ in S.inc[i])),
            len(S.f_out[i]),
            len(S.f_in[i]),
        )
        for i in range(S.n)
    ]
    best: Dict[str, object] = {"cert": None, "pos": None, "leaves": 0}
    automorphisms: List[List[int]] = []

    def _search(colors: List[int], path: List[int]) -> None:
        counts: Dict[int, int] = {}
        for c in colors:
            counts[c] = counts.get(c, 0) + 1
        multi = [c for c, k in counts.items() if k > 1]
        if not multi:
            best["leaves"] += 1
            if best["leaves"] > leaf_limit:
                raise ResourceLimitError("canonical_leaf_limit", leaf_limit)
            cert = _certificate(S, colors)
            if best["cert"] is None or cert < best["cert"]:
                best["cert"], best["pos"] = cert, colors
            elif cert == best["cert"]:
                inverse = {p: v for v, p in enumerate(best["pos"])}
                automorphisms.append([inverse[colors[v]] for v in range(S.n)])
            return
        target = min(multi)
        cell = [v for v in range(S.n) if colors[v] == target]
        done: List[int] = []
        for v in cell:
            fixing = [g for g in automorphisms if all(g[x] == x for x in path)]
            orbit = _orbits(S.n, fixing)
            if any(orbit[v] == orbit[u] for u in done):
                continue
            individual = _rank([(colors[i], 0 if i == v else 1) for i in range(S.n)])
            _search(_refine(S, individual), path + [v])
            done.append(v)

    _search(_refine(S, _rank(base)), [])
    return json.dumps(best["cert"], ensure_ascii=False).encode("utf-8")
