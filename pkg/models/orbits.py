"""
models/orbits.py
Orbits of finite letter words: the orbital transducer T∘w, its product with
the Nerode classes of R, R-orbit sizes and brute-force expandability.
"""

import itertools
import logging
from collections import deque
from dataclasses import dataclass
from typing import Dict, List, Mapping, Optional, Sequence, Set, Tuple

import pandas as pd

from models.automaton import LetterWord, SAutomaton, act, run
from models.nerode import NerodeDFA
from utils.config import LIMITS
from utils.errors import InputError, ResourceLimitError

logger = logging.getLogger(__name__)

ProductState = Tuple[LetterWord, int]
# (input state, output state, target) in the order of T's states
ProductEdge = Tuple[str, str, ProductState]


@dataclass(frozen=True)
class OrbitalTransducer:
    """
    The automaton T∘w: states are the words of Q*∘w, input and output letters
    are states of T, and u --p/(p·u)--> p∘u.
    """

    root: LetterWord
    words: Tuple[LetterWord, ...]
    alphabet: Tuple[str, ...]
    transitions: Mapping[Tuple[LetterWord, str], Tuple[str, LetterWord]]

    def step(self, u: LetterWord, p: str) -> Tuple[str, LetterWord]:
        return self.transitions[(u, p)]


@dataclass(frozen=True)
class ProductMachine:
    """
    Accessible part of T∘w × (classes of R).

    The class component follows `NerodeDFA.mirror` on the input letters, so
    after reading r (rightmost letter first) from the root it is accepting
    iff r ∈ R.
    """

    root: ProductState
    states: Tuple[ProductState, ...]
    edges: Mapping[ProductState, Tuple[ProductEdge, ...]]
    accepting_classes: frozenset
    n_classes: int

    def orbit(self) -> Set[LetterWord]:
        return {u for u, c in self.states if c in self.accepting_classes}


def orbital_transducer(
    T: SAutomaton, w: Sequence[str], limit: int = LIMITS["orbit_word_limit"]
) -> OrbitalTransducer:
    """
    Breadth-first construction of T∘w from the root w.

    Raises:
        ResourceLimitError: the orbit has more than `limit` words.
    """
    T.check_letters(w)
    root = tuple(w)
    words = [root]
    seen = {root}
    queue = deque([root])
    transitions = {}
    while queue:
        u = queue.popleft()
        for p in T.states:
            out, end = run(T, p, u)
            transitions[(u, p)] = (end, out)
            if out not in seen:
                if len(words) >= limit:
                    raise ResourceLimitError("orbit_word_limit", limit)
                seen.add(out)
                words.append(out)
                queue.append(out)
    return OrbitalTransducer(root, tuple(words), T.states, transitions)


def product_with_R(O: OrbitalTransducer, D: NerodeDFA) -> ProductMachine:
    """Accessible part of the product of T∘w with the classes of R."""
    if set(D.alphabet) != set(O.alphabet):
        raise InputError("R must be a language over the automaton's states")
    M = D.mirror
    root = (O.root, M.initial)
    order = [root]
    seen = {root}
    queue = deque([root])
    edges: Dict[ProductState, Tuple[ProductEdge, ...]] = {}
    while queue:
        u, c = queue.popleft()
        out = []
        for p in O.alphabet:
            q, v = O.step(u, p)
            target = (v, M.step(c, p))
            out.append((p, q, target))
            if target not in seen:
                seen.add(target)
                order.append(target)
                queue.append(target)
        edges[(u, c)] = tuple(out)
    return ProductMachine(root, tuple(order), edges, M.accepting, M.n_classes)


def r_orbit_size(T: SAutomaton, w: Sequence[str], D: NerodeDFA) -> int:
    """|R∘w|: the number of words r∘w with r ∈ R."""
    return len(product_with_R(orbital_transducer(T, w), D).orbit())


def r_orbit_bruteforce(T: SAutomaton, w: Sequence[str], D: NerodeDFA, max_len: int) -> Set[LetterWord]:
    """{r∘w : r ∈ R, |r| <= max_len} by direct evaluation."""
    if max_len > LIMITS["brute_force_length"]:
        raise ResourceLimitError("brute_force_length", max_len)
    words = set()
    for k in range(max_len + 1):
        for r in itertools.product(T.states, repeat=k):
            if D.accepts(r):
                words.add(act(T, r, w))
    return words


def expands(T: SAutomaton, w: Sequence[str], x: Sequence[str], D: NerodeDFA) -> bool:
    """True iff appending x to w strictly enlarges the R-orbit."""
    return r_orbit_size(T, tuple(w) + tuple(x), D) > r_orbit_size(T, w, D)


def find_expander(
    T: SAutomaton, w: Sequence[str], D: NerodeDFA, max_len: int
) -> Optional[LetterWord]:
    """Shortest, then lexicographically least, x with |x| <= max_len that expands w."""
    base = r_orbit_size(T, w, D)
    for k in range(1, max_len + 1):
        for x in itertools.product(T.alphabet, repeat=k):
            if r_orbit_size(T, tuple(w) + x, D) > base:
                return x
    return None


def orbit_growth(
    T: SAutomaton, stem: Sequence[str], loop: Sequence[str], D: NerodeDFA, k_max: int
) -> pd.DataFrame:
    """
    R-orbit sizes of the prefixes stem·loop^k, k = 0..k_max.

    Columns: k, length, orbit_size.
    """
    if not loop:
        raise InputError("the loop of an ultimately periodic word must be nonempty")
    rows: List[Dict] = []
    word = tuple(stem)
    for k in range(k_max + 1):
        rows.append({"k": k, "length": len(word), "orbit_size": r_orbit_size(T, word, D)})
        word += tuple(loop)
    logger.debug("orbit growth along %s(%s)^k: %s", stem, loop, [r["orbit_size"] for r in rows])
    return pd.DataFrame(rows)
