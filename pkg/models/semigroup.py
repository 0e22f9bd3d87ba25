"""
models/semigroup.py
Closed subsets, finite subsemigroup enumeration (breadth-first search in the
right Cayley graph), saturation of an automaton by the powers needed to give
every element of S⁺ its own state, free-product normal forms and ≈.
"""

import itertools
import logging
from collections import deque
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, Iterable, List, Mapping, Optional, Sequence, Tuple, Union

import numpy as np

from models.automaton import (
    SAutomaton,
    StateWord,
    action_signature,
    disjoint_renaming,
    join_names,
    minimize,
    reachable_power,
    union,
)
from utils.config import LIMITS
from utils.errors import InputError, PreconditionError

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class FiniteSemigroup:
    """
    A finite semigroup given by its Cayley table.

    Attributes:
        elements: One representative word over the generators per element
                  (shortest, then lexicographically least by generator index).
        table: table[i, j] is the element of the word elements[i] + elements[j].
        generator_map: Generator name -> element index.
    """

    elements: Tuple[StateWord, ...]
    table: np.ndarray
    generator_map: Mapping[str, int]

    @property
    def order(self) -> int:
        return len(self.elements)

    def multiply(self, i: int, j: int) -> int:
        return int(self.table[i, j])

    def element_of(self, word: Sequence[str]) -> int:
        """Element represented by a nonempty word over the generators."""
        if not word:
            raise InputError("the empty word is not a semigroup element")
        cur = self.generator_map[word[0]]
        for x in word[1:]:
            cur = int(self.table[cur, self.generator_map[x]])
        return cur

    def is_associative(self) -> bool:
        t = self.table
        # t[t][i, j, k] = (ij)k and t[:, t][i, j, k] = i(jk)
        return bool(np.array_equal(t[t], t[:, t]))

    @classmethod
    def from_table(cls, table: Sequence[Sequence[int]], generators: Mapping[str, int]) -> "FiniteSemigroup":
        """
        Build a semigroup from an explicit table; every element must be generated.

        Args:
            table: Square table of element indices.
            generators: Generator name -> element index.
        """
        t = np.asarray(table, dtype=np.int64)
        n = t.shape[0]
        if t.shape != (n, n) or n == 0 or t.min() < 0 or t.max() >= n:
            raise InputError("a Cayley table must be a nonempty square table of element indices")
        words: Dict[int, StateWord] = {}
        queue = deque()
        for g, i in generators.items():
            if i not in words:
                words[i] = (g,)
                queue.append(i)
        gens = sorted(generators.items(), key=lambda kv: kv[1])
        while queue:
            i = queue.popleft()
            for g, k in gens:
                j = int(t[i, k])
                if j not in words:
                    words[j] = words[i] + (g,)
                    queue.append(j)
        if len(words) != n:
            raise InputError("the generators do not generate every element of the table")
        return cls(tuple(words[i] for i in range(n)), t, dict(generators))


@dataclass(frozen=True)
class ExceedsCap:
    """The enumerated subsemigroup has more elements than `cap`."""

    cap: int


EnumerationResult = Union[FiniteSemigroup, ExceedsCap]


# ── Closed subsets ──────────────────────────────────────────────────────────────
def is_closed(T: SAutomaton, subset: Iterable[str]) -> bool:
    """True iff s·a stays in the subset for every member s and letter a."""
    chosen = set(subset)
    T.check_states(chosen)
    return all(T.delta[(s, a)][1] in chosen for s in chosen for a in T.alphabet)


def closure(T: SAutomaton, seed: Iterable[str]) -> Tuple[str, ...]:
    """Smallest closed subset containing `seed`, in declaration order."""
    found = set(seed)
    T.check_states(found)
    queue = deque(found)
    while queue:
        s = queue.popleft()
        for a in T.alphabet:
            q = T.delta[(s, a)][1]
            if q not in found:
                found.add(q)
                queue.append(q)
    return tuple(p for p in T.states if p in found)


def _ordered_subset(T: SAutomaton, subset: Iterable[str]) -> Tuple[str, ...]:
    chosen = set(subset)
    T.check_states(chosen)
    return tuple(p for p in T.states if p in chosen)


# ── Enumeration ─────────────────────────────────────────────────────────────────
def enumerate_subsemigroup(
    T: SAutomaton, subset: Iterable[str], cap: int = LIMITS["subsemigroup_cap"]
) -> EnumerationResult:
    """
    Enumerate the subsemigroup generated by `subset` by breadth-first search.

    Elements are identified by their action (via `action_signature`, which
    agrees with `equal_actions`); representatives are extended on the right.

    Args:
        T: The automaton.
        subset: Generating states.
        cap: Maximal number of elements to enumerate.

    Returns:
        The FiniteSemigroup, or ExceedsCap if more than `cap` elements exist.
    """
    if cap <= 0:
        raise InputError("the subsemigroup cap must be positive")
    gens = _ordered_subset(T, subset)
    if not gens:
        raise InputError("cannot enumerate the subsemigroup of an empty subset")

    index: Dict[Tuple, int] = {}
    elements: List[StateWord] = []
    generator_map: Dict[str, int] = {}

    def _add(word: StateWord) -> Optional[int]:
        sig = action_signature(T, word)
        if sig in index:
            return index[sig]
        if len(elements) >= cap:
            return None
        index[sig] = len(elements)
        elements.append(word)
        return index[sig]

    for g in gens:
        i = _add((g,))
        if i is None:
            return ExceedsCap(cap)
        generator_map[g] = i

    right: List[List[int]] = []
    i = 0
    while i < len(elements):
        row = []
        for g in gens:
            j = _add(elements[i] + (g,))
            if j is None:
                logger.info("subsemigroup of %s exceeds %d elements", gens, cap)
                return ExceedsCap(cap)
            row.append(j)
        right.append(row)
        i += 1

    position = {g: k for k, g in enumerate(gens)}
    n = len(elements)
    table = np.empty((n, n), dtype=np.int64)
    for i in range(n):
        for j, word in enumerate(elements):
            cur = i
            for x in word:
                cur = right[cur][position[x]]
            table[i, j] = cur
    return FiniteSemigroup(tuple(elements), table, generator_map)


# ── Saturation ──────────────────────────────────────────────────────────────────
@dataclass(frozen=True, eq=False)
class SaturatedAutomaton:
    """
    An automaton in which every element of S⁺ acts like exactly one state.

    Attributes:
        automaton: The minimized union of T with the needed power states.
        s_states: s_states[i] is the state acting like semigroup element i.
        origin_map: Original state -> state of `automaton` with the same action.
        semigroup: The enumerated S⁺/=_T (generators are original state names).
        s_signatures: Action signatures of the s_states (for exact membership tests).
    """

    automaton: SAutomaton
    s_states: Tuple[str, ...]
    origin_map: Mapping[str, str]
    semigroup: FiniteSemigroup
    s_signatures: FrozenSet[Tuple] = field(default_factory=frozenset)

    @property
    def state_element(self) -> Dict[str, int]:
        return {s: i for i, s in enumerate(self.s_states)}

    @property
    def p_states(self) -> Tuple[str, ...]:
        chosen = set(self.s_states)
        return tuple(p for p in self.automaton.states if p not in chosen)

    def product_state(self, s: str, t: str) -> str:
        """The s_state acting like the word s t."""
        elem = self.state_element
        return self.s_states[int(self.semigroup.table[elem[s], elem[t]])]


def saturate(
    T: SAutomaton, subset: Iterable[str], cap: int = LIMITS["subsemigroup_cap"]
) -> SaturatedAutomaton:
    """
    Add power states for every element of S⁺/=_T and minimize.

    Raises:
        PreconditionError: the subset is not closed or generates more than `cap` elements.
    """
    chosen = _ordered_subset(T, subset)
    if not chosen:
        raise PreconditionError("closed subset", "S must not be empty")
    if not is_closed(T, chosen):
        raise PreconditionError("closed subset", f"{{{','.join(chosen)}}} is not closed under the dual action")
    sg = enumerate_subsemigroup(T, chosen, cap)
    if isinstance(sg, ExceedsCap):
        raise PreconditionError("finite subsemigroup", f"S generates more than {cap} elements")

    longer = [rep for rep in sg.elements if len(rep) > 1]
    names = {rep: rep[0] for rep in sg.elements if len(rep) == 1}
    merged = T
    if longer:
        powers = reachable_power(T, longer)
        renaming = disjoint_renaming(T, powers)
        merged = union(T, powers)
        names.update({rep: renaming[join_names(rep)] for rep in longer})

    M, image = minimize(merged)
    s_states = tuple(image[names[rep]] for rep in sg.elements)
    if len(set(s_states)) != len(s_states):
        raise RuntimeError("distinct semigroup elements were merged by minimization")

    logger.info(
        "saturated %d states with |S+| = %d into %d states",
        len(T.states), sg.order, len(M.states),
    )
    return SaturatedAutomaton(
        automaton=M,
        s_states=s_states,
        origin_map={p: image[p] for p in T.states},
        semigroup=sg,
        s_signatures=frozenset(action_signature(M, (s,)) for s in s_states),
    )


# ── Free-product normal forms ───────────────────────────────────────────────────
def _block_state(SA: SaturatedAutomaton, block: Sequence[str], elem: Mapping[str, int]) -> str:
    table = SA.semigroup.table
    cur = elem[block[0]]
    for x in block[1:]:
        cur = int(table[cur, elem[x]])
    return SA.s_states[cur]


def normal_form(SA: SaturatedAutomaton, p: Sequence[str]) -> StateWord:
    """Replace every maximal block of s_states letters by its single representative."""
    SA.automaton.check_states(p)
    elem = SA.state_element
    out: List[str] = []
    block: List[str] = []
    for x in p:
        if x in elem:
            block.append(x)
            continue
        if block:
            out.append(_block_state(SA, block, elem))
            block = []
        out.append(x)
    if block:
        out.append(_block_state(SA, block, elem))
    return tuple(out)


def approx_equiv(SA: SaturatedAutomaton, p: Sequence[str], q: Sequence[str]) -> bool:
    return normal_form(SA, p) == normal_form(SA, q)


def in_s_plus(SA: SaturatedAutomaton, p: Sequence[str]) -> bool:
    """
    Decide p ∈_T S⁺ for a nonempty state word.

    Words made of s_states are in S⁺ by saturation and single P-states are not;
    mixed words are compared by action signature.
    """
    if not p:
        raise InputError("membership in S+ is defined for nonempty words only")
    elem = SA.state_element
    if all(x in elem for x in p):
        return True
    if len(p) == 1:
        return False
    return action_signature(SA.automaton, p) in SA.s_signatures


# ── Discovery ───────────────────────────────────────────────────────────────────
def discover_closed_subsets(
    T: SAutomaton,
    cap: int = LIMITS["subsemigroup_cap"],
    seed_limit: int = LIMITS["closed_subset_seed_limit"],
) -> List[Tuple[Tuple[str, ...], EnumerationResult]]:
    """
    All closed subsets obtained as closures of seeds, with their subsemigroups.

    Every nonempty seed is tried when |Q| <= seed_limit, otherwise only singletons.
    Results are sorted by size, then by declaration order.
    """
    n = len(T.states)
    if n <= seed_limit:
        seeds = (
            [T.states[i] for i in range(n) if mask >> i & 1] for mask in range(1, 2 ** n)
        )
    else:
        logger.warning("%d states: only singleton-seeded closures are enumerated", n)
        seeds = ([p] for p in T.states)

    found = set()
    for seed in seeds:
        found.add(closure(T, seed))
    position = {p: i for i, p in enumerate(T.states)}
    ordered = sorted(found, key=lambda sub: (len(sub), [position[p] for p in sub]))
    return [(sub, enumerate_subsemigroup(T, sub, cap)) for sub in ordered]


def iso_finite_semigroups(A: FiniteSemigroup, B: FiniteSemigroup) -> bool:
    """
    Test whether a table-preserving bijection A -> B exists.

    Searches over injective images of A's generators; each assignment extends
    to a unique homomorphism candidate through the representative words.
    """
    n = A.order
    if n != B.order:
        return False
    gens = sorted(set(A.generator_map.values()))
    words = [[A.generator_map[x] for x in word] for word in A.elements]

    for images in itertools.permutations(range(n), len(gens)):
        assign = dict(zip(gens, images))
        img = []
        for word in words:
            cur = assign[word[0]]
            for g in word[1:]:
                cur = int(B.table[cur, assign[g]])
            img.append(cur)
        if len(set(img)) != n:
            continue
        mapped = np.asarray(img)
        if np.array_equal(mapped[A.table], B.table[np.ix_(mapped, mapped)]):
            return True
    return False


def find_closed_subset_generating(
    T: SAutomaton, target: FiniteSemigroup, seed_limit: int = LIMITS["closed_subset_seed_limit"]
) -> List[Tuple[str, ...]]:
    """Closed subsets whose generated subsemigroup is isomorphic to `target`."""
    hits = []
    for sub, result in discover_closed_subsets(T, cap=target.order, seed_limit=seed_limit):
        if isinstance(result, FiniteSemigroup) and iso_finite_semigroups(result, target):
            hits.append(sub)
    return hits
