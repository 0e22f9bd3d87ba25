"""
utils/decision.py
Finiteness decisions built on the orbit Büchi acceptor.

Provides:
- decide_r_finiteness()              → is the image of R in S(T) finite?
- decide_finiteness()                → is S(T) finite?
- decide_subsemigroup_finiteness()   → is the subsemigroup generated by some state words finite?
- dual_torsion_checks()              → torsion questions for the dual semigroup
"""

import logging
from dataclasses import dataclass
from typing import Iterable, List, Optional, Sequence, Tuple

from models.activity import automaton_active_acceptor, growth_class
from models.automaton import LetterWord, SAutomaton, StateWord, disjoint_renaming, join_names, reachable_power, union
from models.buchi import (
    BuchiAcceptor,
    UltimatelyPeriodicWord,
    build_orbit_buchi,
    buchi_nonempty,
    complement_det_buchi,
    periodic_word_in_buchi,
)
from models.nerode import NerodeDFA, full_language, generated_language, is_suffix_closed
from models.semigroup import ExceedsCap, SaturatedAutomaton, enumerate_subsemigroup, saturate
from utils.config import LIMITS
from utils.errors import InputError, PreconditionError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Verdict:
    """
    Outcome of a finiteness decision.

    Attributes:
        finite: True iff the decided set is finite.
        witness: An ultimately periodic word with an infinite orbit (infinite verdicts).
        order: Number of elements, when the set is a finite (sub)semigroup and
               its Cayley enumeration stays under the cap.
        buchi_states: Size of the orbit acceptor that was searched.
    """

    finite: bool
    witness: Optional[UltimatelyPeriodicWord] = None
    order: Optional[int] = None
    buchi_states: int = 0

    @property
    def label(self) -> str:
        return "finite" if self.finite else "infinite"


@dataclass(frozen=True)
class TorsionReport:
    has_torsion_element: bool
    has_element_without_torsion: bool
    torsion_free: bool
    torsion_witness: Optional[LetterWord] = None
    without_torsion_witness: Optional[LetterWord] = None


def check_preconditions(SA: SaturatedAutomaton, D: NerodeDFA, require_suffix_closed: bool = True) -> int:
    """
    Verify the hypotheses of the finiteness reduction.

    Closedness of S and finiteness of S⁺ were checked when SA was saturated.

    Returns:
        The activity bound sup_n |A(n)|.
    """
    if require_suffix_closed and not is_suffix_closed(D):
        raise PreconditionError("suffix-closed R", "some suffix of a word of R is not in R")
    report = growth_class(automaton_active_acceptor(SA))
    if not report.bounded:
        raise PreconditionError("bounded activity", f"the S-activity grows {report.klass}ly")
    return report.sup_count


def orbit_acceptor(
    SA: SaturatedAutomaton,
    D: NerodeDFA,
    n_jobs: int = LIMITS["n_jobs"],
    state_limit: int = LIMITS["buchi_state_limit"],
) -> BuchiAcceptor:
    """The orbit acceptor after the precondition checks (suffix-closure not required)."""
    check_preconditions(SA, D, require_suffix_closed=False)
    return build_orbit_buchi(SA, D, n_jobs=n_jobs, state_limit=state_limit)


def decide_r_finiteness(
    SA: SaturatedAutomaton,
    D: NerodeDFA,
    n_jobs: int = LIMITS["n_jobs"],
    state_limit: int = LIMITS["buchi_state_limit"],
) -> Verdict:
    """
    Decide whether the image of R in S(T) is finite.

    R is finite in S(T) iff no ω-word has an infinite R-orbit, i.e. iff the
    orbit acceptor accepts nothing.

    Args:
        SA: Saturated automaton.
        D: Minimal DFA of R over the states of SA.automaton.
        n_jobs: Worker count for the acceptor construction.
        state_limit: Largest orbit acceptor built before giving up.
    """
    check_preconditions(SA, D)
    B = build_orbit_buchi(SA, D, n_jobs=n_jobs, state_limit=state_limit)
    witness = buchi_nonempty(B)
    verdict = Verdict(finite=witness is None, witness=witness, buchi_states=len(B.states))
    logger.info("verdict %s with an orbit acceptor of %d states", verdict.label, len(B.states))
    return verdict


def _order(T: SAutomaton, generators: Sequence[str], cap: int) -> Optional[int]:
    result = enumerate_subsemigroup(T, generators, cap)
    if isinstance(result, ExceedsCap):
        logger.warning("finite verdict but more than %d elements; order not reported", cap)
        return None
    return result.order


def decide_finiteness(
    SA: SaturatedAutomaton,
    cap: int = LIMITS["subsemigroup_cap"],
    n_jobs: int = LIMITS["n_jobs"],
    state_limit: int = LIMITS["buchi_state_limit"],
) -> Verdict:
    """Decide whether S(T) is finite (R = Q*); finite verdicts carry the order."""
    states = SA.automaton.states
    verdict = decide_r_finiteness(SA, full_language(states), n_jobs=n_jobs, state_limit=state_limit)
    if not verdict.finite:
        return verdict
    return Verdict(True, None, _order(SA.automaton, states, cap), verdict.buchi_states)


def lift_generators(T: SAutomaton, gens: Sequence[Sequence[str]]) -> Tuple[SAutomaton, List[str]]:
    """
    Give every generator word its own state.

    Returns:
        Tuple of (automaton containing T and the needed power states,
        name of the state acting like each generator).
    """
    if not gens:
        raise InputError("at least one generator is needed")
    words: List[StateWord] = []
    for g in gens:
        if not g:
            raise InputError("generators must be nonempty state words")
        T.check_states(g)
        words.append(tuple(g))
    longer = [g for g in words if len(g) > 1]
    if not longer:
        return T, [g[0] for g in words]
    powers = reachable_power(T, longer)
    renaming = disjoint_renaming(T, powers)
    names = [g[0] if len(g) == 1 else renaming[join_names(g)] for g in words]
    return union(T, powers), names


def decide_subsemigroup_finiteness(
    T: SAutomaton,
    subset: Iterable[str],
    gens: Sequence[Sequence[str]],
    cap: int = LIMITS["subsemigroup_cap"],
    n_jobs: int = LIMITS["n_jobs"],
    state_limit: int = LIMITS["buchi_state_limit"],
) -> Verdict:
    """
    Decide whether the subsemigroup generated by the state words `gens` is finite.

    Every generator word is lifted to a single state, the lifted automaton is
    saturated again and R = (lifted generators)*, which is suffix-closed.
    """
    lifted, names = lift_generators(T, gens)
    SA = saturate(lifted, subset, cap)
    generators: List[str] = []
    for name in names:
        state = SA.origin_map[name]
        if state not in generators:
            generators.append(state)
    D = generated_language(SA.automaton.states, generators)
    verdict = decide_r_finiteness(SA, D, n_jobs=n_jobs, state_limit=state_limit)
    if not verdict.finite:
        return verdict
    return Verdict(True, None, _order(SA.automaton, generators, cap), verdict.buchi_states)


def dual_torsion_checks(
    SA: SaturatedAutomaton, n_jobs: int = LIMITS["n_jobs"], state_limit: int = LIMITS["buchi_state_limit"]
) -> TorsionReport:
    """
    Torsion in the semigroup of the dual automaton.

    u^ω has an infinite orbit iff the letter word u has no torsion as an element
    of S(∂T); both questions become periodic-word searches in the orbit
    acceptor and in its complement. A semigroup is read as torsion-free when it
    has no element of finite order.
    """
    D = full_language(SA.automaton.states)
    B = orbit_acceptor(SA, D, n_jobs=n_jobs, state_limit=state_limit)
    without = periodic_word_in_buchi(B)
    torsion = periodic_word_in_buchi(complement_det_buchi(B))
    return TorsionReport(
        has_torsion_element=torsion is not None,
        has_element_without_torsion=without is not None,
        torsion_free=torsion is None,
        torsion_witness=torsion,
        without_torsion_witness=without,
    )

