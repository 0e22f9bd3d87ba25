"""
tests/test_expansion.py
The expansion acceptor A_w against the brute-force relation, and canonical labeling.
"""

import itertools

import pytest

from data.corpus import bundled_instance, bundled_names
from models.activity import is_bounded_activity
from models.expansion import (
    NFRA,
    ExpansionState,
    active_words_of_length,
    build_nfra,
    expansion_acceptor,
    expansion_relation_bruteforce,
    nfra_accepts,
    nfra_canonical,
)
from models.nerode import full_language, nerode
from models.semigroup import saturate
from utils.errors import PreconditionError, ResourceLimitError


def state_words(states, max_len):
    for k in range(1, max_len + 1):
        yield from itertools.product(states, repeat=k)


def accepted_pairs(A, states, max_len):
    words = list(state_words(states, max_len))
    return {(p, q) for p in words for q in words if nfra_accepts(A, p, q)}


# ── Active words ────────────────────────────────────────────────────────────────
def test_active_words_of_length(adding_sa, u1):
    assert active_words_of_length(adding_sa, 3) == {tuple("000")}
    assert active_words_of_length(adding_sa, 0) == {()}
    assert active_words_of_length(saturate(u1, u1.states), 2) == set()


# ── Brute-force relation ────────────────────────────────────────────────────────
def test_bruteforce_relation_of_adding_machine(adding_sa):
    E = expansion_relation_bruteforce(adding_sa, ("0",), full_language(adding_sa.automaton.states), 3)
    assert (("e",), ("e",)) in E
    assert (("e",), tuple("eqe")) in E
    assert all((q, p) in E for p, q in E)


def test_bruteforce_length_is_capped(adding_sa):
    with pytest.raises(ResourceLimitError):
        expansion_relation_bruteforce(adding_sa, ("0",), full_language(adding_sa.automaton.states), 11)


# ── The acceptor ────────────────────────────────────────────────────────────────
def test_witness_of_initial_state(adding_sa):
    A, W = build_nfra(adding_sa, ("0",), full_language(adding_sa.automaton.states))
    assert A.initial == ExpansionState(("0",), None, 0, 0)
    assert W[A.initial] == frozenset([("0",)])


def test_adding_machine_acceptor(adding_sa):
    A, _ = build_nfra(adding_sa, ("0",), full_language(adding_sa.automaton.states))
    assert nfra_accepts(A, ("e",), tuple("eqe"))
    assert not nfra_accepts(A, ("q",), ("e",))
    assert not nfra_accepts(A, (), ("e",))


def test_unrealizable_states_have_no_acceptance(adding_sa):
    D = nerode("q*", adding_sa.automaton.states)
    A, W = build_nfra(adding_sa, ("0",), D)
    empty = {z for z, words in W.items() if not words}
    assert empty
    assert not any(y in empty or z in empty for y, z in A.acceptance)


def test_activity_bound_is_enforced(adding_sa):
    Q = full_language(adding_sa.automaton.states)
    with pytest.raises(PreconditionError, match="bounded activity"):
        expansion_acceptor(adding_sa, tuple("01"), Q, activity_bound=-1)
    # "1" and the active word "0" are two orbit words
    with pytest.raises(PreconditionError, match="activity bound 0"):
        expansion_acceptor(adding_sa, ("1",), Q, activity_bound=0)
    assert expansion_acceptor(adding_sa, ("1",), Q, activity_bound=1)[0].states


def test_acceptance_is_reflexive_on_realized_words(adding_sa):
    states = adding_sa.automaton.states
    D = full_language(states)
    A, _ = build_nfra(adding_sa, tuple("01"), D)
    E = expansion_relation_bruteforce(adding_sa, tuple("01"), D, 3)
    for p, _ in E:
        assert nfra_accepts(A, p, p)


@pytest.mark.parametrize("w", [(), ("0",), ("1",), tuple("00"), tuple("01"), tuple("110")])
def test_acceptor_matches_bruteforce_on_adding_machine(adding_sa, w):
    states = adding_sa.automaton.states
    D = full_language(states)
    A, _ = build_nfra(adding_sa, w, D)
    assert accepted_pairs(A, states, 3) == expansion_relation_bruteforce(adding_sa, w, D, 3)


@pytest.mark.parametrize("w", [("0",), ("a",), tuple("1⊥"), tuple("a0a")])
def test_acceptor_matches_bruteforce_on_combined(combined_sa, w):
    states = combined_sa.automaton.states
    D = full_language(states)
    A, _ = build_nfra(combined_sa, w, D)
    assert accepted_pairs(A, states, 3) == expansion_relation_bruteforce(combined_sa, w, D, 3)


@pytest.mark.parametrize("regex", ["q*", "(q|e)*e", "eq*"])
def test_acceptor_matches_bruteforce_under_restricted_R(adding_sa, regex):
    states = adding_sa.automaton.states
    D = nerode(regex, states)
    for w in [("0",), tuple("10")]:
        A, _ = build_nfra(adding_sa, w, D)
        assert accepted_pairs(A, states, 3) == expansion_relation_bruteforce(adding_sa, w, D, 3)


# ── Canonical labeling ──────────────────────────────────────────────────────────
def _renamed(A: NFRA) -> NFRA:
    name = {z: f"s{i}" for i, z in enumerate(reversed(A.states))}
    return NFRA(
        states=tuple(name[z] for z in reversed(A.states)),
        alphabet=A.alphabet,
        transitions=frozenset((name[y], a, name[z]) for y, a, z in A.transitions),
        initial=name[A.initial],
        acceptance=frozenset((name[y], name[z]) for y, z in A.acceptance),
    )


def test_canonical_form_ignores_state_names(adding_sa, combined_sa):
    for SA, w in [(adding_sa, tuple("01")), (combined_sa, ("a",))]:
        A, _ = build_nfra(SA, w, full_language(SA.automaton.states))
        assert nfra_canonical(A) == nfra_canonical(_renamed(A))


def test_canonical_form_sees_acceptance():
    loop = frozenset({("x", "q", "x")})
    with_f = NFRA(("x",), ("q",), loop, "x", frozenset({("x", "x")}))
    without_f = NFRA(("x",), ("q",), loop, "x", frozenset())
    assert nfra_canonical(with_f) != nfra_canonical(without_f)


def test_equal_canonical_forms_accept_equal_relations(adding_sa):
    states = adding_sa.automaton.states
    D = full_language(states)
    words = [w for k in range(5) for w in itertools.product("01", repeat=k)]
    forms = {w: nfra_canonical(build_nfra(adding_sa, w, D)[0]) for w in words}
    for w, v in itertools.combinations(words, 2):
        if forms[w] == forms[v] and len(w) <= 3 and len(v) <= 3:
            assert expansion_relation_bruteforce(adding_sa, w, D, 3) == expansion_relation_bruteforce(
                adding_sa, v, D, 3
            )


@pytest.mark.parametrize("name", bundled_names())
def test_acceptor_matches_bruteforce_on_bundled(name):
    T, subset = bundled_instance(name)
    SA = saturate(T, subset)
    if not is_bounded_activity(SA):
        pytest.skip("unbounded activity")
    states = SA.automaton.states
    for D in (full_language(states), nerode(f"{states[0]}*", states)):
        for w in itertools.chain.from_iterable(itertools.product(T.alphabet, repeat=k) for k in range(3)):
            A, _ = build_nfra(SA, w, D)
            assert accepted_pairs(A, states, 3) == expansion_relation_bruteforce(SA, w, D, 3)
