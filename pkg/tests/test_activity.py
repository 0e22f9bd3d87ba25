"""
tests/test_activity.py
Active-word acceptors, growth classification and the brute-force count.
"""

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from data.corpus import bundled_instance, bundled_names, generate_random_automaton
from models.activity import (
    WordNFA,
    active_counts,
    active_word_acceptor,
    active_words_bruteforce,
    activity_profile,
    automaton_active_acceptor,
    count_active,
    growth_class,
    is_bounded_activity,
)
from models.automaton import act
from models.semigroup import ExceedsCap, discover_closed_subsets, saturate
from utils.errors import InputError, ResourceLimitError


def nfa(transitions, initial, accepting, alphabet=("0", "1")):
    states = sorted({y for y, _, _ in transitions} | {z for _, _, z in transitions} | set(initial))
    return WordNFA(tuple(states), alphabet, frozenset(transitions), frozenset(initial), frozenset(accepting))


# ── Growth classification ───────────────────────────────────────────────────────
def test_single_loop_is_bounded():
    report = growth_class(nfa({(0, "0", 0)}, {0}, {0}))
    assert (report.klass, report.degree, report.bounded, report.sup_count) == ("polynomial", 0, True, 1)


def test_full_binary_language_is_exponential():
    report = growth_class(nfa({(0, "0", 0), (0, "1", 0)}, {0}, {0}))
    assert report.klass == "exponential"
    assert not report.bounded


def test_finite_language():
    # {0, 1, 01}
    N = nfa({(0, "0", 1), (0, "1", 2), (1, "1", 2)}, {0}, {1, 2})
    report = growth_class(N)
    assert report.klass == "finite"
    assert report.sup_count == 2
    assert active_counts(N, 4) == [0, 2, 1, 0, 0]


def test_two_chained_loops_grow_linearly():
    # 0*1*
    N = nfa({(0, "0", 0), (0, "1", 1), (1, "1", 1)}, {0}, {0, 1})
    report = growth_class(N)
    assert (report.klass, report.degree, report.bounded) == ("polynomial", 1, False)
    assert active_counts(N, 4) == [1, 2, 3, 4, 5]


def test_nfa_and_its_dfa_classify_alike():
    # nondeterministic acceptor of (0|1)*1 and a deterministic one
    N = nfa({(0, "0", 0), (0, "1", 0), (0, "1", 1)}, {0}, {1})
    D = nfa({(0, "0", 0), (0, "1", 1), (1, "1", 1), (1, "0", 0)}, {0}, {1})
    assert growth_class(N) == growth_class(D)


def test_word_nfa_rejects_unknown_letters():
    with pytest.raises(InputError):
        WordNFA((0,), ("0",), frozenset({(0, "1", 0)}), frozenset({0}), frozenset({0}))


def test_report_serialization():
    report = growth_class(nfa({(0, "0", 0)}, {0}, {0}))
    assert report.to_dict() == {"class": "polynomial", "degree": 0, "bounded": True, "sup": 1}


# ── Acceptors of active words ───────────────────────────────────────────────────
def test_adding_machine_active_words(adding_sa):
    N = active_word_acceptor(adding_sa, ("q",))
    for n in range(9):
        assert active_words_bruteforce(adding_sa, n) == {("0",) * n}
        assert N.accepts(("0",) * n)
        assert not N.accepts(("0",) * n + ("1",))


def test_identity_state_has_no_active_words(adding_sa, combined_sa):
    assert active_counts(active_word_acceptor(adding_sa, ("e",)), 6) == [0] * 7
    assert active_counts(active_word_acceptor(combined_sa, ("z",)), 6) == [0] * 7


def test_automaton_acceptor_languages(adding_sa, combined_sa):
    assert active_counts(automaton_active_acceptor(adding_sa), 8) == [1] * 9
    assert active_counts(automaton_active_acceptor(combined_sa), 8) == [1] * 9


def test_full_subset_has_no_active_words(u1):
    SA = saturate(u1, u1.states)
    assert active_counts(automaton_active_acceptor(SA), 5) == [0] * 6
    assert count_active(SA, 3) == 0


def test_count_active(adding_sa):
    assert count_active(adding_sa, 3) == 1
    assert count_active(adding_sa, 0) == 1
    with pytest.raises(ResourceLimitError):
        count_active(adding_sa, 11)


def test_bounded_activity(adding_sa, combined_sa, combined):
    assert is_bounded_activity(adding_sa)
    assert is_bounded_activity(combined_sa)
    assert not is_bounded_activity(saturate(combined, ["e"]))
    assert not is_bounded_activity(saturate(combined, ["z"]))


def test_activity_profile(adding_sa):
    df = activity_profile(adding_sa, 5)
    assert list(df.columns) == ["n", "acceptor", "brute_force"]
    assert (df["acceptor"] == df["brute_force"]).all()


@pytest.mark.parametrize("name", bundled_names())
def test_acceptor_matches_brute_force_on_bundled(name):
    T, subset = bundled_instance(name)
    SA = saturate(T, subset)
    counts = active_counts(automaton_active_acceptor(SA), 8)
    assert counts == [count_active(SA, n) for n in range(9)]
    report = growth_class(automaton_active_acceptor(SA))
    if report.bounded:
        assert all(c <= report.sup_count for c in counts)


@settings(max_examples=200, deadline=None)
@given(seed=st.integers(0, 2 ** 31 - 1))
def test_acceptor_matches_brute_force_on_random(seed):
    T = generate_random_automaton(2, 2, seed)
    for subset, result in discover_closed_subsets(T, cap=20):
        if isinstance(result, ExceedsCap):
            continue
        SA = saturate(T, subset, cap=20)
        N = automaton_active_acceptor(SA)
        assert active_counts(N, 6) == [count_active(SA, n) for n in range(7)]


@settings(max_examples=200, deadline=None)
@given(
    seed=st.integers(0, 2 ** 31 - 1),
    p=st.lists(st.integers(0, 1), min_size=1, max_size=2),
    q=st.lists(st.integers(0, 1), min_size=1, max_size=2),
    n=st.integers(0, 6),
)
def test_activity_is_subadditive(seed, p, q, n):
    T = generate_random_automaton(2, 2, seed)
    closed = [s for s, r in discover_closed_subsets(T, cap=20) if not isinstance(r, ExceedsCap)]
    if not closed:
        return
    SA = saturate(T, closed[0], cap=20)
    M = SA.automaton
    p = tuple(M.states[i % len(M.states)] for i in p)
    q = tuple(M.states[i % len(M.states)] for i in q)

    def alpha(word):
        return active_counts(active_word_acceptor(SA, word), n)[n]

    assert alpha(q + p) <= alpha(q) + alpha(p)


def test_active_words_are_outputs(adding_sa):
    for u in active_words_bruteforce(adding_sa, 4):
        assert u == act(adding_sa.automaton, ("q",), ("1",) * 4)
