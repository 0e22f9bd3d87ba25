"""
tests/test_orbits.py
Orbital transducers, the product with R, orbit sizes and expanders.
"""

import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from data.corpus import generate_random_automaton
from models.automaton import act, dual_act
from models.nerode import full_language, nerode
from models.orbits import (
    expands,
    find_expander,
    orbit_growth,
    orbital_transducer,
    product_with_R,
    r_orbit_bruteforce,
    r_orbit_size,
)
from utils.errors import InputError


def test_orbital_transducer_of_adding_machine(adding_machine):
    O = orbital_transducer(adding_machine, tuple("00"))
    assert set(O.words) == {tuple("00"), tuple("10"), tuple("01"), tuple("11")}
    assert O.root == tuple("00")
    assert O.step(tuple("00"), "q") == ("e", tuple("10"))


def test_orbital_transducer_of_empty_word(adding_machine):
    O = orbital_transducer(adding_machine, ())
    assert O.words == ((),)
    for p in adding_machine.states:
        assert O.step((), p) == (p, ())


def test_combined_orbit(combined):
    O = orbital_transducer(combined, ("a",))
    assert set(O.words) == {("a",), ("⊥",)}


def test_transitions_follow_both_actions(combined):
    w = tuple("0a1")
    O = orbital_transducer(combined, w)
    for u in O.words:
        for p in combined.states:
            q, v = O.step(u, p)
            assert v == act(combined, (p,), u)
            assert (q,) == dual_act(combined, (p,), u)


# ── Product with R ──────────────────────────────────────────────────────────────
def test_product_with_full_language(adding_machine):
    O = orbital_transducer(adding_machine, tuple("00"))
    P = product_with_R(O, full_language(adding_machine.states))
    assert len(P.states) == len(O.words)
    assert P.orbit() == set(O.words)
    assert P.root == (O.root, 0)


def test_product_with_q_star(adding_machine):
    D = nerode("q*", adding_machine.states)
    P = product_with_R(orbital_transducer(adding_machine, ("0",)), D)
    assert P.root in P.states
    assert len(P.states) <= 2 * D.n_classes
    assert P.orbit() == {("0",), ("1",)}


def test_product_needs_matching_alphabet(adding_machine):
    with pytest.raises(InputError):
        product_with_R(orbital_transducer(adding_machine, ("0",)), full_language(("x",)))


# ── Orbit sizes ─────────────────────────────────────────────────────────────────
def test_r_orbit_sizes(adding_machine):
    Q = full_language(adding_machine.states)
    assert r_orbit_size(adding_machine, tuple("00"), Q) == 4
    assert r_orbit_size(adding_machine, (), Q) == 1
    assert r_orbit_size(adding_machine, ("0",), nerode("ε", adding_machine.states)) == 1


def test_orbit_of_suffix_restricted_language(adding_machine):
    # e acts first and trivially
    D = nerode("(q|e)*e", adding_machine.states)
    assert r_orbit_size(adding_machine, tuple("00"), D) == 4
    D = nerode("eq*", adding_machine.states)
    assert r_orbit_size(adding_machine, tuple("00"), D) == 4


@settings(max_examples=200, deadline=None)
@given(
    seed=st.integers(0, 2 ** 31 - 1),
    w=st.lists(st.sampled_from(["0", "1"]), max_size=3),
    regex=st.sampled_from(["Q*", "q0*", "(q0|q1)*q1", "q1q0*", "ε|q0"]),
)
def test_orbit_size_agrees_with_brute_force(seed, w, regex):
    T = generate_random_automaton(2, 2, seed)
    D = nerode(regex, T.states)
    P = product_with_R(orbital_transducer(T, w), D)
    # every product state is reached by a word no longer than the state count
    depth = len(P.states) - 1
    brute = r_orbit_bruteforce(T, w, D, min(depth, 10))
    assert brute <= P.orbit()
    if depth <= 10:
        assert brute == P.orbit()


# ── Expanders ───────────────────────────────────────────────────────────────────
def test_expands(adding_machine, identity):
    Q = full_language(adding_machine.states)
    assert expands(adding_machine, ("0",), ("0",), Q)
    assert not expands(adding_machine, ("0",), (), Q)
    assert not expands(identity, tuple("01"), ("1",), full_language(identity.states))


def test_find_expander(adding_machine, identity):
    Q = full_language(adding_machine.states)
    assert find_expander(adding_machine, ("0",), Q, 2) == ("0",)
    assert find_expander(adding_machine, (), Q, 1) in {("0",), ("1",)}
    assert find_expander(identity, tuple("01"), full_language(identity.states), 5) is None


def test_orbit_growth_doubles(adding_machine):
    df = orbit_growth(adding_machine, (), ("0",), full_language(adding_machine.states), 4)
    assert df["orbit_size"].tolist() == [1, 2, 4, 8, 16]
    assert df["length"].tolist() == [0, 1, 2, 3, 4]


def test_orbit_growth_needs_loop(adding_machine):
    with pytest.raises(InputError):
        orbit_growth(adding_machine, ("0",), (), full_language(adding_machine.states), 2)


def test_bruteforce_reaches_full_orbit(adding_machine):
    Q = full_language(adding_machine.states)
    words = set(itertools.product("01", repeat=3))
    assert r_orbit_bruteforce(adding_machine, tuple("000"), Q, 7) == words
