"""
tests/test_corpus.py
Bundled automata and the random generator.
"""

import pytest

from data.corpus import (
    BUNDLED,
    bundled_instance,
    bundled_names,
    generate_random_automata,
    generate_random_automaton,
    random_corpus,
    random_instance,
)
from models.semigroup import ExceedsCap, enumerate_subsemigroup, is_closed


@pytest.mark.parametrize("name", bundled_names())
def test_bundled_subsets_are_closed(name):
    T, subset = bundled_instance(name)
    assert subset == BUNDLED[name]["S"]
    assert is_closed(T, subset)


def test_unknown_bundled_name():
    with pytest.raises(KeyError):
        bundled_instance("nope")


def test_random_automaton_is_reproducible():
    T = generate_random_automaton(3, 2, seed=7)
    assert T == generate_random_automaton(3, 2, seed=7)
    assert T.states == ("q0", "q1", "q2")
    assert T.alphabet == ("0", "1")
    assert len(T.delta) == 6


def test_random_automata():
    batch = generate_random_automata(5, seed=1)
    assert len(batch) == 5
    assert all(len(T.states) in (2, 3) and T.alphabet == ("0", "1") for T in batch)


def test_sink_order_matches_enumeration():
    T, _ = bundled_instance("sink")
    result = enumerate_subsemigroup(T, T.states, 100)
    assert not isinstance(result, ExceedsCap)
    assert result.order == BUNDLED["sink"]["order"] == 6


def test_random_corpus_is_seeded():
    corpus = random_corpus()
    assert len(corpus) == 5
    assert corpus == random_corpus()
    assert all(T.alphabet == ("0", "1") for T in corpus.values())


@pytest.mark.parametrize("name", list(random_corpus()))
def test_random_instances_carry_a_closed_subset(name):
    T, subset = random_instance(name)
    if subset is not None:
        assert is_closed(T, subset)
        assert not isinstance(enumerate_subsemigroup(T, subset, 200), ExceedsCap)


def test_unknown_random_name():
    with pytest.raises(KeyError):
        random_instance("random_0")
