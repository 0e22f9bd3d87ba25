"""
tests/test_nerode.py
Regular expressions over states, minimal DFAs, mirrors and suffix-closure.
"""

import itertools

import pytest

from models.nerode import (
    full_language,
    generated_language,
    is_suffix_closed,
    nerode,
    nerode_image,
    parse_dfa_text,
)
from utils.errors import InputError

QE = ("q", "e")


def all_words(alphabet, max_len):
    for k in range(max_len + 1):
        yield from itertools.product(alphabet, repeat=k)


def test_full_language_has_one_class():
    D = nerode("Q*", QE)
    assert D.n_classes == 1
    assert D.accepts(()) and D.accepts(tuple("qeq"))


def test_star_of_one_state():
    D = nerode("q*", QE)
    assert D.n_classes == 2
    assert D.accepts(tuple("qq"))
    assert not D.accepts(tuple("qe"))


def test_words_ending_in_q():
    D = nerode("(q|e)*q", QE)
    assert D.n_classes == 2
    assert not D.accepts(())
    assert D.accepts(tuple("eq"))


def test_epsilon_and_alternation():
    D = nerode("ε|qe", QE)
    assert D.accepts(())
    assert D.accepts(tuple("qe"))
    assert not D.accepts(("e",))


@pytest.mark.parametrize("text", ["(q|e", "q)", "x*", "|*"])
def test_malformed_expressions(text):
    with pytest.raises(InputError):
        nerode(text, QE)


def test_equal_languages_give_equal_dfas():
    assert nerode("(q|e)*", QE) == full_language(QE)
    assert nerode("q*", QE) == generated_language(QE, ["q"])


def test_mirror_reverses_the_language():
    D = nerode("qe*", QE)
    M = D.mirror
    for word in all_words(QE, 4):
        assert M.accepts(word) == D.accepts(tuple(reversed(word)))


# ── Suffix-closure ──────────────────────────────────────────────────────────────
def test_suffix_closure():
    assert is_suffix_closed(nerode("Q*", QE))
    assert is_suffix_closed(generated_language(QE, ["q"]))
    assert not is_suffix_closed(nerode("qq", QE))
    assert not is_suffix_closed(nerode("(q|e)*q", QE))


@pytest.mark.parametrize("text", ["q*", "qq", "e*q*", "(qe)*", "ε|q|eq", "(q|e)*q"])
def test_suffix_closure_agrees_with_enumeration(text):
    D = nerode(text, QE)
    expected = all(
        D.accepts(word[i:])
        for word in all_words(QE, 6)
        if D.accepts(word)
        for i in range(len(word) + 1)
    )
    assert is_suffix_closed(D) == expected


def test_empty_language_is_suffix_closed():
    D = parse_dfa_text("initial: c0\nc0 q -> c0\n", QE)
    assert is_suffix_closed(D)
    assert not D.accepts(())


# ── Explicit DFAs and images ────────────────────────────────────────────────────
def test_parse_dfa_text_minimizes():
    text = "initial: a\naccepting: a b\na q -> b\nb q -> a\n# e leads to the sink\n"
    D = parse_dfa_text(text, QE)
    assert D == nerode("q*", QE)


def test_parse_dfa_text_errors():
    with pytest.raises(InputError, match="initial"):
        parse_dfa_text("a q -> a\n", QE)
    with pytest.raises(InputError, match="line 2"):
        parse_dfa_text("initial: a\na x -> a\n", QE)


def test_nerode_image():
    D = nerode("qe", QE)
    image = nerode_image(D, {"q": "x", "e": "x"}, ("x", "y"))
    assert image.accepts(("x", "x"))
    assert not image.accepts(("x",))
    assert not image.accepts(("x", "y"))


def test_nerode_image_needs_every_letter():
    with pytest.raises(InputError):
        nerode_image(nerode("q*", QE), {"q": "x"}, ("x",))
