"""
tests/test_textformat.py
Automaton files, subsets, words and problem instances.
"""

import pytest

from data.corpus import bundled_path, load_bundled
from utils.errors import InputError
from utils.textformat import (
    parse_automaton,
    parse_instance,
    parse_subset,
    parse_word,
    parse_word_list,
    resolve_r,
    serialize_automaton,
)

HEADER = "alphabet: 0 1\nstates: q e\n"


def test_bundled_files_parse():
    T = load_bundled("adding_machine")
    assert (T.states, T.alphabet) == (("q", "e"), ("0", "1"))
    C = load_bundled("combined")
    assert len(C.states) == 3
    assert C.alphabet == ("0", "1", "a", "⊥")


def test_serialization_reproduces_the_file():
    text = bundled_path("adding_machine").read_text(encoding="utf-8")
    assert serialize_automaton(parse_automaton(text)) == text


def test_comments_and_blank_lines_are_ignored():
    text = HEADER + "\n# the odometer\nq 0 -> 1 e   # carry stops\nq 1 -> 0 q\ne 0 -> 0 e\ne 1 -> 1 e\n"
    assert parse_automaton(text).delta[("q", "0")] == ("1", "e")


def test_missing_transition_is_reported():
    with pytest.raises(InputError, match="incomplete"):
        parse_automaton(HEADER + "q 0 -> 1 e\nq 1 -> 0 q\ne 0 -> 0 e\n")


def test_errors_carry_line_and_column():
    with pytest.raises(InputError, match="line 3, column 8: unknown letter '2'") as info:
        parse_automaton(HEADER + "q 0 -> 2 e\n")
    assert (info.value.line, info.value.column) == (3, 8)


def test_duplicate_transition():
    with pytest.raises(InputError, match="line 4: duplicate transition"):
        parse_automaton(HEADER + "q 0 -> 1 e\nq 0 -> 0 e\n")


@pytest.mark.parametrize(
    "text, message",
    [
        ("q 0 -> 1 e\n", "must follow"),
        (HEADER + "q 0 1 e\n", "expected"),
        ("alphabet: 0 0\nstates: q\n", "repeated name"),
        ("alphabet: 0 1\nstates: q.e\n", "reserved character"),
        ("states: q\n", "missing"),
    ],
)
def test_malformed_files(text, message):
    with pytest.raises(InputError, match=message):
        parse_automaton(text)


def test_parse_subset():
    T = load_bundled("combined")
    assert parse_subset("{z,e}", T) == ("e", "z")
    assert parse_subset("e z", T) == ("e", "z")
    assert parse_subset("Q", T) == T.states
    with pytest.raises(InputError, match="unknown states"):
        parse_subset("{x}", T)


def test_parse_word_is_greedy():
    assert parse_word("qqe", ["q", "e"]) == ("q", "q", "e")
    assert parse_word("q0 q1", ["q0", "q1"]) == ("q0", "q1")
    assert parse_word("ab", ["a", "ab", "b"]) == ("ab",)
    assert parse_word("ε", ["q"]) == ()
    assert parse_word("", ["q"]) == ()
    with pytest.raises(InputError):
        parse_word("qx", ["q"])


def test_parse_word_backtracks_on_prefix_names():
    # the longest match "ab" leaves "c", which no name reads
    assert parse_word("abc", ["a", "ab", "bc"]) == ("a", "bc")
    assert parse_word("abbc", ["a", "ab", "bc"]) == ("ab", "bc")
    with pytest.raises(InputError, match="cannot read 'abd'"):
        parse_word("abd", ["a", "ab", "bc"])


def test_parse_word_list():
    assert parse_word_list("q,qe", ["q", "e"]) == [("q",), ("q", "e")]


def test_instance_settings_and_overrides():
    text = bundled_path("adding_machine").read_text(encoding="utf-8") + "S = {e}\nR = (q|e)*\n"
    instance = parse_instance(text, path="x.aut")
    assert instance.subset == ("e",)
    assert instance.r_spec == "(q|e)*"
    overridden = parse_instance(text, options={"S": "Q", "R": "q*"})
    assert overridden.subset == ("q", "e")
    assert overridden.r_spec == "q*"


def test_instance_rejects_unknown_settings_and_bad_R():
    text = bundled_path("adding_machine").read_text(encoding="utf-8")
    with pytest.raises(InputError, match="unknown setting"):
        parse_instance(text + "X = 1\n")
    with pytest.raises(InputError):
        parse_instance(text, options={"R": "(q"})


def test_resolve_r(tmp_path):
    assert resolve_r(None, ["q", "e"]).accepts(("q", "e"))
    assert not resolve_r("q*", ["q", "e"]).accepts(("e",))
    dfa = tmp_path / "r.dfa"
    dfa.write_text("initial: a\naccepting: a\na q -> a\n", encoding="utf-8")
    D = resolve_r(f"@{dfa}", ["q", "e"])
    assert D.accepts(("q", "q"))
    assert not D.accepts(("e",))


def test_resolve_r_reports_unreadable_files(tmp_path):
    with pytest.raises(InputError, match="cannot read"):
        resolve_r(f"@{tmp_path / 'missing.dfa'}", ["q", "e"])
