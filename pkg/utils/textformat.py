"""
utils/textformat.py
Plain-text formats: automaton files, state subsets, words and problem instances.

Automaton file (one construct per line, '#' starts a comment):

    alphabet: 0 1
    states: q e
    q 0 -> 1 e          # q --0/1--> e

An instance file may add `S = {e}` and `R = (q|e)*` lines.
"""

import logging
from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

from models.automaton import SAutomaton
from models.nerode import NerodeDFA, nerode, parse_dfa_text
from utils.config import SEPARATOR
from utils.errors import InputError

logger = logging.getLogger(__name__)

RESERVED = set(SEPARATOR) | set("#{},|*()=:@")


@dataclass(frozen=True)
class ProblemInstance:
    """
    A parsed automaton with the options of one invocation.

    Attributes:
        automaton: The parsed automaton.
        path: File the automaton was read from, if any.
        subset: The closed subset S (declaration order), if given.
        r_spec: 'Q*', a regular expression over states or '@file.dfa', if given.
        options: Command options (caps, limits, output format).
    """

    automaton: SAutomaton
    path: Optional[str] = None
    subset: Optional[Tuple[str, ...]] = None
    r_spec: Optional[str] = None
    options: Mapping[str, object] = field(default_factory=dict)


def _identifiers(text: str, lineno: int, offset: int) -> List[str]:
    names = text.split()
    for name in names:
        if RESERVED.intersection(name):
            column = offset + text.index(name) + 1
            raise InputError(f"'{name}' contains a reserved character", line=lineno, column=column)
    return names


def parse_automaton(text: str) -> SAutomaton:
    """
    Parse the automaton text format.

    Raises:
        InputError: with the line (and column) of a syntax error, an unknown
                    identifier or a duplicate transition; incomplete transition
                    functions are reported by the SAutomaton constructor.
    """
    states: Optional[List[str]] = None
    alphabet: Optional[List[str]] = None
    delta: Dict[Tuple[str, str], Tuple[str, str]] = {}

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].rstrip()
        if not line.strip():
            continue
        head, sep, rest = line.partition(":")
        if sep and head.strip() in ("alphabet", "states"):
            names = _identifiers(rest, lineno, len(head) + 1)
            if len(set(names)) != len(names):
                raise InputError(f"repeated name in the {head.strip()} line", line=lineno)
            if head.strip() == "alphabet":
                alphabet = names
            else:
                states = names
            continue
        if "=" in line:
            continue
        if states is None or alphabet is None:
            raise InputError("transitions must follow the 'alphabet:' and 'states:' lines", line=lineno)
        parts = line.split()
        if len(parts) != 5 or parts[2] != "->":
            raise InputError("expected 'state input -> output next'", line=lineno)
        p, a, _, b, q = parts
        for name, pool, what in ((p, states, "state"), (a, alphabet, "letter"), (b, alphabet, "letter"), (q, states, "state")):
            if name not in pool:
                raise InputError(f"unknown {what} '{name}'", line=lineno, column=line.index(name) + 1)
        if (p, a) in delta:
            raise InputError(f"duplicate transition for ({p}, {a})", line=lineno)
        delta[(p, a)] = (b, q)

    if states is None or alphabet is None:
        raise InputError("missing 'alphabet:' or 'states:' line")
    return SAutomaton(tuple(states), tuple(alphabet), delta)


def serialize_automaton(T: SAutomaton) -> str:
    """Canonical text: header lines, then transitions in declaration order."""
    lines = [f"alphabet: {' '.join(T.alphabet)}", f"states: {' '.join(T.states)}"]
    for p in T.states:
        for a in T.alphabet:
            b, q = T.delta[(p, a)]
            lines.append(f"{p} {a} -> {b} {q}")
    return "\n".join(lines) + "\n"


def parse_subset(text: str, T: SAutomaton) -> Tuple[str, ...]:
    """'{e,z}', 'e,z' or 'e z'; 'Q' stands for every state. Declaration order."""
    body = text.strip()
    if body.startswith("S") and "=" in body:
        body = body.split("=", 1)[1].strip()
    if body == "Q":
        return T.states
    body = body.strip("{}")
    names = [x for x in body.replace(",", " ").split() if x]
    unknown = [x for x in names if x not in T.states]
    if unknown:
        raise InputError(f"unknown states in S: {unknown}")
    chosen = set(names)
    return tuple(p for p in T.states if p in chosen)


def parse_word(text: str, names: Sequence[str]) -> Tuple[str, ...]:
    """
    Split a word into identifiers: separated by spaces or written together.
    Written-together chunks prefer the longest identifier at each position and
    fall back to shorter ones when that leads into a dead end. 'ε' and '' are
    the empty word.
    """
    ordered = sorted(names, key=len, reverse=True)
    word: List[str] = []
    for chunk in text.split():
        if chunk == "ε":
            continue
        # split[i]: tokens of chunk[i:], or None when it cannot be read
        split: List[Optional[Tuple[str, ...]]] = [None] * len(chunk) + [()]
        for i in range(len(chunk) - 1, -1, -1):
            for name in ordered:
                if name and chunk.startswith(name, i) and split[i + len(name)] is not None:
                    split[i] = (name,) + split[i + len(name)]
                    break
        if split[0] is None:
            raise InputError(f"cannot read '{chunk}' as a word over {list(names)}")
        word.extend(split[0])
    return tuple(word)


def parse_word_list(text: str, names: Sequence[str]) -> List[Tuple[str, ...]]:
    """Comma-separated words, e.g. 'q,qq'."""
    return [parse_word(part, names) for part in text.split(",")]


def parse_instance(text: str, path: Optional[str] = None, options: Optional[Mapping[str, object]] = None) -> ProblemInstance:
    """
    Parse an automaton file with optional `S = …` and `R = …` lines.

    Options `S` and `R` (from the command line) override the file.
    """
    T = parse_automaton(text)
    subset = None
    r_spec = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        key, sep, value = line.partition("=")
        if not sep:
            continue
        if key.strip() == "S":
            subset = parse_subset(value, T)
        elif key.strip() == "R":
            r_spec = value.strip()
        else:
            raise InputError(f"unknown setting '{key.strip()}'", line=lineno)
    opts = dict(options or {})
    if opts.get("S") is not None:
        subset = parse_subset(str(opts["S"]), T)
    if opts.get("R") is not None:
        r_spec = str(opts["R"])
    if r_spec is not None and not r_spec.startswith("@"):
        nerode(r_spec, T.states)
    return ProblemInstance(automaton=T, path=path, subset=subset, r_spec=r_spec, options=opts)


def resolve_r(r_spec: Optional[str], alphabet: Sequence[str]) -> NerodeDFA:
    """Minimal DFA for an R specification; missing means Q*."""
    if r_spec is None:
        return nerode("Q*", alphabet)
    if r_spec.startswith("@"):
        try:
            text = Path(r_spec[1:]).read_text(encoding="utf-8")
        except OSError as exc:
            raise InputError(f"cannot read {r_spec[1:]}: {exc.strerror}") from exc
        return parse_dfa_text(text, alphabet)
    return nerode(r_spec, alphabet)
