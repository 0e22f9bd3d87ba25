"""
data/corpus.py
Bundled example automata and a seeded generator of random complete automata.
"""

from pathlib import Path
from typing import Dict, List, Optional, Tuple

import numpy as np

from models.automaton import SAutomaton
from models.semigroup import ExceedsCap, discover_closed_subsets
from utils.textformat import parse_automaton

AUTOMATA_DIR = Path(__file__).resolve().parent / "automata"

# name -> default closed subset S and the expected finiteness of S(T)
BUNDLED: Dict[str, Dict] = {
    "adding_machine": {"S": ("e",), "finite": False, "order": None},
    "u1":             {"S": ("e", "z"), "finite": True, "order": 2},
    "combined":       {"S": ("e", "z"), "finite": False, "order": None},
    "identity":       {"S": ("e",), "finite": True, "order": 1},
    "flip":           {"S": ("e",), "finite": True, "order": 2},
    "reset":          {"S": ("e",), "finite": True, "order": 2},
    "delayed_flip":   {"S": ("e",), "finite": True, "order": 4},
    "ternary_adder":  {"S": ("e",), "finite": False, "order": None},
    "sink":           {"S": ("z",), "finite": True, "order": 6},
}


def bundled_names() -> List[str]:
    return list(BUNDLED)


def bundled_path(name: str) -> Path:
    if name not in BUNDLED:
        raise KeyError(f"no bundled automaton named '{name}'")
    return AUTOMATA_DIR / f"{name}.aut"


def load_bundled(name: str) -> SAutomaton:
    """Parse a bundled automaton file."""
    return parse_automaton(bundled_path(name).read_text(encoding="utf-8"))


def bundled_instance(name: str) -> Tuple[SAutomaton, Tuple[str, ...]]:
    """The bundled automaton together with its default subset S."""
    return load_bundled(name), BUNDLED[name]["S"]


def generate_random_automaton(
    n_states: int = 3, n_letters: int = 2, seed: Optional[int] = 42
) -> SAutomaton:
    """
    Generate a random complete automaton.

    Args:
        n_states: Number of states, named q0, q1, …
        n_letters: Number of letters, named 0, 1, …
        seed: Random seed for reproducibility.

    Returns:
        SAutomaton with uniformly drawn outputs and successors.
    """
    rng = np.random.default_rng(seed)
    states = tuple(f"q{i}" for i in range(n_states))
    alphabet = tuple(str(i) for i in range(n_letters))
    outputs = rng.integers(0, n_letters, size=(n_states, n_letters))
    targets = rng.integers(0, n_states, size=(n_states, n_letters))
    delta = {
        (p, a): (alphabet[outputs[i, j]], states[targets[i, j]])
        for i, p in enumerate(states)
        for j, a in enumerate(alphabet)
    }
    return SAutomaton(states, alphabet, delta)


def generate_random_automata(count: int, seed: int = 42) -> List[SAutomaton]:
    """`count` random automata with 2 or 3 states over two letters."""
    rng = np.random.default_rng(seed)
    sizes = rng.integers(2, 4, size=count)
    seeds = rng.integers(0, 2 ** 31, size=count)
    return [generate_random_automaton(int(n), 2, int(s)) for n, s in zip(sizes, seeds)]


# (number of states, seed) of the seeded random corpus over two letters
RANDOM_SEEDS: Tuple[Tuple[int, int], ...] = ((2, 11), (2, 23), (3, 37), (3, 41), (3, 59))


def random_corpus() -> Dict[str, SAutomaton]:
    """The seeded random automata, named random_<seed>."""
    return {f"random_{seed}": generate_random_automaton(n, 2, seed) for n, seed in RANDOM_SEEDS}


def random_instance(name: str, cap: int = 200) -> Tuple[SAutomaton, Optional[Tuple[str, ...]]]:
    """
    A seeded random automaton with the smallest closed subset S whose
    subsemigroup S⁺ has at most `cap` elements, or None when there is none.
    """
    corpus = random_corpus()
    if name not in corpus:
        raise KeyError(f"no random automaton named '{name}'")
    T = corpus[name]
    for subset, result in discover_closed_subsets(T, cap=cap):
        if not isinstance(result, ExceedsCap):
            return T, subset
    return T, None
