"""
utils/config.py
Shared configuration for the finiteness toolkit.

Provides:
- LIMITS               → resource limits and caps used as keyword defaults
- SEPARATOR            → reserved character joining component state names
- configure_logging()  → call once from the command line entry point
"""

import logging
import sys

# ── Resource limits ─────────────────────────────────────────────────────────────
LIMITS = {
    "subsemigroup_cap":          10_000,
    "brute_force_length":        10,
    "orbit_word_limit":          2 ** 22,
    "subset_construction_limit": 2 ** 20,
    "closed_subset_seed_limit":  16,
    "buchi_state_limit":         5_000,
    "buchi_word_length_limit":   64,
    "canonical_leaf_limit":      200_000,
    "monoid_size_limit":         100_000,
    "n_jobs":                    1,
}

# Power and product states are named by joining component names with this.
SEPARATOR = "."

SCHEMA = "automaton-finiteness/1"

_LEVELS = {0: logging.WARNING, 1: logging.INFO}


def configure_logging(verbosity: int = 0) -> None:
    """
    Route library logging to stderr.

    Args:
        verbosity: 0 = warnings only, 1 = info, 2 or more = debug.
    """
    level = _LEVELS.get(verbosity, logging.DEBUG)
    logging.basicConfig(
        stream=sys.stderr,
        level=level,
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
    )
