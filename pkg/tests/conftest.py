"""Shared helpers for the test suite."""

from __future__ import annotations

import numpy as np
import pytest

from nbareduce.automata import Nba, StateRelation, random_nba


def iso_by_names(a: Nba, b: Nba) -> bool:
    """Structural equality up to the index permutation induced by names."""
    if a.n_states != b.n_states or a.alphabet != b.alphabet:
        return False
    if set(a.state_names) != set(b.state_names):
        return False
    to_b = {i: b.state_names.index(name) for i, name in enumerate(a.state_names)}
    if {to_b[q] for q in a.initial} != set(b.initial):
        return False
    if {to_b[q] for q in a.final} != set(b.final):
        return False
    mapped = {(to_b[s], x, to_b[d]) for s, x, d in a.transitions}
    return mapped == set(b.transitions)


def random_corpus(count, n_states, n_symbols, seed0=0, density=(0.3, 0.8), final=0.4):
    """Seeded family of random automata with varying densities."""
    lo, hi = density
    out = []
    for i in range(count):
        dens = lo + (hi - lo) * ((i * 0.37) % 1.0)
        out.append(random_nba(n_states, n_symbols, dens, final, seed0 + i))
    return out


def random_preorder(n: int, seed: int, density: float = 0.3) -> StateRelation:
    """Reflexive-transitive closure of a random relation."""
    rng = np.random.default_rng(seed)
    bits = rng.random((n, n)) < density
    return StateRelation(n, bits).closure()


@pytest.fixture(scope="session")
def tiny_corpus():
    return random_corpus(60, 4, 2, seed0=100)
