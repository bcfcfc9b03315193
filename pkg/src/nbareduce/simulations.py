"""Classical simulation preorders: forward direct, forward delayed, backward
direct, and one-shot delayed containment.

Relation entries follow the containment order: (q, s) set means q is simulated
by s.  Spoiler plays the left component, Duplicator the right.  A Spoiler
state with no move imposes no constraint; a final Spoiler state constrains its
partner even when stuck (so quotienting stays sound on non-total automata).
"""

from __future__ import annotations

import numpy as np

from . import langops
from .automata import Nba, StateRelation, adjacency, _bool_matmul
from .games import GameGraph, solve_buchi


def _refine(base: np.ndarray, step) -> np.ndarray:
    rel = base.copy()
    while True:
        nxt = rel & step(rel)
        if np.array_equal(nxt, rel):
            return rel
        rel = nxt


def direct_sim(a: Nba) -> StateRelation:
    """Greatest relation where s immediately matches both moves and acceptance
    of q; computed by greatest-fixpoint refinement on a boolean matrix."""
    n = a.n_states
    final = np.zeros(n, dtype=bool)
    for q in a.final:
        final[q] = True
    base = ~final[:, None] | final[None, :]  # q in F implies s in F
    adj = adjacency(a)

    def step(rel: np.ndarray) -> np.ndarray:
        ok = np.ones((n, n), dtype=bool)
        for mat in adj:
            # can_answer[q', s] : some s-successor s' has (q', s') related
            can_answer = _bool_matmul(rel, mat.T)
            # violation[q, s] : some q-successor q' that s cannot answer
            ok &= ~_bool_matmul(mat, ~can_answer)
        return ok

    return StateRelation(n, _refine(base, step))


def backward_direct_sim(a: Nba) -> StateRelation:
    """Coarsest preorder matching transitions backwards while respecting both
    the final and the initial labelling."""
    n = a.n_states
    final = np.zeros(n, dtype=bool)
    initial = np.zeros(n, dtype=bool)
    for q in a.final:
        final[q] = True
    for q in a.initial:
        initial[q] = True
    base = (~final[:, None] | final[None, :]) & (~initial[:, None] | initial[None, :])
    radj = [mat.T.copy() for mat in adjacency(a)]

    def step(rel: np.ndarray) -> np.ndarray:
        ok = np.ones((n, n), dtype=bool)
        for mat in radj:
            can_answer = _bool_matmul(rel, mat.T)
            ok &= ~_bool_matmul(mat, ~can_answer)
        return ok

    return StateRelation(n, _refine(base, step))


def delayed_sim(a: Nba) -> StateRelation:
    """Delayed simulation via the obligation-bit Büchi game.

    Spoiler positions are (q, s, b).  On a round reading x the bit first picks
    up Spoiler's acceptance (b-hat = 1 if q in F), then Duplicator's current
    state discharges it (b' = 0 if s in F).  Duplicator must see b = 0
    infinitely often.
    """
    n = a.n_states
    spos: dict[tuple[int, int, int], int] = {}
    for q in range(n):
        for s in range(n):
            for b in (0, 1):
                spos[(q, s, b)] = len(spos)
    # Duplicator positions: (q', s, x, b_hat)
    dpos: dict[tuple[int, int, int, int], int] = {}
    moves0 = set()
    moves1 = set()
    for (q, s, b), pid in spos.items():
        bhat = 1 if q in a.final else b
        for x in range(a.n_symbols):
            for qd in a.successors(q, x):
                key = (qd, s, x, bhat)
                if key not in dpos:
                    dpos[key] = len(dpos)
                    bnext = 0 if s in a.final else bhat
                    for sd in a.successors(s, x):
                        moves1.add((dpos[key], spos[(qd, sd, bnext)]))
                moves0.add((pid, dpos[key]))
    g = GameGraph(
        n0=len(spos),
        n1=len(dpos),
        moves0=frozenset(moves0),
        moves1=frozenset(moves1),
        target=frozenset(pid for (q, s, b), pid in spos.items() if b == 0),
    )
    winning = solve_buchi(g)
    bits = np.zeros((n, n), dtype=bool)
    for q in range(n):
        for s in range(n):
            if spos[(q, s, 0)] in winning:
                bits[q, s] = True
    return StateRelation(n, bits)


def _path_nba(a: Nba, start: int, annotated: tuple[str, ...]) -> Nba:
    """All infinite runs from start, over symbols annotated with the source
    state's acceptance flag; every state accepting."""
    transitions = set()
    for p, x, pd in a.transitions:
        flag = 1 if p in a.final else 0
        transitions.add((p, 2 * x + flag, pd))
    return Nba(
        n_states=a.n_states,
        alphabet=annotated,
        initial=frozenset({start}),
        final=frozenset(range(a.n_states)),
        transitions=frozenset(transitions),
        state_names=tuple(f"p{i}" for i in range(a.n_states)),
    )


def _match_nba(a: Nba, start: int, annotated: tuple[str, ...]) -> Nba:
    """Runs that answer an annotated word with the delayed condition: the bit
    picks up flags and the current state discharges it before stepping."""
    n = a.n_states

    def idx(p: int, b: int) -> int:
        return 2 * p + b

    transitions = set()
    for p, x, pd in a.transitions:
        for b in (0, 1):
            for flag in (0, 1):
                bnext = 0 if p in a.final else (b | flag)
                transitions.add((idx(p, b), 2 * x + flag, idx(pd, bnext)))
    return Nba(
        n_states=2 * n,
        alphabet=annotated,
        initial=frozenset({idx(start, 0)}),
        final=frozenset(idx(p, 0) for p in range(n)),
        transitions=frozenset(transitions),
        state_names=tuple(f"m{i}" for i in range(2 * n)),
    )


def delayed_containment(
    a: Nba, q: int, s: int, oracle_limit: int = langops.DEFAULT_COMPLEMENT_CAP
) -> bool:
    """Decide the one-shot delayed containment between two states: Spoiler
    reveals a whole infinite path, Duplicator replies with a path answering
    every acceptance eventually.  Reduced to inclusion over the alphabet
    annotated with Spoiler's acceptance flags."""
    annotated = tuple(f"{sym}#{flag}" for sym in a.alphabet for flag in (0, 1))
    path = _path_nba(a, q, annotated)
    match = _match_nba(a, s, annotated)
    ok, _w = langops.includes(path, match, oracle_limit)
    return ok


def delayed_containment_relation(
    a: Nba, oracle_limit: int = langops.DEFAULT_COMPLEMENT_CAP
) -> StateRelation:
    """Entrywise delayed containment over all state pairs; complements each
    answer automaton once and reuses it across Spoiler states."""
    n = a.n_states
    bits = np.zeros((n, n), dtype=bool)
    annotated = tuple(f"{sym}#{flag}" for sym in a.alphabet for flag in (0, 1))
    paths = [_path_nba(a, q, annotated) for q in range(n)]
    for s in range(n):
        co_match = langops.complement(_match_nba(a, s, annotated), oracle_limit)
        for q in range(n):
            gap = langops.intersect(paths[q], co_match)
            bits[q, s] = langops.is_empty(gap) is None
    return StateRelation(n, bits)
