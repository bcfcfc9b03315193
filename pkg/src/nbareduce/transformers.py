"""Refinement transformers: jump-enabled simulation games that coarsen a given
preorder, plus the appealing-fragment predicate.

All results use the jump-game entry order: entry (s, q) means the left state s
wins as Duplicator against Spoiler playing from q.  The input relation r uses
containment order, i.e. r[x, y] allows a jump from x to the r-bigger state y.
The proxy module transposes back into containment order at the end.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .automata import Nba, StateRelation, adjacency, _bool_matmul
from .games import GameGraph, solve_buchi


@dataclass(frozen=True)
class JumpMove:
    """One resolved Duplicator (or Spoiler) move: jump from src to an r-bigger
    proxy, then take one of the proxy's transitions."""

    src: int
    proxy: int
    symbol: int
    dst: int
    proxy_final: bool


@dataclass(frozen=True)
class ObligationPosition:
    """Spoiler position of the delayed jump games: pair plus pending bit."""

    s: int
    q: int
    b: int

    def __post_init__(self):
        if self.b not in (0, 1):
            raise ValueError("obligation bit must be 0 or 1")


def jumps_from(a: Nba, r: StateRelation, src: int):
    """Enumerate every jump move available from src under r."""
    _check_dim(a, r)
    for proxy in range(a.n_states):
        if not r.bits[src, proxy]:
            continue
        for sym in range(a.n_symbols):
            for dst in a.successors(proxy, sym):
                yield JumpMove(src, proxy, sym, dst, proxy in a.final)


def _check_dim(a: Nba, r: StateRelation) -> None:
    if r.n != a.n_states:
        raise ValueError(
            f"relation dimension {r.n} does not match automaton ({a.n_states})"
        )


def _masks(a: Nba) -> np.ndarray:
    final = np.zeros(a.n_states, dtype=bool)
    for q in a.final:
        final[q] = True
    return final


def _jump_adjacency(a: Nba, r: StateRelation):
    """Per symbol: reachability via any proxy / via an accepting proxy /
    via a non-accepting proxy."""
    final = _masks(a)
    r_f = r.bits & final[None, :]
    r_n = r.bits & ~final[None, :]
    adj = adjacency(a)
    jump_any = [_bool_matmul(r.bits, m) for m in adj]
    jump_f = [_bool_matmul(r_f, m) for m in adj]
    jump_n = [_bool_matmul(r_n, m) for m in adj]
    return jump_any, jump_f, jump_n


def _refine(base: np.ndarray, step) -> np.ndarray:
    rel = base.copy()
    while True:
        nxt = rel & step(rel)
        if np.array_equal(nxt, rel):
            return rel
        rel = nxt


def tau0(a: Nba, r: StateRelation) -> StateRelation:
    """Duplicator-only jumps, immediate acceptance matching: whenever Spoiler
    is accepting the chosen proxy must be accepting."""
    return _tau0_variant(a, r, obligation="proxy")


def _tau0_variant(a: Nba, r: StateRelation, obligation: str) -> StateRelation:
    _check_dim(a, r)
    n = a.n_states
    final = _masks(a)
    adj = adjacency(a)
    jump_any, jump_f, _ = _jump_adjacency(a, r)
    has_f_proxy = (r.bits & final[None, :]).any(axis=1)
    if obligation == "proxy":
        # Even a stuck accepting Spoiler state requires an accepting proxy.
        base = ~final[None, :] | has_f_proxy[:, None]
    elif obligation == "state":
        base = ~final[None, :] | final[:, None]
    else:
        raise ValueError(f"unknown obligation variant {obligation!r}")

    def step(rel: np.ndarray) -> np.ndarray:
        ok = np.ones((n, n), dtype=bool)
        for x in range(a.n_symbols):
            if obligation == "proxy":
                reply_f = jump_f[x]
            else:
                reply_f = jump_any[x] & final[:, None]
            ok_f = _bool_matmul(reply_f, rel)  # [s, q'] with accepting answer
            ok_any = _bool_matmul(jump_any[x], rel)
            viol_f = _bool_matmul(~ok_f, adj[x].T)
            viol_any = _bool_matmul(~ok_any, adj[x].T)
            ok &= ~np.where(final[None, :], viol_f, viol_any)
        return ok

    return StateRelation(n, _refine(base, step))


def tau1(a: Nba, r: StateRelation) -> StateRelation:
    """Both players jump; Spoiler's proxy sets the acceptance trigger, so the
    result is transitive for arbitrary r."""
    _check_dim(a, r)
    n = a.n_states
    final = _masks(a)
    adj = adjacency(a)
    jump_any, jump_f, jump_n = _jump_adjacency(a, r)
    has_f_proxy = (r.bits & final[None, :]).any(axis=1)
    base = ~has_f_proxy[None, :] | has_f_proxy[:, None]

    def step(rel: np.ndarray) -> np.ndarray:
        ok = np.ones((n, n), dtype=bool)
        for x in range(a.n_symbols):
            ok_f = _bool_matmul(jump_f[x], rel)
            ok_any = _bool_matmul(jump_any[x], rel)
            ok &= ~_bool_matmul(~ok_f, jump_f[x].T)
            ok &= ~_bool_matmul(~ok_any, jump_any[x].T)
        return ok

    return StateRelation(n, _refine(base, step))


def _delayed_jump_game(
    a: Nba,
    r: StateRelation,
    spoiler_jumps: bool,
    pair_filter: np.ndarray | None = None,
) -> StateRelation:
    """Shared arena for the delayed jump games.

    Spoiler positions are (s, q, b).  Spoiler picks a transition of q (or of a
    proxy of q when she may jump), raising the bit when the accepting variant
    exists; Duplicator answers through a proxy of s, resetting the bit when an
    accepting proxy exists.  Duplicator wins with bit 0 infinitely often.
    When pair_filter is given, Duplicator may only move to pairs inside it and
    only filtered pairs become positions.
    """
    _check_dim(a, r)
    n = a.n_states
    final = _masks(a)
    adj = adjacency(a)
    jump_any, jump_f, jump_n = _jump_adjacency(a, r)
    if spoiler_jumps:
        spoiler_f = [jump_f[x] for x in range(a.n_symbols)]
        spoiler_n = [jump_n[x] for x in range(a.n_symbols)]
    else:
        spoiler_f = [adj[x] & final[:, None] for x in range(a.n_symbols)]
        spoiler_n = [adj[x] & ~final[:, None] for x in range(a.n_symbols)]

    def pair_ok(s: int, q: int) -> bool:
        return pair_filter is None or bool(pair_filter[s, q])

    spos: dict[tuple[int, int, int], int] = {}
    for s in range(n):
        for q in range(n):
            if pair_ok(s, q):
                for b in (0, 1):
                    spos[(s, q, b)] = len(spos)
    dpos: dict[tuple[int, int, int, int], int] = {}
    moves0 = set()
    moves1 = set()
    for (s, q, b), pid in spos.items():
        for x in range(a.n_symbols):
            for qd in range(n):
                bhats = []
                if spoiler_f[x][q, qd]:
                    bhats.append(1)
                if spoiler_n[x][q, qd] and b == 0:
                    bhats.append(0)
                elif spoiler_n[x][q, qd] and b == 1 and not spoiler_f[x][q, qd]:
                    bhats.append(1)
                for bhat in set(bhats):
                    key = (s, x, qd, bhat)
                    if key not in dpos:
                        dpos[key] = len(dpos)
                        for sd in range(n):
                            if not pair_ok(sd, qd):
                                continue
                            if jump_f[x][s, sd]:
                                moves1.add((dpos[key], spos[(sd, qd, 0)]))
                            if jump_n[x][s, sd]:
                                moves1.add((dpos[key], spos[(sd, qd, bhat)]))
                    moves0.add((pid, dpos[key]))
    g = GameGraph(
        n0=len(spos),
        n1=len(dpos),
        moves0=frozenset(moves0),
        moves1=frozenset(moves1),
        target=frozenset(pid for (s, q, b), pid in spos.items() if b == 0),
    )
    winning = solve_buchi(g)
    bits = np.zeros((n, n), dtype=bool)
    for (s, q, b), pid in spos.items():
        if b == 0 and pid in winning:
            bits[s, q] = True
    return StateRelation(n, bits)


def tau0_de(a: Nba, r: StateRelation) -> StateRelation:
    """Delayed variant of the Duplicator-only jump game: Spoiler acceptance
    raises an obligation that some later accepting proxy discharges."""
    return _delayed_jump_game(a, r, spoiler_jumps=False)


def tau1_de(a: Nba, r: StateRelation) -> StateRelation:
    """Delayed variant with jumps on both sides, solved as an obligation-bit
    Büchi game; the nu-mu fixpoint lives in games.solve_buchi."""
    return _delayed_jump_game(a, r, spoiler_jumps=True)


def is_appealing_fragment(
    a: Nba, t: StateRelation, r: StateRelation, variant: str
) -> bool:
    """True iff t is transitive and Duplicator wins the chosen jump game from
    every pair of t without ever leaving t."""
    _check_dim(a, t)
    _check_dim(a, r)
    if variant not in ("tau0", "tau0_de"):
        raise ValueError(f"unknown variant {variant!r}")
    if not t.is_transitive():
        return False
    if variant == "tau0_de":
        stay = _delayed_jump_game(a, r, spoiler_jumps=False, pair_filter=t.bits)
        return bool((t.bits <= stay.bits).all())

    n = a.n_states
    final = _masks(a)
    adj = adjacency(a)
    jump_any, jump_f, _ = _jump_adjacency(a, r)
    has_f_proxy = (r.bits & final[None, :]).any(axis=1)
    base = t.bits & (~final[None, :] | has_f_proxy[:, None])

    def step(rel: np.ndarray) -> np.ndarray:
        ok = np.ones((n, n), dtype=bool)
        for x in range(a.n_symbols):
            ok_f = _bool_matmul(jump_f[x], rel)
            ok_any = _bool_matmul(jump_any[x], rel)
            ok &= ~np.where(
                final[None, :],
                _bool_matmul(~ok_f, adj[x].T),
                _bool_matmul(~ok_any, adj[x].T),
            )
        return ok

    stay_bits = _refine(base, step)
    return bool((t.bits <= stay_bits).all())
