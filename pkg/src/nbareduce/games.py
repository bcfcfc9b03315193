"""Bipartite two-player arenas and fixpoint solvers for Duplicator objectives.

Positions are dense integers: Spoiler owns 0..n0-1, Duplicator owns 0..n1-1 in
a separate index space.  Moves alternate strictly.  A Spoiler position with no
outgoing move counts as Duplicator-controlled-predecessor of every set
(vacuous universal quantification); a Duplicator position with no move never
helps her.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass


@dataclass(frozen=True)
class GameGraph:
    """Arena with a Büchi target set (over Spoiler positions) for Duplicator."""

    n0: int
    n1: int
    moves0: frozenset[tuple[int, int]]
    moves1: frozenset[tuple[int, int]]
    target: frozenset[int]

    def __post_init__(self):
        object.__setattr__(self, "moves0", frozenset(self.moves0))
        object.__setattr__(self, "moves1", frozenset(self.moves1))
        object.__setattr__(self, "target", frozenset(self.target))
        for p, y in self.moves0:
            if not (0 <= p < self.n0 and 0 <= y < self.n1):
                raise ValueError(f"moves0 endpoint out of range: {(p, y)}")
        for y, z in self.moves1:
            if not (0 <= y < self.n1 and 0 <= z < self.n0):
                raise ValueError(f"moves1 endpoint out of range: {(y, z)}")
        for p in self.target:
            if not 0 <= p < self.n0:
                raise ValueError(f"target position out of range: {p}")


@functools.lru_cache(maxsize=256)
def _adjacency(g: GameGraph):
    succ0 = [[] for _ in range(g.n0)]
    succ1 = [[] for _ in range(g.n1)]
    pred0 = [[] for _ in range(g.n1)]  # Spoiler positions moving into y
    pred1 = [[] for _ in range(g.n0)]  # Duplicator positions moving into z
    for p, y in g.moves0:
        succ0[p].append(y)
        pred0[y].append(p)
    for y, z in g.moves1:
        succ1[y].append(z)
        pred1[z].append(y)
    return succ0, succ1, pred0, pred1


def cpre(g: GameGraph, x: frozenset[int] | set[int]) -> frozenset[int]:
    """Spoiler positions from which Duplicator forces the next Spoiler position
    into x, whatever Spoiler does."""
    succ0, succ1, _, _ = _adjacency(g)
    xs = set(x)
    result = set()
    for p in range(g.n0):
        if all(any(z in xs for z in succ1[y]) for y in succ0[p]):
            result.add(p)
    return frozenset(result)


def _duplicator_attractor(g: GameGraph, seed: set[int]) -> set[int]:
    """mu Y . (seed  union  CPre(Y)), computed with move counters."""
    succ0, succ1, pred0, pred1 = _adjacency(g)
    in_y = [False] * g.n0
    sat = [False] * g.n1  # Duplicator position has a reply into Y
    count = [len(succ0[p]) for p in range(g.n0)]  # unsatisfied Spoiler moves
    queue = list(seed)
    for p in seed:
        in_y[p] = True
    for p in range(g.n0):
        if count[p] == 0 and not in_y[p]:  # Spoiler dead end
            in_y[p] = True
            queue.append(p)
    while queue:
        z = queue.pop()
        for y in pred1[z]:
            if sat[y]:
                continue
            sat[y] = True
            for p in pred0[y]:
                count[p] -= 1
                if count[p] == 0 and not in_y[p]:
                    in_y[p] = True
                    queue.append(p)
    return {p for p in range(g.n0) if in_y[p]}


def solve_buchi(g: GameGraph) -> frozenset[int]:
    """Winning set of the Büchi objective "target infinitely often":
    nu X . mu Y . ((target  intersect  CPre(X))  union  CPre(Y))."""
    x = set(range(g.n0))
    while True:
        seed = set(g.target) & set(cpre(g, x))
        y = _duplicator_attractor(g, seed)
        if y == x:
            return frozenset(y)
        x = y


def solve_safety(g: GameGraph, safe: frozenset[int] | set[int]) -> frozenset[int]:
    """Winning set of "stay in safe forever": nu X . (safe  intersect  CPre(X))."""
    x = set(safe)
    while True:
        nxt = set(safe) & set(cpre(g, x))
        if nxt == x:
            return frozenset(x)
        x = nxt
