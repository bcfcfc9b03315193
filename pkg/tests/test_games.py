import random
from itertools import product

import pytest

from nbareduce.games import GameGraph, cpre, solve_buchi, solve_safety


def random_game(seed, n0=10, n1=10, deg0=2, deg1=2, target_p=0.3):
    rng = random.Random(seed)
    moves0 = set()
    moves1 = set()
    for p in range(n0):
        for _ in range(rng.randint(0, deg0)):
            moves0.add((p, rng.randrange(n1)))
    for y in range(n1):
        for _ in range(rng.randint(0, deg1)):
            moves1.add((y, rng.randrange(n0)))
    target = frozenset(p for p in range(n0) if rng.random() < target_p)
    return GameGraph(n0, n1, frozenset(moves0), frozenset(moves1), target)


def brute_cpre(g, x):
    succ0 = {p: [y for (pp, y) in g.moves0 if pp == p] for p in range(g.n0)}
    succ1 = {y: [z for (yy, z) in g.moves1 if yy == y] for y in range(g.n1)}
    out = set()
    for p in range(g.n0):
        if all(any(z in x for z in succ1[y]) for y in succ0[p]):
            out.add(p)
    return frozenset(out)


def test_cpre_top_and_bottom():
    g = random_game(1, n0=20, n1=20)
    allp = frozenset(range(g.n0))
    succ0 = {p: [y for (pp, y) in g.moves0 if pp == p] for p in range(g.n0)}
    succ1 = {y: [z for (yy, z) in g.moves1 if yy == y] for y in range(g.n1)}
    top = cpre(g, allp)
    assert top == frozenset(
        p for p in range(g.n0) if all(succ1[y] for y in succ0[p])
    )
    bottom = cpre(g, frozenset())
    assert bottom == frozenset(p for p in range(g.n0) if not succ0[p])


def test_cpre_matches_brute_force():
    rng = random.Random(99)
    for seed in range(200):
        g = random_game(seed, n0=20, n1=20)
        x = frozenset(p for p in range(g.n0) if rng.random() < 0.4)
        assert cpre(g, x) == brute_cpre(g, x)


def test_cpre_monotone():
    rng = random.Random(5)
    for seed in range(50):
        g = random_game(seed, n0=15, n1=15)
        x = {p for p in range(g.n0) if rng.random() < 0.3}
        y = x | {p for p in range(g.n0) if rng.random() < 0.3}
        assert cpre(g, frozenset(x)) <= cpre(g, frozenset(y))


def _winning_under_strategy(g, sigma, succ0):
    """Spoiler positions from which every play following sigma satisfies the
    Büchi condition (or dies in a Spoiler dead end)."""
    # Follow-graph over Spoiler positions; a Duplicator position without a
    # sigma-choice is losing for Duplicator.
    nxt = {}
    losing = set()
    for p in range(g.n0):
        outs = []
        dead = False
        for y in succ0[p]:
            if y in sigma:
                outs.append(sigma[y])
            else:
                dead = True
        if dead:
            losing.add(p)
        nxt[p] = outs

    # Bad: can reach a Duplicator-dead position, or a cycle avoiding target.
    bad = set(losing)
    changed = True
    while changed:
        changed = False
        for p in range(g.n0):
            if p not in bad and any(z in bad for z in nxt[p]):
                bad.add(p)
                changed = True
    # Cycles fully outside the target: iteratively remove vertices with no
    # successor inside the candidate set.
    cand = {p for p in range(g.n0) if p not in g.target and nxt[p]}
    changed = True
    while changed:
        changed = False
        for p in list(cand):
            if not any(z in cand for z in nxt[p]):
                cand.discard(p)
                changed = True
    lure = set(cand)
    changed = True
    while changed:
        changed = False
        for p in range(g.n0):
            if p not in lure and any(z in lure for z in nxt[p]):
                lure.add(p)
                changed = True
    return frozenset(p for p in range(g.n0) if p not in bad and p not in lure)


def brute_buchi(g):
    """Enumerate Duplicator memoryless strategies; memoryless determinacy makes
    this an exact oracle on tiny arenas."""
    succ0 = {p: sorted(y for (pp, y) in g.moves0 if pp == p) for p in range(g.n0)}
    succ1 = {y: sorted(z for (yy, z) in g.moves1 if yy == y) for y in range(g.n1)}
    useful = sorted(y for y in range(g.n1) if succ1[y])
    winning = set()
    options = [succ1[y] for y in useful]
    for combo in product(*options):
        sigma = dict(zip(useful, combo))
        winning |= _winning_under_strategy(g, sigma, succ0)
    return frozenset(winning)


def test_solve_buchi_matches_strategy_enumeration():
    for seed in range(200):
        g = random_game(seed, n0=6, n1=6, deg0=2, deg1=2)
        assert solve_buchi(g) == brute_buchi(g), f"seed {seed}"


def test_solve_buchi_empty_target():
    # With total Spoiler moves and no target, Duplicator cannot win.
    g = GameGraph(
        n0=2,
        n1=2,
        moves0=frozenset({(0, 0), (1, 1)}),
        moves1=frozenset({(0, 1), (1, 0)}),
        target=frozenset(),
    )
    assert solve_buchi(g) == frozenset()
    # A reachable Spoiler dead end is winning for Duplicator even without target.
    g2 = GameGraph(
        n0=2,
        n1=1,
        moves0=frozenset({(0, 0)}),
        moves1=frozenset({(0, 1)}),
        target=frozenset(),
    )
    assert solve_buchi(g2) == frozenset({0, 1})


def test_solve_buchi_one_loop():
    g = GameGraph(
        n0=1,
        n1=1,
        moves0=frozenset({(0, 0)}),
        moves1=frozenset({(0, 0)}),
        target=frozenset({0}),
    )
    assert solve_buchi(g) == frozenset({0})


def test_solve_buchi_duplicator_dead_end():
    # Target position whose only continuation strands Duplicator.
    g = GameGraph(
        n0=1,
        n1=1,
        moves0=frozenset({(0, 0)}),
        moves1=frozenset(),
        target=frozenset({0}),
    )
    assert solve_buchi(g) == frozenset()


def test_solve_safety():
    for seed in range(100):
        g = random_game(seed, n0=12, n1=12)
        allp = frozenset(range(g.n0))
        assert solve_safety(g, frozenset()) == frozenset()
        full = solve_safety(g, allp)
        # agreement with the complement of Spoiler's attractor to positions
        # where Duplicator is stuck
        stuck = brute_spoiler_attractor(g)
        assert full == allp - stuck
        assert solve_buchi(g) <= full


def brute_spoiler_attractor(g):
    """Spoiler positions from which she forces a Duplicator dead end."""
    succ0 = {p: [y for (pp, y) in g.moves0 if pp == p] for p in range(g.n0)}
    succ1 = {y: [z for (yy, z) in g.moves1 if yy == y] for y in range(g.n1)}
    bad_d = {y for y in range(g.n1) if not succ1[y]}
    bad_p = set()
    changed = True
    while changed:
        changed = False
        for p in range(g.n0):
            if p in bad_p:
                continue
            # Spoiler moves to a dead Duplicator position, or every Duplicator
            # reply of some move leads back into bad_p
            if any(
                y in bad_d or all(z in bad_p for z in succ1[y]) and succ1[y]
                for y in succ0[p]
            ):
                bad_p.add(p)
                changed = True
    return frozenset(bad_p)


def test_buchi_fixpoint_properties_at_larger_size():
    for seed in range(60):
        g = random_game(seed + 600, n0=30, n1=30, deg0=3, deg1=3)
        v = solve_buchi(g)
        # V is a fixed point of the outer iteration
        seed_set = set(g.target) & set(cpre(g, v))
        from nbareduce.games import _duplicator_attractor

        assert frozenset(_duplicator_attractor(g, seed_set)) == v
        assert v <= solve_safety(g, frozenset(range(g.n0)))


def test_game_graph_validation():
    with pytest.raises(ValueError):
        GameGraph(1, 1, frozenset({(0, 5)}), frozenset(), frozenset())
    with pytest.raises(ValueError):
        GameGraph(1, 1, frozenset(), frozenset({(0, 3)}), frozenset())
    with pytest.raises(ValueError):
        GameGraph(1, 1, frozenset(), frozenset(), frozenset({4}))
