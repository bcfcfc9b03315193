"""Fixed-word delayed simulation via alternating-automaton universality, the
per-lasso multi-pebble delayed game, and the pebble-collapse consistency check.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from itertools import combinations, product as iter_product

import numpy as np

from . import langops
from .automata import LassoWord, Nba, StateRelation
from .games import GameGraph, solve_buchi
from .langops import CapExceeded

# Positive boolean formulas over state indices:
#   True / False constants, an int literal, or ("and"|"or", tuple of formulas).
Formula = object

DEFAULT_MH_CAP = 20_000
DEFAULT_FX_MAX_STATES = 4
_MODEL_COMBO_CAP = 200_000


@dataclass(frozen=True)
class Aba:
    """Alternating Büchi automaton with positive-boolean transition formulas.

    ``delta[q][x]`` is the formula for state q on symbol index x.
    """

    n_states: int
    alphabet: tuple[str, ...]
    delta: tuple[tuple[Formula, ...], ...]
    accepting: frozenset[int]

    def __post_init__(self):
        object.__setattr__(self, "alphabet", tuple(self.alphabet))
        object.__setattr__(self, "accepting", frozenset(self.accepting))
        object.__setattr__(self, "delta", tuple(tuple(row) for row in self.delta))
        if len(self.delta) != self.n_states:
            raise ValueError("delta must have one row per state")
        for row in self.delta:
            if len(row) != len(self.alphabet):
                raise ValueError("delta row must cover the whole alphabet")
            for f in row:
                _check_formula(f, self.n_states)
        for q in self.accepting:
            if not 0 <= q < self.n_states:
                raise ValueError(f"accepting state {q} out of range")


def _check_formula(f: Formula, n: int) -> None:
    if f is True or f is False:
        return
    if isinstance(f, int):
        if not 0 <= f < n:
            raise ValueError(f"formula literal {f} out of range")
        return
    if isinstance(f, tuple) and len(f) == 2 and f[0] in ("and", "or"):
        for sub in f[1]:
            _check_formula(sub, n)
        return
    raise ValueError(f"malformed formula {f!r}")


def minimal_models(f: Formula) -> list[frozenset[int]]:
    """Minimal satisfying state sets of a positive formula."""
    models = _models(f)
    return [m for m in models if not any(other < m for other in models)]


def _models(f: Formula) -> set[frozenset[int]]:
    if f is True:
        return {frozenset()}
    if f is False:
        return set()
    if isinstance(f, int):
        return {frozenset({f})}
    kind, subs = f
    if kind == "or":
        out: set[frozenset[int]] = set()
        for sub in subs:
            out |= _models(sub)
        return out
    out = {frozenset()}
    for sub in subs:
        sub_models = _models(sub)
        out = {m | sm for m in out for sm in sub_models}
        if not sub_models:
            return set()
    return out


def product_aba(a: Nba) -> Aba:
    """Pairs-with-obligation-bit product: state (q, s, b) requires every
    q-successor to be answered by some s-successor, the bit remembering an
    unanswered acceptance of Spoiler.  Accepting states are the bit-0 triples.
    """
    n = a.n_states

    def idx(q: int, s: int, b: int) -> int:
        return (q * n + s) * 2 + b

    delta = []
    for q in range(n):
        for s in range(n):
            for b in (0, 1):
                row = []
                for x in range(a.n_symbols):
                    if s in a.final:
                        bnext = 0
                    elif q in a.final:
                        bnext = 1
                    else:
                        bnext = b
                    clauses = []
                    for qd in a.successors(q, x):
                        lits = tuple(
                            idx(qd, sd, bnext) for sd in a.successors(s, x)
                        )
                        clauses.append(("or", lits) if lits else False)
                    if not clauses:
                        row.append(True)
                    elif any(c is False for c in clauses):
                        row.append(False)
                    else:
                        row.append(("and", tuple(clauses)))
                delta.append(tuple(row))
    return Aba(
        n_states=2 * n * n,
        alphabet=a.alphabet,
        delta=tuple(delta),
        accepting=frozenset(
            (q * n + s) * 2 for q in range(n) for s in range(n)
        ),
    )


def product_state(a: Nba, q: int, s: int, b: int) -> int:
    return (q * a.n_states + s) * 2 + b


def mh_to_nba(b: Aba, start: int, cap: int = DEFAULT_MH_CAP) -> Nba:
    """Breakpoint (owing-set) translation of an alternating automaton into an
    NBA, built over the reachable (set, owing) pairs from the start state."""
    if not 0 <= start < b.n_states:
        raise ValueError(f"start state {start} out of range")
    model_table: dict[tuple[int, int], list[frozenset[int]]] = {}

    def models_for(u: int, x: int) -> list[frozenset[int]]:
        key = (u, x)
        if key not in model_table:
            model_table[key] = minimal_models(b.delta[u][x])
        return model_table[key]

    start_set = frozenset({start})
    start_state = (start_set, start_set - b.accepting)
    index: dict[tuple[frozenset[int], frozenset[int]], int] = {start_state: 0}
    states = [start_state]
    transitions: set[tuple[int, int, int]] = set()
    frontier = [start_state]
    while frontier:
        state = frontier.pop()
        sset, owing = state
        src = index[state]
        members = sorted(sset)
        for x in range(len(b.alphabet)):
            per_member = [models_for(u, x) for u in members]
            if any(not models for models in per_member):
                continue  # a constant-false obligation kills this branch
            combos = 1
            for models in per_member:
                combos *= len(models)
            if combos > _MODEL_COMBO_CAP:
                raise CapExceeded(
                    f"minimal-model combinations exceed {_MODEL_COMBO_CAP}"
                )
            for choice in iter_product(*per_member):
                new_set = frozenset().union(*choice) if choice else frozenset()
                if owing:
                    carried = frozenset().union(
                        *(choice[i] for i, u in enumerate(members) if u in owing)
                    )
                    new_owing = carried - b.accepting
                else:
                    new_owing = new_set - b.accepting
                nxt = (new_set, new_owing)
                if nxt not in index:
                    if len(index) >= cap:
                        raise CapExceeded(
                            f"breakpoint construction exceeded cap {cap}"
                        )
                    index[nxt] = len(states)
                    states.append(nxt)
                    frontier.append(nxt)
                transitions.add((src, x, index[nxt]))
    return Nba(
        n_states=len(states),
        alphabet=b.alphabet,
        initial=frozenset({0}),
        final=frozenset(i for i, (_, owing) in enumerate(states) if not owing),
        transitions=frozenset(transitions),
        state_names=tuple(f"m{i}" for i in range(len(states))),
    )


@dataclass(frozen=True)
class FxLimits:
    max_states: int = DEFAULT_FX_MAX_STATES
    mh_cap: int = DEFAULT_MH_CAP
    complement_cap: int = langops.DEFAULT_COMPLEMENT_CAP


@dataclass(frozen=True)
class FxResult:
    relation: StateRelation
    counterexamples: dict = field(hash=False)


def fx_delayed_sim(a: Nba, limits: FxLimits | None = None) -> FxResult:
    """Fixed-word delayed simulation: pair (q, s) is related iff the product
    state (q, s, 0) accepts every word, decided per pair through the
    breakpoint translation and the language oracle's universality check.
    Counterexample lassos are kept for the non-related pairs."""
    limits = limits or FxLimits()
    if a.n_states > limits.max_states:
        raise ValueError(
            f"automaton has {a.n_states} states; fixed-word simulation is "
            f"guarded at {limits.max_states} (raise max_states to override)"
        )
    aba = product_aba(a)
    n = a.n_states
    bits = np.zeros((n, n), dtype=bool)
    counterexamples: dict[tuple[int, int], LassoWord] = {}
    for q in range(n):
        for s in range(n):
            nba = mh_to_nba(aba, product_state(a, q, s, 0), limits.mh_cap)
            ok, witness = langops.universal(nba, limits.complement_cap)
            bits[q, s] = ok
            if not ok:
                counterexamples[(q, s)] = witness
    return FxResult(StateRelation(n, bits), counterexamples)


@dataclass(frozen=True)
class PebbleGamePosition:
    """Spoiler position of the per-lasso multi-pebble delayed game."""

    q: int
    pebbles: frozenset[int]
    owing: frozenset[int]
    pending: bool
    idx: int


def _pebble_update(
    a: Nba,
    pebbles: frozenset[int],
    owing: frozenset[int],
    pending: bool,
    spoiler_final: bool,
    x: int,
    new_pebbles: frozenset[int],
) -> tuple[frozenset[int], bool]:
    """Owing-set bookkeeping for one round: propagate the active window, and
    open a fresh window right after the previous one discharged."""
    final = a.final
    if owing:
        propagated = frozenset(
            sd
            for sd in new_pebbles
            if sd not in final
            and all(
                p in owing for p in a.predecessors(sd, x) if p in pebbles
            )
        )
        return propagated, pending or spoiler_final
    if spoiler_final or pending:
        fresh = frozenset(
            sd
            for sd in new_pebbles
            if sd not in final
            and all(
                p not in final for p in a.predecessors(sd, x) if p in pebbles
            )
        )
        return fresh, False
    return frozenset(), False


def lasso_kpebble_delayed(
    a: Nba, q: int, s: int, k: int, w: LassoWord, position_cap: int = 200_000
) -> bool:
    """Duplicator's win in the k-pebble delayed game along the fixed lasso.

    Spoiler walks one state along the word; Duplicator moves up to k pebbles,
    each new pebble extending some old one.  Every Spoiler acceptance opens an
    obligation window that closes once every current pebble has passed through
    an accepting state since the window opened.
    """
    if k < 1:
        raise ValueError("need at least one pebble")
    w.check_alphabet(a.n_symbols)
    plen, L = len(w.prefix), len(w.prefix) + len(w.period)

    def advance(i: int) -> int:
        return i + 1 if i + 1 < L else plen

    initial = PebbleGamePosition(q, frozenset({s}), frozenset(), False, 0)
    spos: dict[PebbleGamePosition, int] = {initial: 0}
    spos_list = [initial]
    dpos: dict[tuple, int] = {}
    dpos_list: list[tuple] = []
    moves0 = set()
    moves1 = set()
    frontier = [initial]
    while frontier:
        pos = frontier.pop()
        pid = spos[pos]
        x = w.symbol_at(pos.idx)
        spoiler_final = pos.q in a.final
        nidx = advance(pos.idx)
        succ_pool = sorted({d for p in pos.pebbles for d in a.successors(p, x)})
        for qd in a.successors(pos.q, x):
            # The update depends on whether the source Spoiler state accepts,
            # so that flag must be part of the intermediate position.
            dkey = (qd, pos.pebbles, pos.owing, pos.pending, spoiler_final, pos.idx)
            if dkey not in dpos:
                dpos[dkey] = len(dpos_list)
                dpos_list.append(dkey)
                for size in range(1, min(k, len(succ_pool)) + 1):
                    for combo in combinations(succ_pool, size):
                        new_pebbles = frozenset(combo)
                        owing, pending = _pebble_update(
                            a,
                            pos.pebbles,
                            pos.owing,
                            pos.pending,
                            spoiler_final,
                            x,
                            new_pebbles,
                        )
                        nxt = PebbleGamePosition(
                            qd, new_pebbles, owing, pending, nidx
                        )
                        if nxt not in spos:
                            if len(spos) >= position_cap:
                                raise CapExceeded(
                                    f"pebble game exceeded {position_cap} positions"
                                )
                            spos[nxt] = len(spos_list)
                            spos_list.append(nxt)
                            frontier.append(nxt)
                        moves1.add((dpos[dkey], spos[nxt]))
            moves0.add((pid, dpos[dkey]))
    g = GameGraph(
        n0=len(spos_list),
        n1=len(dpos_list),
        moves0=frozenset(moves0),
        moves1=frozenset(moves1),
        target=frozenset(
            i
            for i, pos in enumerate(spos_list)
            if not pos.owing and not pos.pending
        ),
    )
    return 0 in solve_buchi(g)


POSITIVE_CONSISTENT = "POSITIVE-CONSISTENT"
COLLAPSE_CONFIRMED = "COLLAPSE-CONFIRMED"
COLLAPSE_VIOLATION = "COLLAPSE-VIOLATION"


def collapse_check(
    a: Nba,
    q: int,
    s: int,
    kmax: int,
    limits: FxLimits | None = None,
    sample_seed: int = 0,
    sample_size: int = 25,
) -> str:
    """Consistency check of the pebble hierarchy collapse for one state pair.

    Related pairs must win the single-pebble game on sampled lassos; for a
    non-related pair the counterexample word must defeat Duplicator at every
    pebble count up to kmax.  A violation indicates an implementation bug.
    """
    result = fx_delayed_sim(a, limits)
    if result.relation.bits[q, s]:
        pool = list(langops.enumerate_lassos(a.n_symbols, 3, 3))
        rng = random.Random(sample_seed)
        sample = pool if len(pool) <= sample_size else rng.sample(pool, sample_size)
        for w in sample:
            if not lasso_kpebble_delayed(a, q, s, 1, w):
                return COLLAPSE_VIOLATION
        return POSITIVE_CONSISTENT
    witness = result.counterexamples[(q, s)]
    for k in range(1, kmax + 1):
        if lasso_kpebble_delayed(a, q, s, k, witness):
            return COLLAPSE_VIOLATION
    return COLLAPSE_CONFIRMED
