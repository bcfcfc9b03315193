"""Self-contained omega-language oracle for desk-scale Büchi automata.

Provides ultimately-periodic membership, emptiness with lasso extraction,
rank-based complementation, two-phase intersection, inclusion, equivalence,
and universality.  Every cap is an explicit parameter; exceeding one raises
CapExceeded rather than approximating.
"""

from __future__ import annotations

from itertools import product as iter_product

from .automata import LassoWord, Nba

DEFAULT_COMPLEMENT_CAP = 50_000


class CapExceeded(RuntimeError):
    """A construction grew past its configured reachable-state cap."""


def _sccs(n_nodes: int, succ) -> list[list[int]]:
    """Iterative Tarjan; ``succ(v)`` yields successors of node v."""
    index = [-1] * n_nodes
    low = [0] * n_nodes
    on_stack = [False] * n_nodes
    stack: list[int] = []
    counter = 0
    result: list[list[int]] = []
    for root in range(n_nodes):
        if index[root] != -1:
            continue
        work = [(root, iter(succ(root)))]
        index[root] = low[root] = counter
        counter += 1
        stack.append(root)
        on_stack[root] = True
        while work:
            v, it = work[-1]
            advanced = False
            for w in it:
                if index[w] == -1:
                    index[w] = low[w] = counter
                    counter += 1
                    stack.append(w)
                    on_stack[w] = True
                    work.append((w, iter(succ(w))))
                    advanced = True
                    break
                if on_stack[w]:
                    low[v] = min(low[v], index[w])
            if advanced:
                continue
            work.pop()
            if work:
                parent = work[-1][0]
                low[parent] = min(low[parent], low[v])
            if low[v] == index[v]:
                comp = []
                while True:
                    w = stack.pop()
                    on_stack[w] = False
                    comp.append(w)
                    if w == v:
                        break
                result.append(comp)
    return result


def accepts_lasso(a: Nba, w: LassoWord) -> bool:
    """Membership of the ultimately periodic word in L(a)."""
    w.check_alphabet(a.n_symbols)
    plen, L = len(w.prefix), len(w.prefix) + len(w.period)

    def advance(i: int) -> int:
        return i + 1 if i + 1 < L else plen

    seen: dict[int, int] = {}
    order: list[int] = []
    frontier: list[int] = []
    for q in a.initial:
        v = q * L
        if v not in seen:
            seen[v] = len(order)
            order.append(v)
            frontier.append(v)
    while frontier:
        v = frontier.pop()
        q, i = divmod(v, L)
        for d in a.successors(q, w.symbol_at(i)):
            nv = d * L + advance(i)
            if nv not in seen:
                seen[nv] = len(order)
                order.append(nv)
                frontier.append(nv)
    if not order:
        return False

    def succ(ci: int):
        q, i = divmod(order[ci], L)
        for d in a.successors(q, w.symbol_at(i)):
            yield seen[d * L + advance(i)]

    for comp in _sccs(len(order), succ):
        members = set(comp)
        nontrivial = len(comp) > 1 or comp[0] in succ(comp[0])
        if nontrivial and any(order[ci] // L in a.final for ci in comp):
            return True
    return False


def is_empty(a: Nba) -> LassoWord | None:
    """None iff L(a) is empty; otherwise a witness lasso through a reachable
    accepting cycle."""
    parent: dict[int, tuple[int, int] | None] = {}
    order: list[int] = []
    for q in sorted(a.initial):
        parent[q] = None
        order.append(q)
    head = 0
    while head < len(order):  # BFS, so the prefix comes out shortest
        q = order[head]
        head += 1
        for x in range(a.n_symbols):
            for d in a.successors(q, x):
                if d not in parent:
                    parent[d] = (q, x)
                    order.append(d)
    if not order:
        return None
    compact = {q: i for i, q in enumerate(order)}

    def succ(ci: int):
        for x in range(a.n_symbols):
            for d in a.successors(order[ci], x):
                yield compact[d]

    comps = _sccs(len(order), succ)
    scc_of: dict[int, int] = {}
    nontrivial: set[int] = set()
    for cid, comp in enumerate(comps):
        for ci in comp:
            scc_of[order[ci]] = cid
        if len(comp) > 1 or comp[0] in succ(comp[0]):
            nontrivial.add(cid)

    witness_final = next(
        (q for q in order if q in a.final and scc_of[q] in nontrivial), None
    )
    if witness_final is None:
        return None

    prefix: list[int] = []
    q = witness_final
    while parent[q] is not None:
        p, x = parent[q]
        prefix.append(x)
        q = p
    prefix.reverse()

    # Shortest cycle from the witness back to itself inside its SCC.
    cid = scc_of[witness_final]
    back: dict[int, tuple[int, int]] = {}
    bfs = [witness_final]
    while True:
        nxt: list[int] = []
        for q in bfs:
            for x in range(a.n_symbols):
                for d in a.successors(q, x):
                    if scc_of.get(d) != cid:
                        continue
                    if d == witness_final:
                        period = [x]
                        p = q
                        while p != witness_final:
                            pp, px = back[p]
                            period.append(px)
                            p = pp
                        period.reverse()
                        return LassoWord(tuple(prefix), tuple(period))
                    if d not in back:
                        back[d] = (q, x)
                        nxt.append(d)
        bfs = nxt


def _useful_trim(a: Nba) -> Nba:
    """Restrict to states that are reachable and can reach an accepting cycle.
    Language-preserving; may return an automaton with zero states."""

    def succ(q: int):
        for x in range(a.n_symbols):
            yield from a.successors(q, x)

    comps = _sccs(a.n_states, succ)
    good: set[int] = set()
    for comp in comps:
        nontrivial = len(comp) > 1 or comp[0] in succ(comp[0])
        if nontrivial and any(q in a.final for q in comp):
            good.update(comp)
    preds: list[list[int]] = [[] for _ in range(a.n_states)]
    for s, _x, d in a.transitions:
        preds[d].append(s)
    useful = set(good)
    frontier = list(good)
    while frontier:
        q = frontier.pop()
        for p in preds[q]:
            if p not in useful:
                useful.add(p)
                frontier.append(p)
    reach = set(a.initial)
    frontier = list(reach)
    while frontier:
        q = frontier.pop()
        for d in succ(q):
            if d not in reach:
                reach.add(d)
                frontier.append(d)
    keep = sorted(useful & reach)
    if len(keep) == a.n_states:
        return a
    index = {q: i for i, q in enumerate(keep)}
    kept = set(keep)
    return Nba(
        n_states=len(keep),
        alphabet=a.alphabet,
        initial=frozenset(index[q] for q in a.initial if q in kept),
        final=frozenset(index[q] for q in a.final if q in kept),
        transitions=frozenset(
            (index[s], x, index[d])
            for s, x, d in a.transitions
            if s in kept and d in kept
        ),
        state_names=tuple(a.state_names[q] for q in keep),
    )


def complement(a: Nba, cap: int = DEFAULT_COMPLEMENT_CAP) -> Nba:
    """Rank-based complementation: level rankings bounded by 2n, non-increasing
    along edges, final states on even ranks, breakpoint set over even ranks."""
    nba, _max_rank = _complement_with_meta(a, cap)
    return nba


def _rank_choices(bound: int, is_final: bool) -> tuple[int, ...]:
    # The top rank of each parity under the bound suffices: any valid ranking
    # lifts, parity-preserving, to one that always sits at the top of its
    # parity class, so completeness is kept while branching stays at most 2.
    if is_final:
        return (bound if bound % 2 == 0 else bound - 1,)
    if bound == 0:
        return (0,)
    return (bound, bound - 1)


def _complement_with_meta(a: Nba, cap: int) -> tuple[Nba, int]:
    at = _useful_trim(a)
    n = at.n_states
    top = 2 * n

    start_rank = tuple(sorted((q, top) for q in at.initial))
    start = (start_rank, frozenset(q for q, _ in start_rank))
    index: dict[tuple, int] = {start: 0}
    states: list[tuple] = [start]
    transitions: set[tuple[int, int, int]] = set()
    max_rank_seen = top if start_rank else 0
    frontier = [start]
    while frontier:
        state = frontier.pop()
        ranking, owing = state
        src = index[state]
        rank_of = dict(ranking)
        dom = list(rank_of)
        for x in range(at.n_symbols):
            if not dom:
                transitions.add((src, x, src))  # all runs died: accept forever
                continue
            bound: dict[int, int] = {}
            for p in dom:
                for d in at.successors(p, x):
                    cur = bound.get(d)
                    if cur is None or rank_of[p] < cur:
                        bound[d] = rank_of[p]
            succ_states = sorted(bound)
            choices = [
                [(d, r) for r in _rank_choices(bound[d], d in at.final)]
                for d in succ_states
            ]
            owing_succ: set[int] = set()
            for p in owing:
                owing_succ.update(at.successors(p, x))
            for combo in iter_product(*choices):
                new_ranking = tuple(combo)
                even = frozenset(d for d, r in combo if r % 2 == 0)
                new_owing = (frozenset(owing_succ) & even) if owing else even
                nxt = (new_ranking, new_owing)
                if nxt not in index:
                    if len(index) >= cap:
                        raise CapExceeded(
                            f"complement construction exceeded cap {cap}"
                        )
                    index[nxt] = len(states)
                    states.append(nxt)
                    frontier.append(nxt)
                    if combo:
                        max_rank_seen = max(
                            max_rank_seen, max(r for _, r in combo)
                        )
                transitions.add((src, x, index[nxt]))

    result = Nba(
        n_states=len(states),
        alphabet=a.alphabet,
        initial=frozenset({0}),
        final=frozenset(i for i, (_, owing) in enumerate(states) if not owing),
        transitions=frozenset(transitions),
        state_names=tuple(f"c{i}" for i in range(len(states))),
    )
    return _useful_trim(result), max_rank_seen


def intersect(a: Nba, b: Nba) -> Nba:
    """Two-phase Büchi product; the phase bit waits for a final of a, then for
    a final of b, and acceptance marks the states that reset the phase."""
    if a.alphabet != b.alphabet:
        raise ValueError("intersection requires identical alphabets")
    index: dict[tuple[int, int, int], int] = {}
    states: list[tuple[int, int, int]] = []
    frontier: list[tuple[int, int, int]] = []

    def intern(t):
        if t not in index:
            index[t] = len(states)
            states.append(t)
            frontier.append(t)
        return index[t]

    initial = frozenset(
        intern((p, q, 1)) for p in sorted(a.initial) for q in sorted(b.initial)
    )
    transitions = set()
    while frontier:
        t = frontier.pop()
        p, q, phase = t
        src = index[t]
        if phase == 1:
            nphase = 2 if p in a.final else 1
        else:
            nphase = 1 if q in b.final else 2
        for x in range(a.n_symbols):
            for pd in a.successors(p, x):
                for qd in b.successors(q, x):
                    transitions.add((src, x, intern((pd, qd, nphase))))
    final = frozenset(
        i for i, (p, q, phase) in enumerate(states) if phase == 2 and q in b.final
    )
    return Nba(
        n_states=len(states),
        alphabet=a.alphabet,
        initial=initial,
        final=final,
        transitions=frozenset(transitions),
        state_names=tuple(f"x{i}" for i in range(len(states))),
    )


def includes(
    a: Nba, b: Nba, cap: int = DEFAULT_COMPLEMENT_CAP
) -> tuple[bool, LassoWord | None]:
    """Decide L(a) subset of L(b); a failure comes with a witness lasso that a
    accepts and b rejects."""
    if a.alphabet != b.alphabet:
        raise ValueError("inclusion requires identical alphabets")
    witness = _bounded_gap_lasso(a, b, max_len=2)
    if witness is not None:
        return False, witness
    gap = intersect(a, complement(b, cap))
    w = is_empty(gap)
    return (w is None), w


def equivalent(
    a: Nba, b: Nba, cap: int = DEFAULT_COMPLEMENT_CAP
) -> tuple[bool, LassoWord | None]:
    """Language equivalence via both inclusions; witness from the failing side."""
    ok, w = includes(a, b, cap)
    if not ok:
        return False, w
    ok, w = includes(b, a, cap)
    if not ok:
        return False, w
    return True, None


def universal(
    a: Nba, cap: int = DEFAULT_COMPLEMENT_CAP
) -> tuple[bool, LassoWord | None]:
    """Decide L(a) = Sigma^omega; non-universality comes with a rejected lasso."""
    for w in enumerate_lassos(a.n_symbols, 2, 2):
        if not accepts_lasso(a, w):
            return False, w
    w = is_empty(complement(a, cap))
    return (w is None), w


def enumerate_lassos(n_symbols: int, max_prefix: int, max_period: int):
    """All lasso words with bounded prefix and period lengths."""
    for plen in range(max_prefix + 1):
        for prefix in iter_product(range(n_symbols), repeat=plen):
            for vlen in range(1, max_period + 1):
                for period in iter_product(range(n_symbols), repeat=vlen):
                    yield LassoWord(prefix, period)


def _bounded_gap_lasso(a: Nba, b: Nba, max_len: int) -> LassoWord | None:
    """Cheap pre-pass: search small lassos accepted by a and rejected by b."""
    for w in enumerate_lassos(a.n_symbols, max_len, max_len):
        if accepts_lasso(a, w) and not accepts_lasso(b, w):
            return w
    return None
