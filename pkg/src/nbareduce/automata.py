"""Büchi automaton core: types, BA-format I/O, quotients, fixtures, generators.

States and symbols are dense indices everywhere; names exist only for I/O.
All types are immutable after construction and all operations are pure.
"""

from __future__ import annotations

import functools
import random
from dataclasses import dataclass, replace

import numpy as np

Transition = tuple[int, int, int]  # (src, symbol index, dst)

_FORBIDDEN_NAME_PARTS = (",", "->")


class BaParseError(ValueError):
    """Raised on malformed BA-format input; carries the offending line number."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


def _check_name(name: str, kind: str) -> None:
    if not name:
        raise ValueError(f"empty {kind} name")
    for part in _FORBIDDEN_NAME_PARTS:
        if part in name:
            raise ValueError(f"{kind} name {name!r} contains {part!r}")


@dataclass(frozen=True)
class Nba:
    """Nondeterministic Büchi automaton over a named alphabet.

    ``transitions`` holds (src, symbol index, dst) triples.  ``state_names``
    defaults to the stringified indices; algorithms never look at names.
    """

    n_states: int
    alphabet: tuple[str, ...]
    initial: frozenset[int]
    final: frozenset[int]
    transitions: frozenset[Transition]
    state_names: tuple[str, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "alphabet", tuple(self.alphabet))
        object.__setattr__(self, "initial", frozenset(self.initial))
        object.__setattr__(self, "final", frozenset(self.final))
        object.__setattr__(self, "transitions", frozenset(self.transitions))
        names = tuple(self.state_names)
        if not names:
            names = tuple(str(i) for i in range(self.n_states))
        object.__setattr__(self, "state_names", names)
        self._validate()

    def _validate(self) -> None:
        if self.n_states < 0:
            raise ValueError("negative state count")
        if len(set(self.alphabet)) != len(self.alphabet):
            raise ValueError("duplicate alphabet symbols")
        for sym in self.alphabet:
            _check_name(sym, "symbol")
        if len(self.state_names) != self.n_states:
            raise ValueError("state_names length does not match n_states")
        if len(set(self.state_names)) != self.n_states:
            raise ValueError("duplicate state names")
        for name in self.state_names:
            _check_name(name, "state")
        for group in (self.initial, self.final):
            for q in group:
                if not 0 <= q < self.n_states:
                    raise ValueError(f"state {q} out of range")
        for src, sym, dst in self.transitions:
            if not (0 <= src < self.n_states and 0 <= dst < self.n_states):
                raise ValueError(f"transition endpoint out of range: {(src, sym, dst)}")
            if not 0 <= sym < len(self.alphabet):
                raise ValueError(f"transition symbol out of range: {(src, sym, dst)}")

    @property
    def n_symbols(self) -> int:
        return len(self.alphabet)

    def successors(self, q: int, sym: int) -> tuple[int, ...]:
        return _succ_map(self)[q][sym]

    def predecessors(self, q: int, sym: int) -> tuple[int, ...]:
        return _pred_map(self)[q][sym]

    def is_total(self) -> bool:
        succ = _succ_map(self)
        return all(
            succ[q][x] for q in range(self.n_states) for x in range(self.n_symbols)
        )


@functools.lru_cache(maxsize=512)
def _succ_map(a: Nba) -> tuple[tuple[tuple[int, ...], ...], ...]:
    table = [[[] for _ in range(a.n_symbols)] for _ in range(a.n_states)]
    for src, sym, dst in sorted(a.transitions):
        table[src][sym].append(dst)
    return tuple(tuple(tuple(row) for row in per_state) for per_state in table)


@functools.lru_cache(maxsize=512)
def _pred_map(a: Nba) -> tuple[tuple[tuple[int, ...], ...], ...]:
    table = [[[] for _ in range(a.n_symbols)] for _ in range(a.n_states)]
    for src, sym, dst in sorted(a.transitions):
        table[dst][sym].append(src)
    return tuple(tuple(tuple(row) for row in per_state) for per_state in table)


def adjacency(a: Nba) -> list[np.ndarray]:
    """Per-symbol boolean adjacency matrices, entry [src, dst]."""
    mats = [np.zeros((a.n_states, a.n_states), dtype=bool) for _ in range(a.n_symbols)]
    for src, sym, dst in a.transitions:
        mats[sym][src, dst] = True
    return mats


@dataclass(frozen=True, eq=False)
class StateRelation:
    """Square boolean relation over the states of one automaton.

    ``bits[i, j]`` means "state i is related to state j".
    """

    n: int
    bits: np.ndarray

    def __post_init__(self):
        arr = np.array(self.bits, dtype=bool)
        if arr.shape != (self.n, self.n):
            raise ValueError(f"relation shape {arr.shape} does not match n={self.n}")
        arr.setflags(write=False)
        object.__setattr__(self, "bits", arr)

    def __eq__(self, other):
        if not isinstance(other, StateRelation):
            return NotImplemented
        return self.n == other.n and bool(np.array_equal(self.bits, other.bits))

    def __hash__(self):
        return hash((self.n, self.bits.tobytes()))

    def __contains__(self, pair: tuple[int, int]) -> bool:
        i, j = pair
        return bool(self.bits[i, j])

    def pairs(self) -> list[tuple[int, int]]:
        return [(int(i), int(j)) for i, j in zip(*np.nonzero(self.bits))]

    def transpose(self) -> "StateRelation":
        return StateRelation(self.n, self.bits.T)

    def intersection(self, other: "StateRelation") -> "StateRelation":
        self._check_dim(other)
        return StateRelation(self.n, self.bits & other.bits)

    def union(self, other: "StateRelation") -> "StateRelation":
        self._check_dim(other)
        return StateRelation(self.n, self.bits | other.bits)

    def compose(self, other: "StateRelation") -> "StateRelation":
        """Relational composition: (i, k) iff exists j with (i, j) and (j, k)."""
        self._check_dim(other)
        return StateRelation(self.n, _bool_matmul(self.bits, other.bits))

    def closure(self) -> "StateRelation":
        """Reflexive-transitive closure."""
        reach = self.bits | np.eye(self.n, dtype=bool)
        while True:
            nxt = reach | _bool_matmul(reach, reach)
            if np.array_equal(nxt, reach):
                return StateRelation(self.n, reach)
            reach = nxt

    def is_reflexive(self) -> bool:
        return bool(self.bits.diagonal().all()) if self.n else True

    def is_symmetric(self) -> bool:
        return bool(np.array_equal(self.bits, self.bits.T))

    def is_transitive(self) -> bool:
        return bool((_bool_matmul(self.bits, self.bits) <= self.bits).all())

    def is_preorder(self) -> bool:
        return self.is_reflexive() and self.is_transitive()

    def is_equivalence(self) -> bool:
        return self.is_preorder() and self.is_symmetric()

    def subset_of(self, other: "StateRelation") -> bool:
        self._check_dim(other)
        return bool((self.bits <= other.bits).all())

    def _check_dim(self, other: "StateRelation") -> None:
        if self.n != other.n:
            raise ValueError(f"relation dimensions differ: {self.n} vs {other.n}")

    @classmethod
    def identity(cls, n: int) -> "StateRelation":
        return cls(n, np.eye(n, dtype=bool))

    @classmethod
    def full(cls, n: int) -> "StateRelation":
        return cls(n, np.ones((n, n), dtype=bool))

    @classmethod
    def from_pairs(cls, n: int, pairs) -> "StateRelation":
        bits = np.zeros((n, n), dtype=bool)
        for i, j in pairs:
            bits[i, j] = True
        return cls(n, bits)


def _bool_matmul(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    return (a.astype(np.uint8) @ b.astype(np.uint8)) > 0


@dataclass(frozen=True)
class LassoWord:
    """Ultimately periodic word prefix . period^omega, as symbol indices."""

    prefix: tuple[int, ...]
    period: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "prefix", tuple(self.prefix))
        object.__setattr__(self, "period", tuple(self.period))
        if not self.period:
            raise ValueError("lasso period must be nonempty")

    def symbol_at(self, i: int) -> int:
        if i < len(self.prefix):
            return self.prefix[i]
        return self.period[(i - len(self.prefix)) % len(self.period)]

    def check_alphabet(self, n_symbols: int) -> None:
        for sym in self.prefix + self.period:
            if not 0 <= sym < n_symbols:
                raise ValueError(f"lasso symbol {sym} out of range")

    def format(self, alphabet: tuple[str, ...]) -> str:
        u = ",".join(alphabet[s] for s in self.prefix)
        v = ",".join(alphabet[s] for s in self.period)
        return f"u={u} v={v}"


@dataclass(frozen=True)
class QuotientMap:
    """Surjection from states onto contiguous class indices."""

    class_of: tuple[int, ...]
    n_classes: int

    def __post_init__(self):
        object.__setattr__(self, "class_of", tuple(self.class_of))
        seen = set(self.class_of)
        if seen != set(range(self.n_classes)):
            raise ValueError("class indices not contiguous or some class empty")


def parse_ba(text: str) -> Nba:
    """Parse the line-oriented BA format.

    Lines before the first transition name initial states, a transition line is
    ``symbol,src->dst``, lines after the last transition name accepting states.
    State and symbol names are interned in first-appearance order.
    """
    raw_lines = text.split("\n")
    items: list[tuple[int, str]] = []
    for no, line in enumerate(raw_lines, start=1):
        line = line.strip()
        if line:
            items.append((no, line))
    if not items:
        raise BaParseError("empty input")

    def looks_like_transition(line: str) -> bool:
        return "," in line or "->" in line

    def parse_transition(no: int, line: str) -> tuple[str, str, str]:
        head, sep, rest = line.partition(",")
        if not sep:
            raise BaParseError(f"malformed transition {line!r}", no)
        src, sep, dst = rest.partition("->")
        if not sep:
            raise BaParseError(f"malformed transition {line!r} (missing '->')", no)
        if not head or not src or not dst:
            raise BaParseError(f"transition {line!r} references an empty name", no)
        if "," in rest or "->" in dst:
            raise BaParseError(f"malformed transition {line!r}", no)
        return head, src, dst

    transition_flags = [looks_like_transition(line) for _, line in items]
    first_tr = next((i for i, f in enumerate(transition_flags) if f), None)
    last_tr = None
    if first_tr is not None:
        last_tr = max(i for i, f in enumerate(transition_flags) if f)
        for i in range(first_tr, last_tr + 1):
            if not transition_flags[i]:
                no, line = items[i]
                raise BaParseError(
                    f"state name {line!r} between transition lines", no
                )

    state_index: dict[str, int] = {}
    names: list[str] = []

    def intern(name: str) -> int:
        if name not in state_index:
            state_index[name] = len(names)
            names.append(name)
        return state_index[name]

    symbol_index: dict[str, int] = {}
    symbols: list[str] = []

    def intern_symbol(name: str) -> int:
        if name not in symbol_index:
            symbol_index[name] = len(symbols)
            symbols.append(name)
        return symbol_index[name]

    if first_tr is None:
        initial_items, transition_items, accepting_items = items, [], []
    else:
        initial_items = items[:first_tr]
        transition_items = items[first_tr : last_tr + 1]
        accepting_items = items[last_tr + 1 :]

    initial = {intern(line) for _, line in initial_items}
    transitions = set()
    for no, line in transition_items:
        sym, src, dst = parse_transition(no, line)
        transitions.add((intern(src), intern_symbol(sym), intern(dst)))
    final = {intern(line) for _, line in accepting_items}

    return Nba(
        n_states=len(names),
        alphabet=tuple(symbols),
        initial=frozenset(initial),
        final=frozenset(final),
        transitions=frozenset(transitions),
        state_names=tuple(names),
    )


def write_ba(a: Nba) -> str:
    """Serialize to BA format, deterministically (name-sorted blocks, LF)."""
    lines = sorted(a.state_names[q] for q in a.initial)
    lines.extend(
        f"{sym},{src}->{dst}"
        for sym, src, dst in sorted(
            (a.alphabet[x], a.state_names[s], a.state_names[d])
            for s, x, d in a.transitions
        )
    )
    lines.extend(sorted(a.state_names[q] for q in a.final))
    return "\n".join(lines) + "\n" if lines else ""


def write_dot(a: Nba) -> str:
    """Export to Graphviz DOT; finals are doublecircle, parallel edges merged."""
    out = ["digraph nba {", "  rankdir=LR;"]
    for q in range(a.n_states):
        shape = "doublecircle" if q in a.final else "circle"
        out.append(f'  n{q} [label="{a.state_names[q]}", shape={shape}];')
    for q in sorted(a.initial):
        out.append(f"  init{q} [shape=point, style=invis];")
        out.append(f"  init{q} -> n{q};")
    labels: dict[tuple[int, int], list[int]] = {}
    for src, sym, dst in a.transitions:
        labels.setdefault((src, dst), []).append(sym)
    for (src, dst), syms in sorted(labels.items()):
        text = ",".join(a.alphabet[x] for x in sorted(syms))
        out.append(f'  n{src} -> n{dst} [label="{text}"];')
    out.append("}")
    return "\n".join(out) + "\n"


def _class_name(a: Nba, members: list[int]) -> str:
    if len(members) == 1:
        return a.state_names[members[0]]
    return "{" + "+".join(a.state_names[q] for q in members) + "}"


def quotient(a: Nba, eq: StateRelation) -> tuple[Nba, QuotientMap]:
    """Naive quotient by an equivalence: initial/final status and transitions
    are inherited from any class member."""
    if eq.n != a.n_states:
        raise ValueError(f"relation dimension {eq.n} does not match {a.n_states}")
    bad = _equivalence_violation(eq)
    if bad is not None:
        raise ValueError(f"relation is not an equivalence (violating pair {bad})")

    class_of = [-1] * a.n_states
    class_members: list[list[int]] = []
    for q in range(a.n_states):
        if class_of[q] >= 0:
            continue
        cid = len(class_members)
        members = [int(m) for m in np.nonzero(eq.bits[q])[0]]
        for m in members:
            class_of[m] = cid
        class_members.append(members)

    n_classes = len(class_members)
    qmap = QuotientMap(tuple(class_of), n_classes)
    quot = Nba(
        n_states=n_classes,
        alphabet=a.alphabet,
        initial=frozenset(class_of[q] for q in a.initial),
        final=frozenset(class_of[q] for q in a.final),
        transitions=frozenset(
            (class_of[s], x, class_of[d]) for s, x, d in a.transitions
        ),
        state_names=tuple(_class_name(a, members) for members in class_members),
    )
    return quot, qmap


def _equivalence_violation(r: StateRelation) -> tuple | None:
    diag = r.bits.diagonal()
    if r.n and not diag.all():
        q = int(np.nonzero(~diag)[0][0])
        return (q, q)
    asym = r.bits & ~r.bits.T
    if asym.any():
        i, j = np.nonzero(asym)
        return (int(i[0]), int(j[0]))
    gap = _bool_matmul(r.bits, r.bits) & ~r.bits
    if gap.any():
        i, k = np.nonzero(gap)
        return (int(i[0]), int(k[0]))
    return None


def induced_equivalence(r: StateRelation) -> StateRelation:
    """Largest equivalence inside the reflexive-transitive closure of r."""
    closure = r.closure()
    return closure.intersection(closure.transpose())


def reverse(a: Nba) -> Nba:
    """Flip every transition; initial and final sets are carried unchanged."""
    return replace(
        a, transitions=frozenset((d, x, s) for s, x, d in a.transitions)
    )


def complete(a: Nba) -> Nba:
    """Make the transition relation total by routing missing (state, symbol)
    pairs to a fresh non-initial, non-final sink. Total inputs come back as-is."""
    missing = [
        (q, x)
        for q in range(a.n_states)
        for x in range(a.n_symbols)
        if not a.successors(q, x)
    ]
    if not missing:
        return a
    sink = a.n_states
    sink_name = "sink"
    while sink_name in a.state_names:
        sink_name += "'"
    transitions = set(a.transitions)
    transitions.update((q, x, sink) for q, x in missing)
    transitions.update((sink, x, sink) for x in range(a.n_symbols))
    return Nba(
        n_states=a.n_states + 1,
        alphabet=a.alphabet,
        initial=a.initial,
        final=a.final,
        transitions=frozenset(transitions),
        state_names=a.state_names + (sink_name,),
    )


def trim(a: Nba) -> Nba:
    """Drop states unreachable from the initial set, renumbering densely."""
    seen = set(a.initial)
    frontier = list(a.initial)
    while frontier:
        q = frontier.pop()
        for x in range(a.n_symbols):
            for d in a.successors(q, x):
                if d not in seen:
                    seen.add(d)
                    frontier.append(d)
    if len(seen) == a.n_states:
        return a
    kept = sorted(seen)
    index = {q: i for i, q in enumerate(kept)}
    return Nba(
        n_states=len(kept),
        alphabet=a.alphabet,
        initial=frozenset(index[q] for q in a.initial),
        final=frozenset(index[q] for q in a.final if q in seen),
        transitions=frozenset(
            (index[s], x, index[d])
            for s, x, d in a.transitions
            if s in seen and d in seen
        ),
        state_names=tuple(a.state_names[q] for q in kept),
    )


def _nba_from_names(names, alphabet, initial, final, edges) -> Nba:
    idx = {name: i for i, name in enumerate(names)}
    sym = {s: i for i, s in enumerate(alphabet)}
    return Nba(
        n_states=len(names),
        alphabet=tuple(alphabet),
        initial=frozenset(idx[q] for q in initial),
        final=frozenset(idx[q] for q in final),
        transitions=frozenset((idx[s], sym[x], idx[d]) for s, x, d in edges),
        state_names=tuple(names),
    )


def fig_1a() -> Nba:
    """Six-state example where proxy quotienting merges two state pairs."""
    names = ["p", "p'", "p''", "q", "q'_b", "q'_c"]
    edges = [
        ("p", "a", "p'"),
        ("p'", "b", "p''"),
        ("p'", "c", "p''"),
        ("p''", "a", "p''"),
        ("p''", "b", "p''"),
        ("p''", "c", "p''"),
        ("q", "a", "q'_b"),
        ("q", "b", "q'_b"),
        ("q", "a", "q'_c"),
        ("q", "b", "q'_c"),
        ("q", "c", "q'_c"),
        ("q'_b", "b", "p''"),
        ("q'_c", "c", "p''"),
    ]
    return _nba_from_names(names, ("a", "b", "c"), ["p", "q"], ["p''"], edges)


def fig_2(k: int) -> Nba:
    """Ring of k outer states plus a hub; the delayed-proxy quotient collapses
    the ring to a single class."""
    if k < 3:
        raise ValueError("fig_2 requires k >= 3")
    names = [f"q{i}" for i in range(k)] + ["s"]
    edges = [("q0", "b", "q0")]
    for i in range(k - 1):
        edges.append((f"q{i}", "a", f"q{i + 1}"))
    edges.append((f"q{k - 1}", "a", "q0"))
    edges.append((f"q{k - 1}", "b", "q0"))
    edges.append(("s", "b", "s"))
    for i in range(k):
        edges.append(("s", "b", f"q{i}"))
        edges.append((f"q{i}", "a", "s"))
    return _nba_from_names(names, ("a", "b"), ["q0"], ["q0"], edges)


def fig_3() -> Nba:
    """Five-state example where merging states q1, q2, q3 grows the language."""
    names = [f"q{i}" for i in range(5)]
    edges = [
        ("q0", "a", "q1"),
        ("q0", "a", "q2"),
        ("q0", "b", "q3"),
        ("q1", "a", "q4"),
        ("q2", "b", "q4"),
        ("q3", "b", "q4"),
        ("q4", "a", "q4"),
    ]
    return _nba_from_names(names, ("a", "b"), ["q0"], ["q4"], edges)


def fig_7() -> Nba:
    """Unary four-state automaton with empty language whose delayed-containment
    quotient wrongly accepts the only infinite word."""
    names = ["p0", "p1", "p2", "p3"]
    edges = [
        ("p0", "a", "p1"),
        ("p1", "a", "p1"),
        ("p1", "a", "p2"),
        ("p2", "a", "p3"),
        ("p3", "a", "p3"),
    ]
    return _nba_from_names(names, ("a",), ["p0"], ["p0", "p2"], edges)


def fig_9() -> Nba:
    """Unary seven-state regression instance for unsound delayed-jump merging."""
    names = [f"q{i}" for i in range(7)]
    edges = [
        ("q0", "a", "q1"),
        ("q0", "a", "q2"),
        ("q0", "a", "q3"),
        ("q0", "a", "q4"),
        ("q1", "a", "q2"),
        ("q2", "a", "q2"),
        ("q2", "a", "q3"),
        ("q3", "a", "q5"),
        ("q4", "a", "q3"),
        ("q5", "a", "q6"),
        ("q6", "a", "q6"),
    ]
    return _nba_from_names(names, ("a",), ["q0"], ["q1", "q4", "q5"], edges)


FIXTURES = {
    "fig1a": fig_1a,
    "fig3": fig_3,
    "fig7": fig_7,
    "fig9": fig_9,
}


def _symbol_names(k: int) -> tuple[str, ...]:
    letters = "abcdefghijklmnopqrstuvwxyz"
    return tuple(letters[i] if i < 26 else f"s{i}" for i in range(k))


def random_nba(
    n_states: int,
    n_symbols: int,
    transition_density: float,
    final_density: float,
    seed: int,
) -> Nba:
    """Seed-deterministic random automaton; guarantees at least one initial
    state but not totality."""
    if n_states < 1 or n_symbols < 1:
        raise ValueError("need at least one state and one symbol")
    if not (0.0 <= transition_density <= 1.0 and 0.0 <= final_density <= 1.0):
        raise ValueError("densities must lie in [0, 1]")
    rng = random.Random(seed)
    transitions = {
        (q, x, d)
        for q in range(n_states)
        for x in range(n_symbols)
        for d in range(n_states)
        if rng.random() < transition_density
    }
    final = {q for q in range(n_states) if rng.random() < final_density}
    initial = {q for q in range(n_states) if rng.random() < 0.5}
    if not initial:
        initial = {rng.randrange(n_states)}
    return Nba(
        n_states=n_states,
        alphabet=_symbol_names(n_symbols),
        initial=frozenset(initial),
        final=frozenset(final),
        transitions=frozenset(transitions),
        state_names=tuple(f"q{i}" for i in range(n_states)),
    )
