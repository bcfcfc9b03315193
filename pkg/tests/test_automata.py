import numpy as np
import pytest

from nbareduce.automata import (
    BaParseError,
    LassoWord,
    Nba,
    StateRelation,
    complete,
    fig_1a,
    fig_2,
    fig_3,
    fig_7,
    fig_9,
    induced_equivalence,
    parse_ba,
    quotient,
    random_nba,
    reverse,
    trim,
    write_ba,
    write_dot,
)
from nbareduce import langops

from conftest import iso_by_names, random_corpus


ALL_FIXTURES = [fig_1a(), fig_2(3), fig_2(5), fig_3(), fig_7(), fig_9()]


def test_parse_simple():
    a = parse_ba("[0]\na,[0]->[1]\nb,[1]->[1]\n[1]\n")
    assert a.n_states == 2
    assert a.initial == {0}
    assert a.final == {1}
    assert len(a.transitions) == 2
    assert a.alphabet == ("a", "b")


def test_parse_errors():
    with pytest.raises(BaParseError):
        parse_ba("")
    with pytest.raises(BaParseError, match="line 2"):
        parse_ba("x\na,b\ny\n")
    with pytest.raises(BaParseError):
        parse_ba("x\na,->y\n")
    # a bare state name wedged between transitions is not valid
    with pytest.raises(BaParseError):
        parse_ba("i\na,i->j\nstray\nb,j->i\nj\n")


def test_parse_write_roundtrip_fixtures():
    for a in ALL_FIXTURES:
        assert iso_by_names(parse_ba(write_ba(a)), a)


def test_write_fig7_accepting_section():
    text = write_ba(fig_7())
    lines = text.strip().split("\n")
    tail = [ln for ln in lines if "," not in ln][1:]  # initial line, then finals
    assert tail == ["p0", "p2"]


def test_write_no_transitions():
    a = Nba(1, ("a",), {0}, {0}, set(), ("s0",))
    assert write_ba(a) == "s0\ns0\n"


def test_roundtrip_byte_identity():
    for a in random_corpus(100, 5, 2, seed0=400, density=(0.2, 0.9)):
        if not a.transitions:
            continue
        normalized = parse_ba(write_ba(a))
        text1 = write_ba(normalized)
        text2 = write_ba(parse_ba(text1))
        assert text1 == text2


def test_quotient_identity():
    for a in ALL_FIXTURES:
        q, qmap = quotient(a, StateRelation.identity(a.n_states))
        assert qmap.n_classes == a.n_states
        assert iso_by_names(q, a)


def test_quotient_fig1a_matches_target():
    a = fig_1a()
    names = a.state_names
    merge = {("p", "q"), ("p'", "q'_b")}
    bits = np.eye(a.n_states, dtype=bool)
    for x, y in merge:
        i, j = names.index(x), names.index(y)
        bits[i, j] = bits[j, i] = True
    q, qmap = quotient(a, StateRelation(a.n_states, bits))
    assert q.n_states == 4
    # language agrees with the drawn 4-state target automaton
    target = parse_ba(
        "s\n"
        "a,s->s'\nb,s->s'\na,s->qc\nb,s->qc\nc,s->qc\n"
        "b,s'->f\nc,s'->f\nc,qc->f\n"
        "a,f->f\nb,f->f\nc,f->f\n"
        "f\n"
    )
    ok, _ = langops.equivalent(q, target)
    assert ok


def test_quotient_fig3_merge_accepts_b_a_omega():
    a = fig_3()
    bits = np.eye(5, dtype=bool)
    for i in (1, 2, 3):
        for j in (1, 2, 3):
            bits[i, j] = True
    q, _ = quotient(a, StateRelation(5, bits))
    assert q.n_states == 3
    b, aa = 1, 0
    assert langops.accepts_lasso(q, LassoWord((b,), (aa,)))


def test_quotient_rejects_non_equivalence():
    a = fig_3()
    bits = np.eye(5, dtype=bool)
    bits[0, 1] = True  # not symmetric
    with pytest.raises(ValueError, match="equivalence"):
        quotient(a, StateRelation(5, bits))


def test_quotient_never_shrinks_language():
    for a in random_corpus(40, 4, 2, seed0=4200):
        rel = induced_equivalence(random_relation(a.n_states, seed=a.n_states))
        q, _ = quotient(a, rel)
        for w in langops.enumerate_lassos(2, 4, 4):
            if langops.accepts_lasso(a, w):
                assert langops.accepts_lasso(q, w)


def random_relation(n, seed):
    rng = np.random.default_rng(seed)
    return StateRelation(n, rng.random((n, n)) < 0.3)


def test_induced_equivalence_of_preorder():
    for seed in range(30):
        pre = random_relation(6, seed).closure()
        eq = induced_equivalence(pre)
        expected = pre.intersection(pre.transpose())
        assert eq == expected
    ident = StateRelation.identity(5)
    assert induced_equivalence(ident) == ident


def test_induced_equivalence_brute_force():
    def brute(rel: StateRelation) -> StateRelation:
        n = rel.n
        reach = [[i == j or rel.bits[i, j] for j in range(n)] for i in range(n)]
        for k in range(n):
            for i in range(n):
                for j in range(n):
                    if reach[i][k] and reach[k][j]:
                        reach[i][j] = True
        bits = np.array(
            [[reach[i][j] and reach[j][i] for j in range(n)] for i in range(n)]
        )
        return StateRelation(n, bits)

    for seed in range(50):
        rel = random_relation(6, seed + 1000)
        got = induced_equivalence(rel)
        assert got == brute(rel)
        assert got.is_equivalence()


def test_reverse_involution():
    for a in ALL_FIXTURES:
        assert reverse(reverse(a)) == a
    loop = Nba(1, ("a",), {0}, set(), {(0, 0, 0)})
    assert reverse(loop) == loop


def test_reverse_fig3_structure():
    r = reverse(fig_3())
    assert (4, 0, 4) in r.transitions  # the a-loop survives reversal
    assert (4, 0, 1) in r.transitions and (4, 1, 2) in r.transitions
    assert (1, 0, 0) in r.transitions
    assert r.initial == fig_3().initial and r.final == fig_3().final


def test_complete():
    total = complete(fig_1a())
    assert total is complete(total)  # already total comes back unchanged
    one = Nba(1, ("a",), {0}, set(), set())
    done = complete(one)
    assert done.n_states == 2
    assert (0, 0, 1) in done.transitions and (1, 0, 1) in done.transitions
    assert done.initial == {0} and not done.final


def test_complete_preserves_language():
    for a in random_corpus(100, 5, 2, seed0=900, density=(0.0, 0.7)):
        c = complete(a)
        ok, _ = langops.equivalent(a, c)
        assert ok


def test_fig7_language_empty():
    assert langops.is_empty(fig_7()) is None


def test_fig3_membership():
    a = fig_3()
    aa, b = 0, 1
    assert langops.accepts_lasso(a, LassoWord((aa, aa), (aa,)))
    assert langops.accepts_lasso(a, LassoWord((aa, b), (aa,)))
    assert langops.accepts_lasso(a, LassoWord((b, b), (aa,)))
    assert not langops.accepts_lasso(a, LassoWord((b, aa), (aa,)))


def test_fig2_counts():
    a = fig_2(4)
    assert a.n_states == 5
    assert len(a.transitions) == 14
    with pytest.raises(ValueError):
        fig_2(2)


def test_random_nba_determinism_and_densities():
    a = random_nba(5, 2, 0.5, 0.3, seed=7)
    b = random_nba(5, 2, 0.5, 0.3, seed=7)
    assert a == b
    assert not random_nba(4, 2, 0.0, 0.5, seed=1).transitions
    full = random_nba(4, 2, 1.0, 0.5, seed=1)
    assert len(full.transitions) == 4 * 4 * 2
    assert random_nba(3, 1, 0.5, 0.0, seed=3).initial


def test_trim():
    a = parse_ba("i\na,i->x\na,y->x\nx\n")
    t = trim(a)
    assert t.n_states == 2
    assert set(t.state_names) == {"i", "x"}


def test_write_dot():
    text = write_dot(fig_3())
    assert "doublecircle" in text
    assert text.count("->") >= 7
    a = fig_1a()
    dot = write_dot(a)
    assert '"b,c"' in dot  # parallel edges share one label
