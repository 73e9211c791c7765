import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

from altgfg.automata import DETERMINISTIC, NONDETERMINISTIC, UNIVERSAL, dual, make_automaton
from altgfg.errors import NotNondeterministic, UnknownLetter
from altgfg.games import EVE, brute_force_solve
from altgfg.generators import ALTERNATING, GeneratorConfig, fixtures, random_automaton
from altgfg.products import (
    LassoWord, bounded_equiv, enumerate_boxes, exact_equiv, lasso_game, lasso_membership, lassos,
    npw_emptiness, one_step_arena, synchronized_product, single_letter_arena,
)
from altgfg.transforms.dealternate import box_automaton

W = LassoWord.of


def boxes_by_replay(a, letter):
    """Reach relations of every positional Eve strategy, replayed on the one-step arena."""
    g = one_step_arena(a, letter)
    choice_points = [v for v in range(g.size) if g.owner[v] == EVE and len(g.out_edges[v]) > 1]
    relations = set()
    for picks in itertools.product(*[g.out_edges[v] for v in choice_points]):
        chosen = dict(zip(choice_points, picks))
        rel = set()
        for q in range(a.n):
            start = g.names.index(("s", 0, q))
            stack, seen = [start], {start}
            while stack:
                v = stack.pop()
                name = g.names[v]
                if name[0] == "s" and name[1] == 1:
                    rel.add((q, name[2]))
                    continue
                outs = [chosen[v]] if v in chosen else g.out_edges[v]
                for e in outs:
                    w = g.edges[e][2]
                    if w not in seen:
                        seen.add(w)
                        stack.append(w)
        relations.add(frozenset(rel))
    return relations


def test_one_step_fixture_has_four_boxes():
    a = fixtures()["fig-one-step"]
    boxes = enumerate_boxes(a, "a")
    expected = {
        frozenset({(0, 0), (0, 1), (1, 1), (1, 2), (2, 1)}),
        frozenset({(0, 0), (0, 1), (1, 1), (1, 2), (2, 2)}),
        frozenset({(0, 1), (0, 2), (1, 1), (1, 2), (2, 1)}),
        frozenset({(0, 1), (0, 2), (1, 1), (1, 2), (2, 2)}),
    }
    assert len(boxes) == 4
    assert {b.relation for b in boxes} == expected


def test_one_step_arena_shape():
    a = fixtures()["fig-one-step"]
    g = one_step_arena(a, "a")
    eve_choices = [v for v in range(g.size) if g.owner[v] == EVE and len(g.out_edges[v]) > 1
                   and g.names[v][0] == "f"]
    assert len(eve_choices) == 2
    assert set(g.terminals()) == {g.names.index(("s", 1, q)) for q in range(3)}


@given(st.integers(0, 5000))
def test_boxes_match_strategy_replay(seed):
    a = random_automaton(GeneratorConfig(seed=seed, states=(1, 3), kind=ALTERNATING))
    for x in a.alphabet:
        assert {b.relation for b in enumerate_boxes(a, x)} == boxes_by_replay(a, x)


@given(st.integers(0, 5000))
def test_one_step_position_count(seed):
    a = random_automaton(GeneratorConfig(seed=seed, states=(1, 3)))
    g = one_step_arena(a, "a")
    formula_positions = sum(len(a.nodes[q, "a"]) for q in range(a.n))
    exits = {g.names[v][2] for v in range(g.size) if g.names[v][:2] == ("s", 1)}
    assert g.size == a.n + formula_positions + len(exits)


def test_deterministic_and_universal_have_one_box():
    for kind in (DETERMINISTIC, UNIVERSAL):
        a = random_automaton(GeneratorConfig(seed=3, states=(2, 3), kind=kind))
        for x in a.alphabet:
            assert len(enumerate_boxes(a, x)) == 1


def test_unknown_letter():
    with pytest.raises(UnknownLetter):
        enumerate_boxes(fixtures()["fig-one-step"], "z")


def test_single_edge_product_is_one_step_arena():
    a = fixtures()["fig-one-step"]
    r = single_letter_arena(a, "a")
    g = synchronized_product(r, a)
    h = one_step_arena(a, "a")
    assert g.size == h.size and sorted(g.owner) == sorted(h.owner)
    assert len(g.edges) == len(h.edges)


def test_figure_language_samples():
    a = fixtures()["fig-ex-alt-gfg"]
    assert lasso_membership(a, W("", "bc"))
    assert not lasso_membership(a, W("", "b"))
    assert not lasso_membership(a, W("", "a"))
    assert lasso_membership(a, W("aab", "c"))


@given(st.integers(0, 5000))
def test_membership_matches_brute_force_game(seed):
    a = random_automaton(GeneratorConfig(seed=seed, states=(1, 2)))
    for w in lassos(a.alphabet, 2, 2):
        g = lasso_game(a, w)
        if g.size <= 12:
            assert lasso_membership(a, w, "game") == (brute_force_solve(g).winner[g.initial] == EVE)


@given(st.integers(0, 5000))
def test_run_simulation_matches_game(seed):
    for kind in (DETERMINISTIC, NONDETERMINISTIC):
        a = random_automaton(GeneratorConfig(seed=seed, states=(1, 4), kind=kind))
        for w in lassos(a.alphabet, 3, 3):
            assert lasso_membership(a, w) == lasso_membership(a, w, "game")


def test_lassos_are_canonical_and_distinct():
    ws = list(lassos("ab", 2, 2))
    assert len(ws) == len(set(ws))
    assert all(w == w.canonical() for w in ws)
    assert W("ab", "ab").canonical() == W("", "ab")


def test_empty_period_rejected():
    with pytest.raises(ValueError):
        W("a", "")


def test_bounded_equiv_examples():
    f = fixtures()
    assert bounded_equiv(f["fig-ex-alt"], f["fig-ex-alt"], 4, 4).equivalent
    assert bounded_equiv(f["fig-ex-alt"], f["fig-ex-alt-gfg"], 5, 5).equivalent
    res = bounded_equiv(f["fig-ex-alt"], dual(f["fig-ex-alt"]), 3, 3)
    assert not res.equivalent
    # the counterexample is the first lasso in sweep order
    first = next(w for w in lassos("abc", 3, 3)
                 if lasso_membership(f["fig-ex-alt"], w) != lasso_membership(dual(f["fig-ex-alt"]), w))
    assert res.counterexample == first


def test_npw_emptiness_examples():
    odd = make_automaton("a", 1, 0, {(0, "a"): 0}, {(0, "a", 0): 3})
    assert npw_emptiness(odd) == (True, None)
    even = make_automaton("a", 1, 0, {(0, "a"): 0}, {(0, "a", 0): 2})
    empty, w = npw_emptiness(even)
    assert not empty and w == W("", "a")
    with pytest.raises(NotNondeterministic):
        npw_emptiness(fixtures()["fig-ex-alt"])


@given(st.integers(0, 5000))
def test_npw_emptiness_matches_sweep(seed):
    a = random_automaton(GeneratorConfig(seed=seed, states=(1, 4), kind=NONDETERMINISTIC))
    empty, w = npw_emptiness(a)
    swept = [v for v in lassos(a.alphabet, 4, 4) if lasso_membership(a, v)]
    assert empty == (not swept)
    if not empty:
        assert lasso_membership(a, w)


def test_exact_equiv_examples():
    f = fixtures()
    inf_a = f["inf-a-nbw"]
    assert exact_equiv(inf_a, inf_a).equivalent
    fin_a = make_automaton("ab", 2, 0,
                           {(0, "a"): 0, (0, "b"): (("or", (0, 1))), (1, "a"): 1, (1, "b"): 1},
                           {(0, "a", 0): 1, (0, "b", 0): 1, (0, "b", 1): 2, (1, "a", 1): 1,
                            (1, "b", 1): 2})
    res = exact_equiv(inf_a, fin_a)
    assert not res.equivalent
    assert lasso_membership(inf_a, res.counterexample) != lasso_membership(fin_a, res.counterexample)
    x = f["fig-ex-alt-gfg"]
    assert exact_equiv(box_automaton(x), box_automaton(dual(dual(x)))).equivalent


@given(st.integers(0, 5000), st.integers(0, 5000))
def test_exact_equiv_agrees_with_bounded_counterexamples(s1, s2):
    cfg = dict(states=(1, 3), kind=NONDETERMINISTIC, priorities=(1, 2))
    a = random_automaton(GeneratorConfig(seed=s1, **cfg))
    b = random_automaton(GeneratorConfig(seed=s2, **cfg))
    bounded = bounded_equiv(a, b, 4, 4)
    exact = exact_equiv(a, b)
    if not bounded.equivalent:
        assert not exact.equivalent
    if not exact.equivalent:
        w = exact.counterexample
        assert lasso_membership(a, w) != lasso_membership(b, w)
