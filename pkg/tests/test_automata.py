import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

from altgfg.automata import (
    ALTERNATING, AND, DETERMINISTIC, NONDETERMINISTIC, OR, UNIVERSAL, canonical, classify,
    conj, disj, dual, evaluate, from_successors, make_automaton, minimal_models, reachable_states,
    restrict, swap, trim, validate,
)
from altgfg.errors import InitialRemoved
from altgfg.generators import GeneratorConfig, fixtures, random_automaton
from altgfg.products import bounded_equiv, lasso_membership, lassos


def formulas(max_atoms=4):
    leaves = st.integers(0, max_atoms - 1)
    return st.recursive(
        leaves,
        lambda kids: st.tuples(st.sampled_from([AND, OR]), st.lists(kids, min_size=1, max_size=3)).map(
            lambda t: conj(*t[1]) if t[0] == AND else disj(*t[1])),
        max_leaves=8,
    )


def truth_table_models(f, universe):
    sat = [frozenset(s) for k in range(len(universe) + 1)
           for s in itertools.combinations(universe, k) if evaluate(f, set(s))]
    return {s for s in sat if not any(t < s for t in sat)}


def one_state(f=0, p=0):
    return make_automaton("a", 1, 0, {(0, "a"): f}, {(0, "a", 0): p})


def test_validate_clean_one_state():
    assert validate(one_state()) == []


def test_validate_reports_stray_priority():
    a = make_automaton("a", 1, 0, {(0, "a"): 0}, {(0, "a", 0): 0, (0, "a", 5): 1})
    problems = validate(a)
    assert len(problems) == 1 and "stray priority" in problems[0]


def test_validate_reports_dangling_atom_and_missing_priority():
    a = make_automaton("a", 1, 0, {(0, "a"): disj(0, 3)}, {(0, "a", 0): 0})
    problems = validate(a)
    assert any("dangling" in p for p in problems)
    assert any("missing priority" in p for p in problems)


def test_one_step_fixture_is_valid_and_alternating():
    a = fixtures()["fig-one-step"]
    assert validate(a) == []
    assert classify(a) == ALTERNATING
    assert a.delta[0, "a"] == (OR, ((AND, (0, 1)), (AND, (1, 2))))


def test_classify_basic_classes():
    assert classify(one_state()) == DETERMINISTIC
    nd = make_automaton("a", 2, 0, {(0, "a"): disj(0, 1), (1, "a"): 1}, {}, default_priority=0)
    assert classify(nd) == NONDETERMINISTIC
    assert classify(dual(nd)) == UNIVERSAL


@given(st.integers(0, 10_000))
def test_dual_classes_swap(seed):
    a = random_automaton(GeneratorConfig(seed=seed))
    expected = {DETERMINISTIC: DETERMINISTIC, NONDETERMINISTIC: UNIVERSAL,
                UNIVERSAL: NONDETERMINISTIC, ALTERNATING: ALTERNATING}
    assert classify(dual(a)) == expected[classify(a)]


@given(st.integers(0, 10_000))
def test_dual_twice_shifts_priorities_by_two(seed):
    a = random_automaton(GeneratorConfig(seed=seed))
    b = dual(dual(a))
    assert b.delta == a.delta
    assert b.priority == {k: p + 2 for k, p in a.priority.items()}


def test_dual_complements_on_fifty_random_automata():
    for seed in range(50):
        a = random_automaton(GeneratorConfig(seed=seed, states=(1, 3), letters=2))
        d = dual(a)
        for w in lassos(a.alphabet, 3, 3):
            assert lasso_membership(a, w, "game") != lasso_membership(d, w, "game"), (seed, w)


@given(formulas())
def test_minimal_models_match_truth_table(f):
    assert minimal_models(f) == truth_table_models(f, range(4))


def test_minimal_models_examples():
    assert minimal_models(2) == {frozenset([2])}
    f = disj(conj(0, 1), conj(1, 2))
    assert minimal_models(f) == {frozenset([0, 1]), frozenset([1, 2])}


@given(formulas())
def test_swap_is_boolean_dual(f):
    universe = range(4)
    for k in range(5):
        for s in itertools.combinations(universe, k):
            rest = set(universe) - set(s)
            assert evaluate(swap(f), set(s)) == (not evaluate(f, rest))


@given(formulas())
def test_canonical_is_idempotent(f):
    assert canonical(canonical(f)) == canonical(f)


def test_restrict_keep_all_is_identity():
    a = fixtures()["fig-one-step"]
    assert restrict(a, range(a.n)) == a


def test_restrict_drops_q2_from_one_step_fixture():
    a = fixtures()["fig-one-step"]
    b = restrict(a, {0, 1})
    assert b.delta[0, "a"] == conj(0, 1)
    sink = 2
    assert b.delta[1, "a"] == sink
    assert b.priority[1, "a", sink] % 2 == 1
    assert validate(b) == []


def test_restrict_refuses_to_drop_initial():
    with pytest.raises(InitialRemoved):
        restrict(fixtures()["fig-one-step"], {1, 2})


@given(st.integers(0, 10_000))
def test_trim_preserves_language(seed):
    a = random_automaton(GeneratorConfig(seed=seed, states=(1, 4)))
    b = trim(a)
    assert b.n == len(reachable_states(a))
    assert bounded_equiv(a, b, 3, 3).equivalent


def test_restrict_unreachable_state_preserves_language():
    a = make_automaton("ab", 3, 0,
                       {(0, "a"): disj(0, 1), (0, "b"): 0, (1, "a"): 1, (1, "b"): 0,
                        (2, "a"): 0, (2, "b"): 2},
                       {(0, "a", 0): 1, (0, "a", 1): 2, (0, "b", 0): 1, (1, "a", 1): 2,
                        (1, "b", 0): 1, (2, "a", 0): 0, (2, "b", 2): 0})
    assert bounded_equiv(a, restrict(a, {0, 1}), 5, 5).equivalent


def test_from_successors_keeps_best_priority_and_adds_sink():
    a = from_successors("ab", 1, 0, {(0, "a"): [(0, 3), (0, 2), (0, 1)]})
    assert a.priority[0, "a", 0] == 2
    assert a.n == 2
    assert a.delta[0, "b"] == 1 and a.priority[1, "a", 1] == 1


def test_default_priority_expands():
    a = make_automaton("a", 2, 0, {(0, "a"): disj(0, 1), (1, "a"): 1}, {(0, "a", 1): 2},
                       default_priority=1)
    assert a.priority == {(0, "a", 0): 1, (0, "a", 1): 2, (1, "a", 1): 1}


def test_fixtures_validate():
    for name, a in fixtures().items():
        assert validate(a) == [], name
