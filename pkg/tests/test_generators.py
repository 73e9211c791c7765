import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from altgfg.automata import classify, make_automaton, validate
from altgfg.deciders import is_exists_gfg_naive, is_forall_gfg_naive, is_gfg_apw
from altgfg.errors import BadAlphabet, BaseNotGFG
from altgfg.generators import (
    ALTERNATING, ANY, KINDS, NFA, GeneratorConfig, combinator_cn, fixtures, is_universal,
    pspace_reduction, random_automaton, random_corpus, random_nfa,
)
from altgfg.products import enumerate_boxes


def accepts(nfa, w):
    cur = {nfa.initial}
    for x in w:
        cur = {r for q in cur for r in nfa.moves.get((q, x), ())}
    return bool(cur & nfa.accepting)


def universal_by_enumeration(nfa, depth):
    """Shortest rejected words of an NFA with n states have length below 2**n."""
    words = [""]
    for _ in range(depth):
        if not all(accepts(nfa, w) for w in words):
            return False
        words = [w + x for w in words for x in nfa.alphabet]
    return all(accepts(nfa, w) for w in words)


@given(st.integers(0, 10**6), st.sampled_from(KINDS))
def test_same_seed_same_automaton(seed, kind):
    cfg = GeneratorConfig(seed=seed, states=(2, 4), kind=kind)
    assert random_automaton(cfg) == random_automaton(cfg)


@given(st.integers(0, 10**6), st.sampled_from(KINDS[1:]))
def test_requested_class_is_honoured(seed, kind):
    a = random_automaton(GeneratorConfig(seed=seed, states=(2, 3), kind=kind))
    assert classify(a) == kind


def test_thousand_samples_validate():
    for a in random_corpus(1000, 7, states=(1, 5), letters=3):
        assert validate(a) == []


@pytest.mark.parametrize("kwargs", [
    dict(states=(0, 2)), dict(states=(3, 2)), dict(priorities=(2, 1)), dict(letters=0),
    dict(density=0), dict(kind=ALTERNATING, states=(1, 1)),
])
def test_config_rejects_empty_ranges(kwargs):
    with pytest.raises(ValueError):
        GeneratorConfig(**kwargs)


def test_fixture_shapes():
    f = fixtures()
    assert f["fig-ex-alt"].n == 5
    assert len(enumerate_boxes(f["fig-one-step"], "a")) == 4
    assert random_automaton(GeneratorConfig()).kind in KINDS and ANY in KINDS


def test_combinator_on_accepting_dcw():
    a = combinator_cn(fixtures()["trivial-dcw"])
    assert validate(a) == []
    v = is_gfg_apw(a)
    assert v.gfg and is_exists_gfg_naive(a) and is_forall_gfg_naive(a)


def test_combinator_rejects_bad_inputs():
    no_b = make_automaton("a", 1, 0, {(0, "a"): 0}, {(0, "a", 0): 0})
    with pytest.raises(BadAlphabet):
        combinator_cn(no_b)
    with pytest.raises(BaseNotGFG):
        combinator_cn(_non_gfg_ncw())


def _non_gfg_ncw():
    # guess now whether only a or only b will follow
    delta = {(0, "a"): ("or", (1, 2)), (0, "b"): ("or", (1, 2)),
             (1, "a"): 1, (1, "b"): 3, (2, "a"): 3, (2, "b"): 2, (3, "a"): 3, (3, "b"): 3}
    prio = {(0, "a", 1): 0, (0, "a", 2): 0, (0, "b", 1): 0, (0, "b", 2): 0,
            (1, "a", 1): 0, (1, "b", 3): 1, (2, "a", 3): 1, (2, "b", 2): 0,
            (3, "a", 3): 1, (3, "b", 3): 1}
    return make_automaton("ab", 4, 0, delta, prio)


def test_pspace_reduction_examples():
    everything = NFA(1, 0, {(0, "a"): frozenset([0]), (0, "b"): frozenset([0])}, frozenset([0]))
    assert is_universal(everything)
    assert is_exists_gfg_naive(pspace_reduction(everything))
    only_a = NFA(2, 0, {(0, "a"): frozenset([1])}, frozenset([1]))
    assert not is_universal(only_a)
    assert not is_exists_gfg_naive(pspace_reduction(only_a))


def test_pspace_reduction_needs_ab():
    with pytest.raises(BadAlphabet):
        pspace_reduction(NFA(1, 0, {}, frozenset(), ("a", "c")))


@settings(max_examples=100)
@given(st.integers(0, 10**6))
def test_subset_universality_matches_enumeration(seed):
    nfa = random_nfa(random.Random(seed))
    assert is_universal(nfa) == universal_by_enumeration(nfa, 2 ** nfa.n)
