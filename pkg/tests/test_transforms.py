import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from altgfg.automata import (
    DETERMINISTIC, NONDETERMINISTIC, UNIVERSAL, conj, dual, make_automaton,
)
from altgfg.deciders import is_gfg_ncw_g2, token_game
from altgfg.errors import EmptyAfterRestriction, NotBuchi, NotDeterministic, NotGFG, NotNCW
from altgfg.games import EVE, solve
from altgfg.generators import (
    ALTERNATING, GeneratorConfig, combinator_cn, fixtures, nondeterministic_part, random_automaton,
)
from altgfg.products import (
    LassoWord, all_boxes, bounded_equiv, intersection_witness, lasso_membership, lassos,
)
from altgfg.transforms.dealternate import (
    box_automaton, build_univ_acc_dpw, mh_breakpoint, minimal_boxes, path_guesser,
)
from altgfg.transforms.determinise import (
    cobuchi_determinise, complement_dpw, determinise_npw, npw_to_nbw, safra_determinise,
)
from altgfg.transforms.gfg_det import build_game_G, build_game_Gprime, gfg_determinise
from altgfg.transforms.ncw import (
    g2_winning_states, ncw_normalise, safe_suffix_witness, safe_zone, tune_acceptance,
)
from altgfg.transforms.reduce import quotient, reduce_nondet, simulation_reduce

W = LassoWord.of


def rand(seed, **kw):
    return random_automaton(GeneratorConfig(seed=seed, **kw))


def eve_wins(g):
    return solve(g, roots=[g.initial]).winner[g.initial] == EVE


# ---------------------------------------------------------------------------
# box words and the universal-acceptance automaton

def all_paths_accept(a, boxes, w):
    """Direct check on the lasso graph of ``(position, state)`` pairs."""
    length = len(w)
    edges = []
    for i in range(length):
        box = boxes[int(w.letter(i)[1:])]
        for q, r in box.relation:
            edges.append(((i, q), a.priority[q, box.letter, r], (w.next(i), r)))
    reach = {(0, a.initial)}
    frontier = [(0, a.initial)]
    while frontier:
        v = frontier.pop()
        for s, _, t in edges:
            if s == v and t not in reach:
                reach.add(t)
                frontier.append(t)
    for p in sorted({p for _, p, _ in edges if p % 2 == 1}):
        allowed = [(s, t) for s, q, t in edges if q <= p and s in reach]
        for s, q, t in edges:
            if q == p and s in reach and _reaches(allowed, t, s):
                return False
    return True


def _reaches(edges, src, dst):
    seen = {src}
    stack = [src]
    while stack:
        v = stack.pop()
        if v == dst:
            return True
        for s, t in edges:
            if s == v and t not in seen:
                seen.add(t)
                stack.append(t)
    return False


def test_universal_acceptance_on_one_step_fixture():
    a = fixtures()["fig-one-step"]
    boxes = all_boxes(a)
    dpw, used = build_univ_acc_dpw(a, boxes)
    assert dpw.kind == DETERMINISTIC
    for w in lassos(dpw.alphabet, 2, 2):
        assert lasso_membership(dpw, w) == all_paths_accept(a, used, w), w


def test_universal_acceptance_all_even_deterministic():
    a = make_automaton("ab", 2, 0, {(0, "a"): 1, (0, "b"): 0, (1, "a"): 0, (1, "b"): 1}, {},
                       default_priority=2)
    dpw, _ = build_univ_acc_dpw(a)
    assert all(lasso_membership(dpw, w) for w in lassos(dpw.alphabet, 2, 2))


def test_universal_acceptance_odd_cycle():
    # the b-loop on state 1 is the only rejecting cycle
    a = make_automaton("ab", 2, 0, {(0, "a"): 1, (0, "b"): 0, (1, "a"): 0, (1, "b"): 1},
                       {(0, "a", 1): 2, (0, "b", 0): 2, (1, "a", 0): 2, (1, "b", 1): 1})
    dpw, boxes = build_univ_acc_dpw(a)
    for w in lassos(dpw.alphabet, 3, 3):
        assert lasso_membership(dpw, w) == all_paths_accept(a, boxes, w)


def test_path_guesser_accepts_rejecting_paths():
    a = fixtures()["fig-one-step"]
    boxes = all_boxes(a)
    guesser = path_guesser(a, boxes)
    assert guesser.kind in (DETERMINISTIC, NONDETERMINISTIC)
    for w in lassos(guesser.alphabet, 2, 2):
        assert lasso_membership(guesser, w) == (not all_paths_accept(a, boxes, w))


def test_minimal_boxes_keep_the_language():
    a = fixtures()["fig-one-step"]
    assert len(minimal_boxes(a)) <= len(all_boxes(a))
    for x in fixtures().values():
        assert bounded_equiv(x, box_automaton(x), 4, 4).equivalent


@pytest.mark.parametrize("name", sorted(fixtures()))
def test_box_automaton_on_fixtures(name):
    a = fixtures()[name]
    b = box_automaton(a)
    assert b.kind in (DETERMINISTIC, NONDETERMINISTIC)
    assert bounded_equiv(a, b, 5, 5).equivalent


@settings(max_examples=12)
@given(st.integers(0, 10_000))
def test_box_automaton_random(seed):
    a = rand(seed, states=(2, 3), kind=ALTERNATING)
    assert bounded_equiv(a, box_automaton(a), 4, 4).equivalent


def test_box_of_deterministic_is_equivalent():
    a = rand(7, states=(2, 3), kind=DETERMINISTIC)
    assert bounded_equiv(a, box_automaton(a), 5, 5).equivalent


# ---------------------------------------------------------------------------
# breakpoint

def test_breakpoint_universal_hand_computed():
    a = make_automaton("a", 2, 0, {(0, "a"): conj(0, 1), (1, "a"): 1},
                       {(0, "a", 0): 1, (0, "a", 1): 2, (1, "a", 1): 2})
    assert a.kind == UNIVERSAL
    b = mh_breakpoint(a)
    assert b.names == (((0,), ()), ((0, 1), (0,)))
    assert b.successors[0, "a"] == ((1, 1),)
    assert b.successors[1, "a"] == ((1, 1),)
    assert bounded_equiv(a, b, 4, 4).equivalent


@settings(max_examples=25)
@given(st.integers(0, 10_000))
def test_breakpoint_random_abw(seed):
    a = rand(seed, states=(1, 3), priorities=(1, 2))
    assert bounded_equiv(a, mh_breakpoint(a), 4, 4).equivalent


def test_breakpoint_needs_buchi():
    with pytest.raises(NotBuchi):
        mh_breakpoint(fixtures()["fig-one-step"])


# ---------------------------------------------------------------------------
# determinisation

@settings(max_examples=30)
@given(st.integers(0, 10_000))
def test_npw_to_nbw(seed):
    p = rand(seed, states=(1, 4), kind=NONDETERMINISTIC)
    b = npw_to_nbw(p)
    assert b.index <= {1, 2}
    assert bounded_equiv(p, b, 4, 4).equivalent


def test_safra_on_inf_a():
    nbw = fixtures()["inf-a-nbw"]
    d = safra_determinise(nbw)
    assert d.kind == DETERMINISTIC and d.n <= 2
    assert bounded_equiv(nbw, d, 6, 6).equivalent


def test_safra_deterministic_input():
    a = rand(1, states=(2, 3), kind=DETERMINISTIC, priorities=(1, 2))
    d = safra_determinise(a)
    assert bounded_equiv(a, d, 5, 5).equivalent


@settings(max_examples=30)
@given(st.integers(0, 10_000))
def test_safra_random_nbw(seed):
    nbw = rand(seed, states=(1, 4), kind=NONDETERMINISTIC, priorities=(1, 2))
    d = safra_determinise(nbw)
    assert d.kind == DETERMINISTIC
    assert bounded_equiv(nbw, d, 4, 4).equivalent


@settings(max_examples=10)
@given(st.integers(0, 10_000))
def test_safra_exact_self_check(seed):
    nbw = rand(seed, states=(1, 3), kind=NONDETERMINISTIC, priorities=(1, 2))
    d = safra_determinise(nbw)
    # nothing accepted by the input is rejected by the output and vice versa
    assert intersection_witness(nbw, complement_dpw(d)) is None
    assert intersection_witness(d, complement_dpw(determinise_npw(nbw))) is None


@settings(max_examples=30)
@given(st.integers(0, 10_000))
def test_cobuchi_determinise(seed):
    ncw = rand(seed, states=(1, 4), kind=NONDETERMINISTIC, priorities=(0, 1))
    d = cobuchi_determinise(ncw)
    assert d.kind == DETERMINISTIC and d.index <= {0, 1}
    assert bounded_equiv(ncw, d, 4, 4).equivalent


@settings(max_examples=30)
@given(st.integers(0, 10_000))
def test_complement_dpw_is_exclusive(seed):
    d = rand(seed, states=(1, 4), kind=DETERMINISTIC)
    c = complement_dpw(d)
    for w in lassos(d.alphabet, 3, 3):
        assert lasso_membership(d, w) != lasso_membership(c, w)
    assert complement_dpw(c).priority == {k: p + 2 for k, p in d.priority.items()}


def test_complement_needs_deterministic():
    with pytest.raises(NotDeterministic):
        complement_dpw(fixtures()["union-nbw"])


def test_complement_of_inf_a():
    d = determinise_npw(fixtures()["inf-a-nbw"])
    c = complement_dpw(d)
    words = list(lassos("ab", 3, 3))[:20]
    for w in words:
        assert lasso_membership(c, w) == ("a" not in w.v)


@settings(max_examples=30)
@given(st.integers(0, 10_000))
def test_determinise_npw_random(seed):
    p = rand(seed, states=(1, 3), kind=NONDETERMINISTIC)
    d = determinise_npw(p)
    assert d.kind == DETERMINISTIC
    assert bounded_equiv(p, d, 4, 4).equivalent


def test_determinise_box_of_figure():
    b = box_automaton(fixtures()["fig-ex-alt-gfg"])
    d = determinise_npw(b)
    assert d.kind == DETERMINISTIC
    assert bounded_equiv(b, d, 5, 5).equivalent


# ---------------------------------------------------------------------------
# reductions

@settings(max_examples=40)
@given(st.integers(0, 10_000))
def test_reductions_preserve_language(seed):
    p = rand(seed, states=(1, 4), kind=NONDETERMINISTIC)
    for r in (quotient(p), simulation_reduce(p), reduce_nondet(p)):
        assert r.n <= p.n + 1
        assert bounded_equiv(p, r, 4, 4).equivalent


@settings(max_examples=40)
@given(st.integers(0, 10_000))
def test_simulation_reduce_preserves_gfg_for_ncw(seed):
    p = rand(seed, states=(1, 4), kind=NONDETERMINISTIC, priorities=(0, 1))
    assert is_gfg_ncw_g2(simulation_reduce(p)) == is_gfg_ncw_g2(p)


# ---------------------------------------------------------------------------
# games G and G' and the determinisation of GFG automata

def test_game_G_trivial_languages():
    f = fixtures()
    for name in ("accepting-sink", "rejecting-sink"):
        a = f[name]
        assert eve_wins(build_game_G(a, box_automaton(dual(a))))


def test_game_G_lost_on_half_gfg_figure():
    a = fixtures()["fig-ex-alt-gfg"]
    assert not eve_wins(build_game_G(a, box_automaton(dual(a))))


def test_game_Gprime_adam_wins():
    f = fixtures()
    for a in (f["accepting-sink"], f["rejecting-sink"], combinator_cn(f["trivial-dcw"])):
        assert not eve_wins(build_game_Gprime(a, box_automaton(a)))


def test_gfg_determinise_deterministic_input():
    a = rand(4, states=(2, 3), kind=DETERMINISTIC)
    d = gfg_determinise(a)
    assert d.kind == DETERMINISTIC
    assert d.index <= a.index
    assert bounded_equiv(a, d, 5, 5).equivalent


def test_gfg_determinise_combinator():
    a = combinator_cn(fixtures()["trivial-dcw"])
    d = gfg_determinise(a)
    assert d.kind == DETERMINISTIC
    assert d.index <= a.index <= {0, 1, 2}
    assert bounded_equiv(a, d, 5, 5).equivalent


def test_gfg_determinise_refuses_half_gfg():
    with pytest.raises(NotGFG):
        gfg_determinise(fixtures()["fig-ex-alt-gfg"])


# ---------------------------------------------------------------------------
# coBüchi normal form

def test_tune_acceptance_demotes_component_changes():
    # 0 -a/0-> 1 leaves the accepting component {0}; the loops stay accepting
    a = make_automaton("a", 2, 0, {(0, "a"): ("or", (0, 1)), (1, "a"): 1},
                       {(0, "a", 0): 0, (0, "a", 1): 0, (1, "a", 1): 0})
    t = tune_acceptance(a)
    assert t.priority == {(0, "a", 0): 0, (0, "a", 1): 1, (1, "a", 1): 0}


def test_safe_deterministic_automaton_is_unchanged():
    a = make_automaton("ab", 1, 0, {(0, "a"): 0, (0, "b"): 0}, {}, default_priority=0)
    norm = ncw_normalise(a)
    assert norm.automaton.n == 1 and norm.automaton.index == {0}
    data = safe_zone(norm)
    assert data.safe_zone == {0}
    assert data.delta_det == {(0, "a"): 0, (0, "b"): 0}


def test_normalise_rejects_non_ncw():
    with pytest.raises(NotNCW):
        ncw_normalise(fixtures()["inf-a-nbw"])


def test_restriction_matches_token_game_per_state():
    a = rand(11, states=(3, 4), kind=NONDETERMINISTIC, priorities=(0, 1))
    keep = g2_winning_states(a)
    for q in range(a.n):
        b = make_automaton(a.alphabet, a.n, q, dict(a.delta), dict(a.priority))
        g, _ = token_game(b, 2)
        assert (q in keep) == eve_wins(g)


def test_normalise_nondeterministic_part_of_figure():
    a = nondeterministic_part(fixtures()["fig-ex-alt-gfg"])
    ncw = make_automaton(a.alphabet, a.n, a.initial, dict(a.delta),
                         {k: 0 if p == 2 else 1 for k, p in a.priority.items()})
    try:
        norm = ncw_normalise(ncw)
    except EmptyAfterRestriction:
        assert not is_gfg_ncw_g2(ncw)
        return
    assert bounded_equiv(ncw, norm.automaton, 5, 5).equivalent


@settings(max_examples=40)
@given(st.integers(0, 10_000))
def test_normalisation_properties(seed):
    a = rand(seed, states=(1, 4), kind=NONDETERMINISTIC, priorities=(0, 1))
    gfg = is_gfg_ncw_g2(a)
    try:
        norm = ncw_normalise(a)
    except EmptyAfterRestriction:
        assert not gfg
        return
    c = norm.automaton
    assert c.index <= {0, 1}
    assert is_gfg_ncw_g2(c) == gfg
    if gfg:
        assert bounded_equiv(a, c, 4, 4).equivalent
    # the reachable-set component evolves deterministically with the word
    for moves in c.successors.values():
        assert len({norm.reach_of[r] for r, _ in moves}) == 1
        assert all(norm.state_of[r] is None or norm.state_of[r] in norm.kept for r, _ in moves)
    data = safe_zone(norm)
    assert data.safe_zone == {p for p in range(c.n) if (p, p) in data.winning_pairs}
    for (s, x), t in data.delta_det.items():
        assert s in data.safe_zone and t in data.safe_zone
        assert c.priority[s, x, t] == 0
    for q in range(c.n):
        assert any((p, q) in data.winning_pairs for p in range(c.n)
                   if norm.reach_of[p] == norm.reach_of[q])
    if gfg:
        for w in lassos(c.alphabet, 3, 3):
            if lasso_membership(c, w):
                assert safe_suffix_witness(norm, data, w) is not None
