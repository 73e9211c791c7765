"""Test-case factories: named fixtures, random automata and two constructions.

``combinator_cn`` glues a good-for-games coBüchi automaton and its dual
behind a fresh initial state.  ``pspace_reduction`` turns a finite-word
NFA into an alternating automaton that is half good-for-games exactly
when the NFA is universal.
"""
from __future__ import annotations

import random
from dataclasses import dataclass

from .automata import (
    ALTERNATING, DETERMINISTIC, NONDETERMINISTIC, UNIVERSAL,
    Automaton, atoms, conj, disj, dual, make_automaton, validate,
)
from .errors import BadAlphabet, BaseNotGFG

ANY = "any"
KINDS = (ANY, DETERMINISTIC, NONDETERMINISTIC, UNIVERSAL, ALTERNATING)


@dataclass(frozen=True)
class GeneratorConfig:
    seed: int = 0
    states: tuple = (1, 3)
    letters: int = 2
    priorities: tuple = (0, 3)
    density: float = 2.0
    kind: str = ANY

    def __post_init__(self):
        if not 1 <= self.states[0] <= self.states[1]:
            raise ValueError("empty state range")
        if not 0 <= self.priorities[0] <= self.priorities[1]:
            raise ValueError("empty priority range")
        if self.letters < 1:
            raise ValueError("need at least one letter")
        if self.density <= 0:
            raise ValueError("density must be positive")
        if self.kind == ALTERNATING and self.states[1] < 2:
            raise ValueError("alternation needs at least two states")


def _alphabet(k):
    return tuple("abcdefghijklmnopqrstuvwxyz"[:k])


def _atom_count(rng, density):
    k = 1
    stay = max(0.0, (density - 1.0) / density)
    while k < 5 and rng.random() < stay:
        k += 1
    return k


def _formula(rng, n, kind, density):
    k = _atom_count(rng, density)
    if kind == DETERMINISTIC:
        return rng.randrange(n)
    picks = [rng.randrange(n) for _ in range(k)]
    if kind == NONDETERMINISTIC:
        return disj(*picks)
    if kind == UNIVERSAL:
        return conj(*picks)
    parts = list(picks)
    while len(parts) > 1:
        i = rng.randrange(len(parts) - 1)
        op = conj if rng.random() < 0.5 else disj
        parts[i:i + 2] = [op(parts[i], parts[i + 1])]
    return parts[0]


def _draw(rng, cfg):
    lo, hi = cfg.states
    if cfg.kind == ALTERNATING:
        lo = max(lo, 2)
    n = rng.randint(lo, hi)
    alphabet = _alphabet(cfg.letters)
    delta = {}
    prio = {}
    for q in range(n):
        for x in alphabet:
            f = _formula(rng, n, cfg.kind, cfg.density)
            delta[q, x] = f
            for r in atoms(f):
                prio[q, x, r] = rng.randint(*cfg.priorities)
    return make_automaton(alphabet, n, 0, delta, prio)


def random_automaton(cfg):
    """Seeded random automaton; the same config always yields the same automaton."""
    rng = random.Random(cfg.seed)
    for _ in range(1000):
        a = _draw(rng, cfg)
        if cfg.kind == ANY or a.kind == cfg.kind:
            return a
    raise ValueError("could not satisfy class constraint %r" % cfg.kind)


def random_corpus(count, seed, **kwargs):
    return [random_automaton(GeneratorConfig(seed=seed * 100003 + i, **kwargs)) for i in range(count)]


# ---------------------------------------------------------------------------
# fixtures

def _fig_one_step():
    delta = {
        (0, "a"): disj(conj(0, 1), conj(1, 2)),
        (1, "a"): conj(1, 2),
        (2, "a"): disj(1, 2),
    }
    prio = {
        (0, "a", 0): 3, (0, "a", 1): 2, (0, "a", 2): 6,
        (1, "a", 1): 4, (1, "a", 2): 5,
        (2, "a", 1): 3, (2, "a", 2): 5,
    }
    return make_automaton("a", 3, 0, delta, prio, names=("q0", "q1", "q2"))


def _fig_ex_alt():
    # states A B C D and a rejecting sink; B and D are accepting, which
    # becomes priority 2 on every transition entering them
    A, B, C, D, S = range(5)
    delta = {
        (A, "a"): A, (A, "b"): disj(A, B), (A, "c"): disj(A, B),
        (B, "a"): S, (B, "b"): conj(B, C), (B, "c"): B,
        (C, "a"): S, (C, "b"): C, (C, "c"): D,
        (D, "a"): S, (D, "b"): D, (D, "c"): D,
        (S, "a"): S, (S, "b"): S, (S, "c"): S,
    }
    prio = {}
    for (q, x), f in delta.items():
        for r in atoms(f):
            prio[q, x, r] = 2 if r in (B, D) else 1
    return make_automaton("abc", 5, A, delta, prio, names=("A", "B", "C", "D", "reject"))


def _fig_ex_alt_gfg():
    # B is accepting; a run may wait in C on b only finitely often in a row
    A, B, C, S = range(4)
    delta = {
        (A, "a"): A, (A, "b"): disj(A, B), (A, "c"): disj(A, B),
        (B, "a"): S, (B, "b"): conj(B, C), (B, "c"): B,
        (C, "a"): S, (C, "b"): C, (C, "c"): B,
        (S, "a"): S, (S, "b"): S, (S, "c"): S,
    }
    prio = {}
    for (q, x), f in delta.items():
        for r in atoms(f):
            prio[q, x, r] = 2 if r == B else 1
    return make_automaton("abc", 4, A, delta, prio, names=("A", "B", "C", "reject"))


def _sink(priority):
    return make_automaton("ab", 1, 0, {(0, "a"): 0, (0, "b"): 0},
                          {(0, "a", 0): priority, (0, "b", 0): priority})


def _inf_a_nbw():
    # deterministic: a priority 2, b priority 1
    return make_automaton("ab", 1, 0, {(0, "a"): 0, (0, "b"): 0},
                          {(0, "a", 0): 2, (0, "b", 0): 1})


def _union_nbw():
    # initial state commits either to "infinitely many a" or to "finitely many a"
    S, X, Y, Z, R = range(5)
    delta = {
        (S, "a"): disj(X, Y), (S, "b"): disj(X, Y),
        (X, "a"): X, (X, "b"): X,
        (Y, "a"): Y, (Y, "b"): disj(Y, Z),
        (Z, "a"): R, (Z, "b"): Z,
        (R, "a"): R, (R, "b"): R,
    }
    prio = {}
    for (q, x), f in delta.items():
        for r in atoms(f):
            prio[q, x, r] = 1
    prio[X, "a", X] = 2
    prio[Y, "b", Z] = 2
    prio[Z, "b", Z] = 2
    return make_automaton("ab", 5, S, delta, prio, names=("start", "inf-a", "wait", "no-a", "reject"))


FIXTURE_PROPERTIES = {
    "fig-one-step": {"boxes": 4},
    "fig-ex-alt": {"exists_gfg": False, "forall_gfg": False, "gfg": False},
    "fig-ex-alt-gfg": {"exists_gfg": False, "forall_gfg": True, "gfg": False},
    "accepting-sink": {"exists_gfg": True, "forall_gfg": True, "gfg": True},
    "rejecting-sink": {"exists_gfg": True, "forall_gfg": True, "gfg": True},
    "trivial-dcw": {"exists_gfg": True, "forall_gfg": True, "gfg": True},
    "inf-a-nbw": {"exists_gfg": True, "forall_gfg": True, "gfg": True},
    "union-nbw": {"exists_gfg": False, "forall_gfg": True, "gfg": False},
}


def fixtures():
    """Named automata used throughout the tests and demos."""
    return {
        "fig-one-step": _fig_one_step(),
        "fig-ex-alt": _fig_ex_alt(),
        "fig-ex-alt-gfg": _fig_ex_alt_gfg(),
        "accepting-sink": _sink(0),
        "rejecting-sink": _sink(1),
        "trivial-dcw": _sink(0),
        "inf-a-nbw": _inf_a_nbw(),
        "union-nbw": _union_nbw(),
    }


def nondeterministic_part(a):
    """Replace every conjunction by a disjunction of the same children."""
    def down(f):
        if isinstance(f, int):
            return f
        return disj(*[down(c) for c in f[1]])

    return Automaton(a.alphabet, a.n, a.initial, {k: down(f) for k, f in a.delta.items()},
                     dict(a.priority), a.names)


# ---------------------------------------------------------------------------
# constructions

def combinator_cn(base, check=True):
    """Fresh initial state reading ``a`` into ``base`` and ``b`` into its dual.

    The base copy keeps coBüchi priorities 0/1; the dual copy becomes a
    universal Büchi automaton with priorities 1/2.  Letters other than
    ``a`` and ``b`` lead to a rejecting sink.
    """
    from .deciders import is_gfg_ncw_g2

    if "a" not in base.alphabet or "b" not in base.alphabet:
        raise BadAlphabet("the base alphabet must contain a and b")
    if check and not is_gfg_ncw_g2(base):
        raise BaseNotGFG("base automaton is not good for games")
    n = base.n
    init = 2 * n
    sink = 2 * n + 1
    flipped = dual(base)
    delta = {}
    prio = {}

    def shift(f, by):
        if isinstance(f, int):
            return f + by
        return (f[0], tuple(shift(c, by) for c in f[1]))

    for (q, x), f in base.delta.items():
        delta[q, x] = f
        for r in atoms(f):
            prio[q, x, r] = 0 if base.priority[q, x, r] == 0 else 1
        g = flipped.delta[q, x]
        delta[q + n, x] = shift(g, n)
        for r in atoms(g):
            prio[q + n, x, r + n] = 2 if base.priority[q, x, r] == 1 else 1
    for x in base.alphabet:
        target = {"a": base.initial, "b": base.initial + n}.get(x, sink)
        delta[init, x] = target
        prio[init, x, target] = 1
        delta[sink, x] = sink
        prio[sink, x, sink] = 1
    return make_automaton(base.alphabet, 2 * n + 2, init, delta, prio)


@dataclass(frozen=True)
class NFA:
    """Finite-word automaton; ``moves`` maps ``(state, letter)`` to successor sets."""

    n: int
    initial: int
    moves: dict
    accepting: frozenset
    alphabet: tuple = ("a", "b")

    def successors(self, q, x):
        return sorted(self.moves.get((q, x), ()))


def is_universal(nfa):
    """Subset construction: every reachable subset must contain an accepting state."""
    start = frozenset([nfa.initial])
    seen = {start}
    stack = [start]
    while stack:
        s = stack.pop()
        if not s & nfa.accepting:
            return False
        for x in nfa.alphabet:
            t = frozenset(r for q in s for r in nfa.moves.get((q, x), ()))
            if t not in seen:
                seen.add(t)
                stack.append(t)
    return True


def random_nfa(rng, max_states=3):
    n = rng.randint(1, max_states)
    moves = {}
    for q in range(n):
        for x in "ab":
            moves[q, x] = frozenset(r for r in range(n) if rng.random() < 0.45)
    accepting = frozenset(q for q in range(n) if rng.random() < 0.6)
    return NFA(n, 0, moves, accepting)


def pspace_reduction(nfa):
    """Alternating automaton over ``a, b, #`` built from an NFA over ``a, b``.

    After one arbitrary letter Eve guesses the next one; a wrong guess
    leads to the rejecting sink.  Otherwise a universal copy of the NFA
    reads a finite word up to ``#`` and accepts iff no run of the NFA
    accepts it.
    """
    if tuple(nfa.alphabet) != ("a", "b"):
        raise BadAlphabet("the NFA must be over the letters a and b")
    n = nfa.n
    start, guess_a, guess_b, good, bad = n, n + 1, n + 2, n + 3, n + 4
    letters = ("a", "b", "#")
    delta = {}
    prio = {}

    def put(q, x, f, p=1):
        delta[q, x] = f
        for r in atoms(f):
            prio[q, x, r] = p

    for x in "ab":
        put(start, x, disj(guess_a, guess_b))
        put(guess_a, x, nfa.initial if x == "a" else bad)
        put(guess_b, x, nfa.initial if x == "b" else bad)
    put(start, "#", bad)
    put(guess_a, "#", bad)
    put(guess_b, "#", bad)
    for q in range(n):
        for x in "ab":
            succ = nfa.successors(q, x)
            put(q, x, conj(*succ) if succ else good)
        put(q, "#", bad if q in nfa.accepting else good)
    for x in letters:
        put(good, x, good, 2)
        put(bad, x, bad, 1)
    names = ["n%d" % q for q in range(n)] + ["start", "guess-a", "guess-b", "accept", "reject"]
    return make_automaton(letters, n + 5, start, delta, prio, names=names)


def check_generated(a):
    problems = validate(a)
    if problems:
        raise AssertionError("; ".join(problems))
    return a
