"""Alternating parity automata over infinite words.

Transition conditions are positive Boolean formulas over state ids.  A
formula is either an ``int`` (an atom) or a pair ``(op, children)`` with
``op`` in ``{"and", "or"}`` and at least two children.  Formulas are built
with :func:`conj` and :func:`disj`, which flatten nested nodes of the same
kind, drop duplicate children and collapse singletons, so structurally
equal conditions compare equal.

Acceptance is transition based: a path is accepting when the largest
priority seen infinitely often along it is even.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property

from .errors import InitialRemoved

AND = "and"
OR = "or"

DETERMINISTIC = "deterministic"
NONDETERMINISTIC = "nondeterministic"
UNIVERSAL = "universal"
ALTERNATING = "alternating"


def is_atom(f):
    return isinstance(f, int)


def _combine(op, parts):
    flat = []
    seen = set()
    for p in parts:
        children = p[1] if not is_atom(p) and p[0] == op else (p,)
        for c in children:
            if c not in seen:
                seen.add(c)
                flat.append(c)
    if not flat:
        raise ValueError("empty %s-formula" % op)
    if len(flat) == 1:
        return flat[0]
    return (op, tuple(flat))


def conj(*parts):
    """Conjunction of formulas in canonical form."""
    return _combine(AND, parts)


def disj(*parts):
    """Disjunction of formulas in canonical form."""
    return _combine(OR, parts)


def canonical(f):
    if is_atom(f):
        return f
    op, children = f
    return _combine(op, [canonical(c) for c in children])


def atoms(f):
    """States occurring in ``f``, in order of first occurrence."""
    out = []
    stack = [f]
    seen = set()
    while stack:
        g = stack.pop()
        if is_atom(g):
            if g not in seen:
                seen.add(g)
                out.append(g)
        else:
            stack.extend(reversed(g[1]))
    return out


def swap(f):
    """Exchange conjunctions and disjunctions."""
    if is_atom(f):
        return f
    op, children = f
    return (OR if op == AND else AND, tuple(swap(c) for c in children))


def evaluate(f, true_states):
    if is_atom(f):
        return f in true_states
    if f[0] == AND:
        return all(evaluate(c, true_states) for c in f[1])
    return any(evaluate(c, true_states) for c in f[1])


def _minimize(sets):
    sets = sorted(set(sets), key=lambda s: (len(s), sorted(s)))
    kept = []
    for s in sets:
        if not any(k <= s for k in kept):
            kept.append(s)
    return kept


def minimal_models(f):
    """The inclusion-minimal sets of states that satisfy ``f``."""
    if is_atom(f):
        return {frozenset([f])}
    op, children = f
    parts = [minimal_models(c) for c in children]
    if op == OR:
        models = set().union(*parts)
    else:
        models = {frozenset().union(*combo) for combo in itertools.product(*parts)}
    return set(_minimize(models))


def format_formula(f):
    if is_atom(f):
        return "q%d" % f
    sep = " & " if f[0] == AND else " | "
    return "(" + sep.join(format_formula(c) for c in f[1]) + ")"


def priority_key(p):
    """Order priorities by how good they are for acceptance."""
    return p if p % 2 == 0 else -p


@dataclass(frozen=True, eq=False)
class Automaton:
    """An alternating parity automaton.

    ``delta`` maps ``(state, letter)`` to a formula and ``priority`` maps
    ``(state, letter, successor)`` to a natural number for every syntactic
    transition.  ``names`` optionally labels states for display; it takes
    no part in equality.
    """

    alphabet: tuple
    n: int
    initial: int
    delta: dict
    priority: dict
    names: tuple = field(default=None, compare=False)

    def __eq__(self, other):
        if not isinstance(other, Automaton):
            return NotImplemented
        return self.key == other.key

    def __hash__(self):
        return hash(self.key)

    @cached_property
    def key(self):
        return (
            self.alphabet,
            self.n,
            self.initial,
            tuple(sorted(self.delta.items(), key=lambda kv: (kv[0][0], self.alphabet.index(kv[0][1])))),
            tuple(sorted(self.priority.items(), key=lambda kv: (kv[0][0], self.alphabet.index(kv[0][1]), kv[0][2]))),
        )

    @property
    def states(self):
        return range(self.n)

    @cached_property
    def letter_index(self):
        return {a: i for i, a in enumerate(self.alphabet)}

    @cached_property
    def index(self):
        """The set of priorities in use."""
        return frozenset(self.priority.values())

    @cached_property
    def successors(self):
        """``(q, a) -> tuple of (q', priority)`` in order of first occurrence."""
        out = {}
        for (q, a), f in self.delta.items():
            out[q, a] = tuple((r, self.priority[q, a, r]) for r in atoms(f))
        return out

    @cached_property
    def nodes(self):
        """Per ``(q, a)`` table of the distinct subformulas of ``delta(q, a)``.

        Entry 0 is the whole formula.  Each entry is ``(op, payload)`` where
        ``payload`` is a state for atoms and a tuple of entry indices
        otherwise.  Equal subformulas share an entry.
        """
        table = {}
        for key, f in self.delta.items():
            ids = {}
            entries = []

            def visit(g):
                if g in ids:
                    return ids[g]
                ids[g] = len(entries)
                entries.append(None)
                if is_atom(g):
                    entries[ids[g]] = ("atom", g)
                else:
                    entries[ids[g]] = (g[0], tuple(visit(c) for c in g[1]))
                return ids[g]

            visit(f)
            table[key] = tuple(entries)
        return table

    @cached_property
    def kind(self):
        return classify(self)

    def is_buchi(self):
        return self.index <= {1, 2}

    def is_cobuchi(self):
        return self.index <= {0, 1}

    def state_name(self, q):
        if self.names is not None:
            return self.names[q]
        return q

    def __repr__(self):
        return "Automaton(n=%d, alphabet=%s, initial=%d, kind=%s)" % (
            self.n, "".join(self.alphabet), self.initial, self.kind)


def make_automaton(alphabet, n, initial, delta, priority, names=None, default_priority=None):
    """Build an automaton, canonicalising formulas.

    Missing priority entries take ``default_priority`` when given.
    """
    alphabet = tuple(alphabet)
    delta = {k: canonical(f) for k, f in delta.items()}
    prio = dict(priority)
    if default_priority is not None:
        for (q, a), f in delta.items():
            for r in atoms(f):
                prio.setdefault((q, a, r), default_priority)
    return Automaton(alphabet, n, initial, delta, prio, None if names is None else tuple(names))


def from_successors(alphabet, n, initial, succ, names=None):
    """Nondeterministic automaton from ``(q, a) -> [(q', priority), ...]``.

    When two entries share a target the better priority for acceptance is
    kept.  Empty successor lists are routed to a fresh rejecting sink.
    """
    alphabet = tuple(alphabet)
    sink = None
    delta = {}
    prio = {}
    for q in range(n):
        for a in alphabet:
            moves = succ.get((q, a), ())
            if not moves:
                if sink is None:
                    sink = n
                moves = [(sink, 1)]
            best = {}
            for r, p in moves:
                if r not in best or priority_key(p) > priority_key(best[r]):
                    best[r] = p
            delta[q, a] = disj(*best)
            for r, p in best.items():
                prio[q, a, r] = p
    total = n
    if sink is not None:
        total = n + 1
        for a in alphabet:
            delta[sink, a] = sink
            prio[sink, a, sink] = 1
        if names is not None:
            names = tuple(names) + ("reject",)
    return Automaton(alphabet, total, initial, delta, prio, None if names is None else tuple(names))


def validate(a):
    """List of diagnostics; empty when ``a`` is well formed."""
    out = []
    if len(set(a.alphabet)) != len(a.alphabet) or not a.alphabet:
        out.append("alphabet must be a nonempty list of distinct letters")
    if a.n <= 0:
        out.append("automaton needs at least one state")
    if not 0 <= a.initial < a.n:
        out.append("initial state %r out of range" % (a.initial,))
    syntactic = set()
    for q in range(a.n):
        for x in a.alphabet:
            f = a.delta.get((q, x))
            if f is None:
                out.append("missing transition for (%d, %s)" % (q, x))
                continue
            try:
                if canonical(f) != f:
                    out.append("non-canonical formula at (%d, %s)" % (q, x))
            except ValueError:
                out.append("empty formula at (%d, %s)" % (q, x))
                continue
            for r in atoms(f):
                if not 0 <= r < a.n:
                    out.append("dangling atom %r at (%d, %s)" % (r, q, x))
                syntactic.add((q, x, r))
    for key in a.delta:
        q, x = key
        if not (0 <= q < a.n and x in a.alphabet):
            out.append("transition for unknown pair (%r, %r)" % key)
    for t in sorted(syntactic, key=repr):
        p = a.priority.get(t)
        if p is None:
            out.append("missing priority for (%d, %s, %d)" % t)
        elif not isinstance(p, int) or p < 0:
            out.append("bad priority %r for (%d, %s, %d)" % ((p,) + t))
    for t in sorted(set(a.priority) - syntactic, key=repr):
        out.append("stray priority for %r" % (t,))
    return out


def classify(a):
    det = nondet = univ = True
    for f in a.delta.values():
        if is_atom(f):
            continue
        det = False
        pure = all(is_atom(c) for c in f[1])
        if not (pure and f[0] == OR):
            nondet = False
        if not (pure and f[0] == AND):
            univ = False
    if det:
        return DETERMINISTIC
    if nondet:
        return NONDETERMINISTIC
    if univ:
        return UNIVERSAL
    return ALTERNATING


def is_nondeterministic(a):
    return a.kind in (DETERMINISTIC, NONDETERMINISTIC)


def dual(a):
    """Swap conjunction and disjunction and shift every priority by one."""
    delta = {k: swap(f) for k, f in a.delta.items()}
    prio = {k: p + 1 for k, p in a.priority.items()}
    return Automaton(a.alphabet, a.n, a.initial, delta, prio, a.names)


def universal_version(a):
    """Same automaton with every disjunction turned into a conjunction."""
    def up(f):
        if is_atom(f):
            return f
        return conj(*[up(c) for c in f[1]])

    delta = {k: up(f) for k, f in a.delta.items()}
    return Automaton(a.alphabet, a.n, a.initial, delta, dict(a.priority), a.names)


def shift_priorities(a, by):
    prio = {k: p + by for k, p in a.priority.items()}
    return Automaton(a.alphabet, a.n, a.initial, dict(a.delta), prio, a.names)


def _prune(f, keep):
    if is_atom(f):
        return f if f in keep else None
    op, children = f
    kept = [_prune(c, keep) for c in children]
    if op == AND:
        if any(c is None for c in kept):
            return None
        return conj(*kept)
    kept = [c for c in kept if c is not None]
    if not kept:
        return None
    return disj(*kept)


def restrict(a, keep):
    """Drop the states outside ``keep`` and renumber the rest densely.

    Formulas lose the atoms of dropped states; a condition that vanishes
    entirely is replaced by a move to a fresh rejecting sink.
    """
    keep = set(keep)
    if a.initial not in keep:
        raise InitialRemoved("initial state %d is not kept" % a.initial)
    order = sorted(keep)
    renum = {q: i for i, q in enumerate(order)}
    sink = len(order)
    need_sink = False
    delta = {}
    prio = {}
    for q in order:
        for x in a.alphabet:
            f = _prune(a.delta[q, x], keep)
            if f is None:
                need_sink = True
                delta[renum[q], x] = sink
                prio[renum[q], x, sink] = 1
                continue
            g = _relabel(f, renum)
            delta[renum[q], x] = g
            for r in atoms(f):
                prio[renum[q], x, renum[r]] = a.priority[q, x, r]
    n = len(order)
    names = None if a.names is None else [a.names[q] for q in order]
    if need_sink:
        n += 1
        for x in a.alphabet:
            delta[sink, x] = sink
            prio[sink, x, sink] = 1
        if names is not None:
            names.append("reject")
    return Automaton(a.alphabet, n, renum[a.initial], delta, prio, None if names is None else tuple(names))


def _relabel(f, renum):
    if is_atom(f):
        return renum[f]
    return (f[0], tuple(_relabel(c, renum) for c in f[1]))


def reachable_states(a):
    seen = {a.initial}
    stack = [a.initial]
    while stack:
        q = stack.pop()
        for x in a.alphabet:
            for r in atoms(a.delta[q, x]):
                if r not in seen:
                    seen.add(r)
                    stack.append(r)
    return seen


def trim(a):
    """Restrict to the states reachable from the initial state."""
    reach = reachable_states(a)
    if len(reach) == a.n:
        return a
    return restrict(a, reach)
