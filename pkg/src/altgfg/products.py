"""Products of arenas with automata, boxes and word-level checks.

Arena labels are integer vectors whose first slot is a letter index of the
automaton's alphabet.  The product appends the automaton's transition
priority as a new slot, so products can be nested: the automaton of an
outer product treats the whole inner label as its letter.
"""
from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass

from .automata import AND, DETERMINISTIC, NONDETERMINISTIC, OR
from .conditions import Parity
from .config import position_guard
from .errors import LabelMismatch, NotNondeterministic, TooLarge, UnknownLetter
from .games import ADAM, EVE, Builder, Game, _sccs, solve_parity


@dataclass(frozen=True)
class Box:
    letter: str
    relation: frozenset

    def __str__(self):
        pairs = sorted(self.relation)
        return "%s{%s}" % (self.letter, ", ".join("%d->%d" % p for p in pairs))

    def targets(self, q):
        return sorted(r for p, r in self.relation if p == q)


@dataclass(frozen=True)
class LassoWord:
    """The ultimately periodic word ``u v v v ...``."""

    u: tuple
    v: tuple

    def __post_init__(self):
        if not self.v:
            raise ValueError("the period of a lasso must be nonempty")

    @classmethod
    def of(cls, u, v):
        return cls(tuple(u), tuple(v))

    def __len__(self):
        return len(self.u) + len(self.v)

    def letter(self, i):
        if i < len(self.u):
            return self.u[i]
        return self.v[(i - len(self.u)) % len(self.v)]

    def next(self, i):
        return i + 1 if i + 1 < len(self) else len(self.u)

    def canonical(self):
        """Shortest equivalent lasso: primitive period, rotated as far left as possible."""
        v = self.v
        for k in range(1, len(v) + 1):
            if len(v) % k == 0 and v[:k] * (len(v) // k) == v:
                v = v[:k]
                break
        u = self.u
        while u and u[-1] == v[-1]:
            u = u[:-1]
            v = v[-1:] + v[:-1]
        return LassoWord(u, v)

    def __str__(self):
        return "%s(%s)^w" % ("".join(self.u), "".join(self.v))


def letter_arena(alphabet, owner=ADAM):
    """One position with a self-loop per letter, owned by the letter chooser."""
    edges = tuple((0, (i,), 0) for i in range(len(alphabet)))
    return Game((owner,), edges, 0, None, False, ("letters",))


def single_letter_arena(a, letter):
    """Partial arena with one edge reading ``letter``."""
    i = a.letter_index.get(letter)
    if i is None:
        raise UnknownLetter(letter)
    return Game((EVE, EVE), ((0, (i,), 1),), 0, None, True, ("entry", "exit"))


def lasso_arena(a, w):
    edges = []
    for i in range(len(w)):
        x = a.letter_index.get(w.letter(i))
        if x is None:
            raise UnknownLetter(w.letter(i))
        edges.append((i, (x,), w.next(i)))
    return Game(tuple([EVE] * len(w)), tuple(edges), 0, None, False, tuple(range(len(w))))


def synchronized_product(r, a, roots=None):
    """Product arena of ``r`` with automaton ``a``.

    Main positions are named ``("s", v, q)`` and formula positions
    ``("f", v, q, label, node)`` where ``node`` indexes ``a.nodes``.  Eve
    owns main positions whose arena position is hers and every disjunction
    node; Adam owns the rest.  Exploration starts from ``roots``, a list of
    ``(v, q)`` pairs, defaulting to every pair.  The condition is left
    unset.
    """
    sigma = len(a.alphabet)
    for _, lab, _ in r.edges:
        if lab is not None and not 0 <= lab[0] < sigma:
            raise LabelMismatch("arena label %r is not a letter of %s" % (lab, a.alphabet))
    b = Builder()
    queue = deque()
    limit = position_guard()

    def main(v, q):
        key = ("s", v, q)
        if key not in b.ids:
            b.position(key, r.owner[v])
            queue.append(key)
        return b.ids[key]

    def formula(v, q, lab, node, op):
        key = ("f", v, q, lab, node)
        if key not in b.ids:
            b.position(key, EVE if op == OR else ADAM)
            queue.append(key)
        return b.ids[key]

    if roots is None:
        roots = [(v, q) for v in range(r.size) for q in range(a.n)]
    for v, q in roots:
        main(v, q)
    alphabet = a.alphabet
    nodes = a.nodes
    prio = a.priority
    out = r.out_edges
    while queue:
        if len(b.owner) > limit:
            raise TooLarge("product arena exceeded %d positions" % limit)
        key = queue.popleft()
        src = b.ids[key]
        if key[0] == "s":
            _, v, q = key
            for e in out[v]:
                _, lab, w = r.edges[e]
                if lab is None:
                    b.edge(src, None, main(w, q))
                else:
                    table = nodes[q, alphabet[lab[0]]]
                    b.edge(src, None, formula(w, q, lab, 0, table[0][0]))
        else:
            _, v, q, lab, node = key
            letter = alphabet[lab[0]]
            table = nodes[q, letter]
            op, payload = table[node]
            if op == "atom":
                b.edge(src, lab + (prio[q, letter, payload],), main(v, payload))
            else:
                for child in payload:
                    b.edge(src, None, formula(v, q, lab, child, table[child][0]))
    initial = b.ids.get(("s", r.initial, a.initial), 0)
    return b.game(initial=initial, partial=r.partial)


def one_step_arena(a, letter):
    """Partial arena in which the players resolve ``delta(q, letter)``.

    Entry positions come first (one per state), then formula positions;
    exit positions are terminal.
    """
    r = single_letter_arena(a, letter)
    g = synchronized_product(r, a, roots=[(0, q) for q in range(a.n)])
    return g


def _strategies_for_state(a, q, letter):
    """Reach sets of every positional Eve choice inside ``delta(q, letter)``.

    Choices are made per distinct disjunction node, so a subformula
    shared by two branches is resolved the same way in both.
    """
    table = a.nodes[q, letter]
    results = set()

    def explore(pending, choice, reached):
        if not pending:
            results.add(frozenset(reached))
            return
        node, rest = pending[0], pending[1:]
        op, payload = table[node]
        if op == "atom":
            explore(rest, choice, reached | {payload})
        elif op == AND:
            explore(list(payload) + rest, choice, reached)
        elif node in choice:
            explore([choice[node]] + rest, choice, reached)
        else:
            for child in payload:
                explore([child] + rest, {**choice, node: child}, reached)

    explore([0], {}, frozenset())
    return sorted(results, key=lambda s: (len(s), sorted(s)))


def enumerate_boxes(a, letter):
    """Boxes of all positional Eve strategies on the one-step arena."""
    if letter not in a.letter_index:
        raise UnknownLetter(letter)
    per_state = [_strategies_for_state(a, q, letter) for q in range(a.n)]
    boxes = []
    seen = set()
    for combo in itertools.product(*per_state):
        rel = frozenset((q, r) for q, targets in enumerate(combo) for r in targets)
        if rel not in seen:
            seen.add(rel)
            boxes.append(Box(letter, rel))
    return boxes


def all_boxes(a):
    return [b for x in a.alphabet for b in enumerate_boxes(a, x)]


# ---------------------------------------------------------------------------
# membership

def lasso_game(a, w):
    """The model-checking game of ``a`` on the lasso ``w``."""
    r = lasso_arena(a, w)
    g = synchronized_product(r, a, roots=[(0, a.initial)])
    return g.with_condition(Parity(1))


def _run_accepts(a, w):
    """Membership for deterministic automata by following the unique run."""
    seen = {}
    trace = []
    i, q = 0, a.initial
    while (i, q) not in seen:
        seen[i, q] = len(trace)
        r, p = a.successors[q, w.letter(i)][0]
        trace.append(p)
        i, q = w.next(i), r
    return max(trace[seen[i, q]:]) % 2 == 0


def _graph_accepts(a, w):
    """Membership for nondeterministic automata via the run graph."""
    start = (0, a.initial)
    seen = {start}
    stack = [start]
    edges = []
    while stack:
        i, q = stack.pop()
        x = w.letter(i)
        j = w.next(i)
        for r, p in a.successors[q, x]:
            edges.append(((i, q), p, (j, r)))
            if (j, r) not in seen:
                seen.add((j, r))
                stack.append((j, r))
    return _has_good_cycle(edges)


def _has_good_cycle(edges):
    """Whether some cycle in the edge list has an even maximal priority."""
    for p in sorted({e[1] for e in edges if e[1] % 2 == 0}, reverse=True):
        sub = [e for e in edges if e[1] <= p]
        succ = {}
        for s, _, t in sub:
            succ.setdefault(s, []).append(t)
        where = {}
        for k, comp in enumerate(_sccs(list(succ), lambda v: succ.get(v, ()))):
            for v in comp:
                where[v] = k
        for s, q, t in sub:
            if q == p and s in where and where[s] == where.get(t):
                return True
    return False


def lasso_membership(a, w, method="auto"):
    """Whether ``a`` accepts the lasso word ``w``.

    The reference method solves the model-checking game.  Deterministic
    and nondeterministic automata use an equivalent run simulation or
    run-graph search unless ``method="game"``.
    """
    for x in itertools.chain(w.u, w.v):
        if x not in a.letter_index:
            raise UnknownLetter(x)
    if method == "auto" and a.kind == DETERMINISTIC:
        return _run_accepts(a, w)
    if method == "auto" and a.kind == NONDETERMINISTIC:
        return _graph_accepts(a, w)
    g = lasso_game(a, w)
    return solve_parity(g).winner[g.initial] == EVE


def lassos(alphabet, max_u, max_v):
    """Distinct lasso words up to the bounds, shortest first then lexicographic."""
    seen = set()
    alphabet = tuple(alphabet)
    for total in range(1, max_u + max_v + 1):
        for lu in range(0, min(max_u, total - 1) + 1):
            lv = total - lu
            if lv < 1 or lv > max_v:
                continue
            for u in itertools.product(alphabet, repeat=lu):
                for v in itertools.product(alphabet, repeat=lv):
                    w = LassoWord(u, v).canonical()
                    if w not in seen:
                        seen.add(w)
                        yield w


@dataclass(frozen=True)
class Equivalence:
    equivalent: bool
    counterexample: LassoWord = None

    def __bool__(self):
        return self.equivalent


def bounded_equiv(a, b, max_u, max_v):
    if a.alphabet != b.alphabet:
        raise ValueError("automata over different alphabets")
    for w in lassos(a.alphabet, max_u, max_v):
        if lasso_membership(a, w) != lasso_membership(b, w):
            return Equivalence(False, w)
    return Equivalence(True)


# ---------------------------------------------------------------------------
# emptiness and exact equivalence for nondeterministic automata

def _path(succ, src, dst, allowed):
    """Shortest path of edges from ``src`` to ``dst`` inside ``allowed`` nodes."""
    prev = {src: None}
    queue = deque([src])
    while queue:
        v = queue.popleft()
        if v == dst and v != src:
            break
        for letter, p, w in succ.get(v, ()):
            if w in allowed and w not in prev:
                prev[w] = (v, letter)
                queue.append(w)
    if dst not in prev:
        return None
    out = []
    v = dst
    while prev[v] is not None:
        u, letter = prev[v]
        out.append(letter)
        v = u
    return out[::-1]


def accepting_lasso(initial, succ, tracks=1):
    """Search a graph for a reachable cycle satisfying every parity track.

    ``succ`` maps a node to ``[(letter, priorities, node), ...]`` where
    ``priorities`` is a tuple with one entry per track.  Returns a lasso
    (as a pair of letter lists) or ``None``.
    """
    reach = {initial}
    queue = deque([initial])
    while queue:
        v = queue.popleft()
        for _, _, w in succ.get(v, ()):
            if w not in reach:
                reach.add(w)
                queue.append(w)
    edges = [(v, letter, ps, w) for v in reach for letter, ps, w in succ.get(v, ())]
    found = _search(edges, tracks)
    if found is None:
        return None
    comp, chosen, allowed = found
    inside = set(comp)
    # the cycle may only use edges that survived the search
    adj = {}
    for v, letter, ps, w in allowed:
        adj.setdefault(v, []).append((letter, ps, w))
    anchor = chosen[0][0]
    plain = {}
    for v, letter, ps, w in edges:
        plain.setdefault(v, []).append((letter, ps, w))
    if anchor == initial:
        prefix = []
    else:
        prefix = _path(plain, initial, anchor, reach)
    cycle = []
    here = anchor
    for v, letter, ps, w in chosen:
        if here != v:
            cycle += _path(adj, here, v, inside)
        cycle.append(letter)
        here = w
    if here != anchor:
        cycle += _path(adj, here, anchor, inside)
    return prefix, cycle


def _search(edges, tracks):
    """Find an SCC whose top priority is even on every track.

    Returns the component, one edge carrying each track's top priority
    and the edges of the component that the cycle may use.
    """
    if not edges:
        return None
    succ = {}
    for v, _, _, w in edges:
        succ.setdefault(v, []).append(w)
    for comp in _sccs(sorted(succ, key=repr), lambda v: succ.get(v, ())):
        inside = set(comp)
        local = [e for e in edges if e[0] in inside and e[3] in inside]
        if not local:
            continue
        tops = [max(e[2][t] for e in local) for t in range(tracks)]
        bad = [t for t in range(tracks) if tops[t] % 2 == 1]
        if not bad:
            chosen = []
            for t in range(tracks):
                e = next(e for e in local if e[2][t] == tops[t])
                if e not in chosen:
                    chosen.append(e)
            return comp, chosen, local
        keep = [e for e in local if all(e[2][t] < tops[t] for t in bad)]
        found = _search(keep, tracks)
        if found is not None:
            return found
    return None


def npw_emptiness(p):
    """``(True, None)`` if ``L(p)`` is empty, else ``(False, witness)``."""
    if p.kind not in (DETERMINISTIC, NONDETERMINISTIC):
        raise NotNondeterministic("emptiness check needs a nondeterministic automaton")
    succ = {}
    for (q, x), moves in p.successors.items():
        succ.setdefault(q, []).extend((x, (pr,), r) for r, pr in moves)
    found = accepting_lasso(p.initial, succ)
    if found is None:
        return True, None
    return False, LassoWord(tuple(found[0]), tuple(found[1]))


def intersection_witness(a, b):
    """A lasso accepted by both nondeterministic automata, or ``None``."""
    if a.alphabet != b.alphabet:
        raise ValueError("automata over different alphabets")
    succ = {}
    start = (a.initial, b.initial)
    seen = {start}
    queue = deque([start])
    while queue:
        q, r = queue.popleft()
        out = []
        for x in a.alphabet:
            for q2, p1 in a.successors[q, x]:
                for r2, p2 in b.successors[r, x]:
                    out.append((x, (p1, p2), (q2, r2)))
                    if (q2, r2) not in seen:
                        seen.add((q2, r2))
                        queue.append((q2, r2))
        succ[q, r] = out
    found = accepting_lasso(start, succ, tracks=2)
    if found is None:
        return None
    return LassoWord(tuple(found[0]), tuple(found[1]))


def exact_equiv(a, b):
    """Exact language equivalence of two nondeterministic parity automata."""
    from .transforms.determinise import complement_dpw, determinise_npw

    for x in (a, b):
        if x.kind not in (DETERMINISTIC, NONDETERMINISTIC):
            raise NotNondeterministic("exact_equiv needs nondeterministic automata")
    not_b = complement_dpw(determinise_npw(b))
    w = intersection_witness(a, not_b)
    if w is not None:
        return Equivalence(False, w)
    not_a = complement_dpw(determinise_npw(a))
    w = intersection_witness(b, not_a)
    if w is not None:
        return Equivalence(False, w)
    return Equivalence(True)
