"""Language-preserving clean-ups applied between constructions."""
from __future__ import annotations

from ..automata import Automaton, atoms, from_successors, priority_key
from ..games import _sccs


def _transitions(a):
    for (q, x), f in a.delta.items():
        for r in atoms(f):
            yield q, x, r, a.priority[q, x, r]


def normalize_priorities(a):
    """Smallest priorities that give every cycle the same verdict.

    Works on the graph of syntactic transitions, so it is sound for
    alternating automata too: every path keeps its verdict.
    """
    trans = sorted(_transitions(a), key=lambda t: (t[0], a.letter_index[t[1]], t[2]))
    new = {(q, x, r): 0 for q, x, r, _ in trans}

    def solve(edges):
        succ = {}
        for q, _, r, _ in edges:
            succ.setdefault(q, []).append(r)
        for comp in _sccs(sorted(succ), lambda v: succ.get(v, ())):
            inside = set(comp)
            local = [t for t in edges if t[0] in inside and t[2] in inside]
            if not local:
                continue
            top = max(t[3] for t in local)
            rest = [t for t in local if t[3] != top]
            base = solve(rest) if rest else 0
            value = base if base % 2 == top % 2 else base + 1
            for t in local:
                if t[3] == top:
                    new[t[:3]] = value
        return max((new[t[:3]] for t in edges), default=0)

    solve(trans)
    return Automaton(a.alphabet, a.n, a.initial, dict(a.delta), new, a.names)


def quotient(a):
    """Merge bisimilar states of a nondeterministic automaton.

    Two states are merged when they have the same moves, letter by letter,
    to equivalent states with the same priorities.
    """
    block = [0] * a.n
    count = 1
    while True:
        sigs = {}
        nxt = []
        for q in range(a.n):
            sig = (block[q], tuple(
                tuple(sorted({(block[r], p) for r, p in a.successors[q, x]}))
                for x in a.alphabet))
            nxt.append(sigs.setdefault(sig, len(sigs)))
        if len(sigs) == count:
            break
        block = nxt
        count = len(sigs)
    if count == a.n:
        return a
    # renumber blocks in order of first representative, starting from the initial one
    order = {}
    for q in [a.initial] + list(range(a.n)):
        order.setdefault(block[q], len(order))
    succ = {}
    for q in range(a.n):
        b = order[block[q]]
        for x in a.alphabet:
            if (b, x) in succ:
                continue
            succ[b, x] = [(order[block[r]], p) for r, p in a.successors[q, x]]
    names = None
    if a.names is not None:
        rep = {}
        for q in range(a.n):
            rep.setdefault(order[block[q]], a.names[q])
        names = [rep[b] for b in range(len(order))]
    return from_successors(a.alphabet, len(order), 0, succ, names)


def live_states(a):
    """States of a nondeterministic automaton with a nonempty language."""
    edges = [(q, r, p) for q, _, r, p in _transitions(a)]
    good = set()

    def collect(local_edges):
        succ = {}
        for q, r, _ in local_edges:
            succ.setdefault(q, []).append(r)
        for comp in _sccs(sorted(succ), lambda v: succ.get(v, ())):
            inside = set(comp)
            local = [e for e in local_edges if e[0] in inside and e[1] in inside]
            if not local:
                continue
            top = max(e[2] for e in local)
            if top % 2 == 0:
                good.update(inside)
            else:
                collect([e for e in local if e[2] < top])

    collect(edges)
    pred = {}
    for q, r, _ in edges:
        pred.setdefault(r, []).append(q)
    live = set(good)
    stack = list(good)
    while stack:
        r = stack.pop()
        for q in pred.get(r, ()):
            if q not in live:
                live.add(q)
                stack.append(q)
    return live


def prune(a):
    """Drop unreachable and empty-language states of a nondeterministic automaton."""
    live = live_states(a)
    reach = {a.initial}
    stack = [a.initial]
    while stack:
        q = stack.pop()
        for x in a.alphabet:
            for r, _ in a.successors[q, x]:
                if r in live and r not in reach:
                    reach.add(r)
                    stack.append(r)
    if a.initial not in live:
        return from_successors(a.alphabet, 1, 0, {}, None)
    keep = sorted(reach, key=lambda q: (q != a.initial, q))
    renum = {q: i for i, q in enumerate(keep)}
    succ = {}
    for q in keep:
        for x in a.alphabet:
            succ[renum[q], x] = [(renum[r], p) for r, p in a.successors[q, x] if r in renum]
    names = None if a.names is None else [a.names[q] for q in keep]
    return from_successors(a.alphabet, len(keep), 0, succ, names)


SIMULATION_LIMIT = 400


def simulation(a):
    """Direct simulation: ``sim[p]`` holds every state that simulates ``p``.

    ``q`` simulates ``p`` when each move of ``p`` is answered by a move of
    ``q`` on the same letter, to a simulating state, with a priority at
    least as good for acceptance.  Pointwise better priorities never turn
    an accepting run into a rejecting one, so ``L(p)`` is contained in ``L(q)``.
    """
    moves = {k: [(r, priority_key(p)) for r, p in v] for k, v in a.successors.items()}
    sim = [set(range(a.n)) for _ in range(a.n)]
    changed = True
    while changed:
        changed = False
        for p in range(a.n):
            for q in list(sim[p]):
                if q == p:
                    continue
                for x in a.alphabet:
                    answers = moves[q, x]
                    if not all(any(d >= c and r2 in sim[r] for r2, d in answers)
                               for r, c in moves[p, x]):
                        sim[p].discard(q)
                        changed = True
                        break
    return sim


def simulation_reduce(a):
    """Drop dominated moves, then merge simulation-equivalent states.

    Both steps keep the language, and an online choice of runs transfers
    in both directions, so good-for-games status is kept as well.
    """
    sim = simulation(a)
    succ = {}
    for (q, x), options in a.successors.items():
        keyed = [(r, priority_key(p), p) for r, p in options]
        kept = []
        for i, (r, c, p) in enumerate(keyed):
            beaten = False
            for j, (r2, d, _) in enumerate(keyed):
                if j == i or d < c or r2 not in sim[r]:
                    continue
                mutual = c >= d and r in sim[r2]
                if not mutual or j < i:
                    beaten = True
                    break
            if not beaten:
                kept.append((r, p))
        succ[q, x] = kept
    rep = list(range(a.n))
    for q in range(a.n):
        for p in range(q):
            if rep[p] == p and p in sim[q] and q in sim[p]:
                rep[q] = p
                break
    merged = {}
    for (q, x), options in succ.items():
        if rep[q] == q:
            merged[q, x] = [(rep[r], p) for r, p in options]
    keep = [q for q in range(a.n) if rep[q] == q]
    renum = {q: i for i, q in enumerate(keep)}
    out = {(renum[q], x): [(renum[r], p) for r, p in options] for (q, x), options in merged.items()}
    names = None if a.names is None else [a.names[q] for q in keep]
    return from_successors(a.alphabet, len(keep), renum[rep[a.initial]], out, names)


def reduce_nondet(a):
    """Prune, compress priorities and merge equivalent states until stable."""
    while True:
        before = (a.n, len(a.priority))
        a = quotient(normalize_priorities(prune(a)))
        if a.n <= SIMULATION_LIMIT:
            a = simulation_reduce(a)
        if (a.n, len(a.priority)) == before:
            return normalize_priorities(a)


def reduce_det(a):
    """Compress priorities and merge bisimilar states of a deterministic automaton."""
    while True:
        n = a.n
        a = quotient(normalize_priorities(a))
        if a.n == n:
            return normalize_priorities(a)
