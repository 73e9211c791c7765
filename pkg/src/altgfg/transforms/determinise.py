"""Determinisation of nondeterministic parity automata.

Parity automata are first turned into Büchi automata (one copy per even
priority), which Safra's construction then determinises.  Safra trees are
stored as tuples of ``(parent rank, label)`` ordered by age, so a node's
rank is its position in the tuple and parents always precede children.
"""
from __future__ import annotations

from collections import deque

from ..automata import Automaton, DETERMINISTIC, NONDETERMINISTIC, from_successors
from ..config import state_guard
from ..errors import NotBuchi, NotDeterministic, NotNCW, NotNondeterministic, TooLarge
from .reduce import prune, reduce_nondet


def _require_nondet(a):
    if a.kind not in (DETERMINISTIC, NONDETERMINISTIC):
        raise NotNondeterministic("expected a nondeterministic automaton, got %s" % a.kind)


def npw_to_nbw(p):
    """Büchi automaton for the language of a nondeterministic parity automaton.

    State ``q`` of the master copy is kept as ``q``; state ``q`` of the copy
    for even priority ``e`` becomes ``n * (k + 1) + q`` for the ``k``-th even
    priority.  Inside copy ``e`` only transitions of priority at most ``e``
    survive, and those of priority exactly ``e`` are accepting.
    """
    _require_nondet(p)
    evens = sorted(x for x in p.index if x % 2 == 0)
    n = p.n
    succ = {}
    names = [("guess", q) for q in range(n)]
    for k, e in enumerate(evens):
        names += [(e, q) for q in range(n)]
    for q in range(n):
        for x in p.alphabet:
            moves = []
            for r, pr in p.successors[q, x]:
                moves.append((r, 1))
                for k in range(len(evens)):
                    moves.append((n * (k + 1) + r, 1))
            succ[q, x] = moves
            for k, e in enumerate(evens):
                succ[n * (k + 1) + q, x] = [
                    (n * (k + 1) + r, 2 if pr == e else 1)
                    for r, pr in p.successors[q, x] if pr <= e]
    return from_successors(p.alphabet, n * (len(evens) + 1), p.initial, succ, names)


def _safra_step(tree, x, succ):
    """Successor tree and the (min-even-style) event priority of one step."""
    old = len(tree)
    nodes = []
    spawn = []
    for i, (parent, label) in enumerate(tree):
        nxt = set()
        acc = set()
        for q in label:
            for r, good in succ[q, x]:
                nxt.add(r)
                if good:
                    acc.add(r)
        nodes.append([parent, nxt])
        spawn.append(acc)
    for i in range(old):
        if spawn[i]:
            nodes.append([i, spawn[i]])
    children = [[] for _ in nodes]
    for j, (parent, _) in enumerate(nodes):
        if parent is not None:
            children[parent].append(j)

    # horizontal merge: a state stays only in the oldest branch holding it
    def settle(j, allowed):
        label = nodes[j][1] & allowed
        nodes[j][1] = label
        taken = set()
        for c in children[j]:
            settle(c, label - taken)
            taken |= nodes[c][1]

    events = []
    if tree:
        settle(0, nodes[0][1])
    alive = [bool(nodes[j][1]) for j in range(len(nodes))]
    for j in range(old):
        if not alive[j]:
            events.append(2 * j + 1)

    # vertical merge: a node covered by its children flashes and loses them
    def drop(j):
        for c in children[j]:
            if alive[c]:
                alive[c] = False
                if c < old:
                    events.append(2 * c + 1)
                drop(c)

    def flash(j):
        kids = [c for c in children[j] if alive[c]]
        if kids:
            covered = set().union(*(nodes[c][1] for c in kids))
            if covered == nodes[j][1]:
                if j < old:
                    events.append(2 * j + 2)
                drop(j)
                return
        for c in kids:
            flash(c)

    if nodes and alive[0]:
        flash(0)
    rank = {}
    out = []
    for j in range(len(nodes)):
        if alive[j]:
            rank[j] = len(out)
            parent = nodes[j][0]
            out.append((None if parent is None else rank[parent], frozenset(nodes[j][1])))
    return tuple(out), (min(events) if events else None)


def safra_determinise(nbw):
    """Deterministic parity automaton equivalent to a nondeterministic Büchi one."""
    _require_nondet(nbw)
    if not nbw.index <= {1, 2}:
        raise NotBuchi("Safra's construction needs priorities within {1, 2}")
    succ = {k: tuple((r, p == 2) for r, p in moves) for k, moves in nbw.successors.items()}
    bound = nbw.n + 1
    top = 2 * bound + 4
    start = ((None, frozenset([nbw.initial])),)
    ids = {start: 0}
    trees = [start]
    queue = deque([start])
    dsucc = {}
    guard = state_guard()
    while queue:
        tree = queue.popleft()
        src = ids[tree]
        for x in nbw.alphabet:
            nxt, event = _safra_step(tree, x, succ)
            prio = 1 if event is None else top - event
            tgt = ids.get(nxt)
            if tgt is None:
                tgt = ids[nxt] = len(trees)
                trees.append(nxt)
                queue.append(nxt)
                if len(trees) > guard:
                    raise TooLarge("Safra construction exceeded %d states" % guard)
            dsucc[src, x] = [(tgt, prio)]
    return from_successors(nbw.alphabet, len(trees), 0, dsucc, None)


def cobuchi_determinise(ncw):
    """Deterministic coBüchi automaton for a nondeterministic coBüchi one.

    States are pairs ``(S, O)``: ``S`` is the reachable set and ``O`` the
    states reached from the last reset through priority-0 transitions
    only.  When ``O`` dies out the step resets it and has priority 1.
    """
    _require_nondet(ncw)
    if not ncw.index <= {0, 1}:
        raise NotNCW("breakpoint determinisation needs priorities within {0, 1}")
    start = (frozenset([ncw.initial]), frozenset([ncw.initial]))
    ids = {start: 0}
    order = [start]
    queue = deque([start])
    succ = {}
    guard = state_guard()
    while queue:
        s, o = queue.popleft()
        src = ids[s, o]
        for x in ncw.alphabet:
            s2 = frozenset(r for q in s for r, _ in ncw.successors[q, x])
            o2 = frozenset(r for q in o for r, p in ncw.successors[q, x] if p == 0)
            prio = 0
            if not o2:
                o2 = frozenset(r for q in s for r, p in ncw.successors[q, x] if p == 0)
                prio = 1
            key = (s2, o2)
            if key not in ids:
                ids[key] = len(order)
                order.append(key)
                queue.append(key)
                if len(order) > guard:
                    raise TooLarge("breakpoint determinisation exceeded %d states" % guard)
            succ[src, x] = [(ids[key], prio)]
    return from_successors(ncw.alphabet, len(order), 0, succ, None)


def complement_dpw(d):
    if d.kind != DETERMINISTIC:
        raise NotDeterministic("complementation by priority shift needs a deterministic automaton")
    prio = {k: p + 1 for k, p in d.priority.items()}
    return Automaton(d.alphabet, d.n, d.initial, dict(d.delta), prio, d.names)


def determinise_npw(p, reduce=True):
    """Deterministic parity automaton for the language of ``p``."""
    _require_nondet(p)
    if p.kind == DETERMINISTIC:
        return p
    if p.index <= {0, 1}:
        d = cobuchi_determinise(prune(p))
        return reduce_nondet(d) if reduce else d
    if p.index <= {1, 2}:
        nbw = prune(p)
    else:
        nbw = prune(npw_to_nbw(p))
    d = safra_determinise(nbw)
    return reduce_nondet(d) if reduce else d
