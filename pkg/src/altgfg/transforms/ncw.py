"""Normal form for nondeterministic coBüchi automata and their safe regions.

Normalisation runs three steps in order: drop the states from which Eve
loses the 2-token game, label each state with the set of states reachable
on the same prefix, and make accepting transitions that leave a component
of the accepting-transition graph rejecting.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from ..automata import (
    DETERMINISTIC, NONDETERMINISTIC, from_successors, reachable_states, restrict, trim,
    universal_version,
)
from ..errors import EmptyAfterRestriction, InitialRemoved, NotNCW
from ..games import EVE, _sccs, solve, solve_safety
from ..products import letter_arena


@dataclass(frozen=True)
class NcwNormalisation:
    """The normalised automaton with the projections of its states.

    ``state_of[s]`` is the input state behind state ``s`` (``None`` for a
    rejecting sink added by the restriction) and ``reach_of[s]`` the set of
    restricted states reachable on the same prefix.  ``kept`` holds the
    input states that survived the restriction.
    """

    automaton: object
    state_of: tuple
    reach_of: tuple
    kept: frozenset

    def reach_after(self, word):
        """Reachable-set component after reading ``word`` from the initial state."""
        s = self.automaton.initial
        for x in word:
            s = self.automaton.successors[s, x][0][0]
        return self.reach_of[s]


@dataclass(frozen=True)
class SafeZoneData:
    """Winning pairs of the safety game and the deterministic safe moves.

    ``delta_det`` maps ``(state, letter)`` to a state; it is only defined
    where Eve's safe move is an accepting transition.
    """

    winning_pairs: frozenset
    safe_zone: frozenset
    delta_det: dict
    strategy: dict


def _require_ncw(a):
    if a.kind not in (DETERMINISTIC, NONDETERMINISTIC) or not a.index <= {0, 1}:
        raise NotNCW("expected a nondeterministic coBüchi automaton")


def g2_winning_states(a):
    """States ``q`` from which Eve wins the 2-token game with all tokens on ``q``."""
    from ..deciders import token_game

    g, pos = token_game(a, 2, full=True)
    sol = solve(g, roots=[pos[q, q, q] for q in range(a.n)])
    return {q for q in range(a.n) if sol.winner[pos[q, q, q]] == EVE}


def g2_restrict(a):
    keep = g2_winning_states(a)
    if a.initial not in keep:
        raise EmptyAfterRestriction("Eve loses the 2-token game from the initial state")
    try:
        return restrict(a, keep), keep
    except InitialRemoved as exc:
        raise EmptyAfterRestriction(str(exc)) from exc


def reachability_labelling(a):
    """States ``(q, X)`` with ``X`` the subset reached on the same prefix."""
    start = (a.initial, frozenset([a.initial]))
    ids = {start: 0}
    order = [start]
    queue = deque([start])
    succ = {}
    while queue:
        q, reach = queue.popleft()
        src = ids[q, reach]
        for x in a.alphabet:
            reach2 = frozenset(r for p in reach for r, _ in a.successors[p, x])
            moves = []
            for r, pr in a.successors[q, x]:
                key = (r, reach2)
                if key not in ids:
                    ids[key] = len(order)
                    order.append(key)
                    queue.append(key)
                moves.append((ids[key], pr))
            succ[src, x] = moves
    names = [(q, tuple(sorted(reach))) for q, reach in order]
    return from_successors(a.alphabet, len(order), 0, succ, names), order


def tune_acceptance(a):
    """Make accepting transitions between components of accepting moves rejecting."""
    graph = {}
    for (q, x), moves in a.successors.items():
        for r, p in moves:
            if p == 0:
                graph.setdefault(q, []).append(r)
    where = {}
    for k, comp in enumerate(_sccs(range(a.n), lambda v: graph.get(v, ()))):
        for v in comp:
            where[v] = k
    succ = {}
    for (q, x), moves in a.successors.items():
        succ[q, x] = [(r, 1 if p == 0 and where[q] != where[r] else p) for r, p in moves]
    return from_successors(a.alphabet, a.n, a.initial, succ, a.names)


def ncw_normalise(a):
    """Restrict, label and tune a nondeterministic coBüchi automaton.

    Raises :class:`EmptyAfterRestriction` when the initial state is
    dropped, in which case ``a`` is not good for games.
    """
    _require_ncw(a)
    reachable = sorted(reachable_states(a))
    trimmed = trim(a)
    restricted, kept = g2_restrict(trimmed)
    labelled, order = reachability_labelling(restricted)
    tuned = tune_acceptance(labelled)
    # both trim and restrict renumber the surviving states in increasing order
    back = {i: reachable[q] for i, q in enumerate(sorted(kept))}
    state_of = tuple(back.get(q) for q, _ in order)
    reach_of = tuple(reach for _, reach in order)
    return NcwNormalisation(tuned, state_of, reach_of, frozenset(reachable[q] for q in kept))


def safety_game(c):
    """Safety game on pairs of states of ``c``.

    Adam picks a letter, Eve moves her state, Adam moves his.  Returns the
    game, the position of each pair, the immediate-win and immediate-loss
    edges for Eve and the inner layer holding Eve's moves.
    """
    from ..deciders import nested_layers

    starts = [(p, q) for p in range(c.n) for q in range(c.n)]
    layers, pos = nested_layers(letter_arena(c.alphabet), [c, universal_version(c)], starts)
    g = layers[-1]
    win = set()
    loss = set()
    for e, (_, lab, _) in enumerate(g.edges):
        if lab is None:
            continue
        if lab[2] == 1:
            win.add(e)
        elif lab[1] == 1:
            loss.add(e)
    return g, pos, win, loss, layers[1]


def safe_zone(norm):
    """Winning pairs, the safe zone and Eve's deterministic safe moves."""
    c = norm.automaton
    g, pos, win, loss, inner = safety_game(c)
    sol = solve_safety(g, win, loss)
    pairs = frozenset(k for k, v in pos.items() if sol.winner[v] == EVE)
    zone = frozenset(p for p in range(c.n) if (p, p) in pairs)
    strategy = {}
    delta = {}
    for s in zone:
        v = pos[s, s]
        for e in g.out_edges[v]:
            w = g.edges[e][2]
            x = inner.names[g.names[w][1]][3][0]
            target, prio = _eve_move(g, inner, sol.eve_strategy, w)
            strategy[s, c.alphabet[x]] = target
            if prio == 0:
                delta[s, c.alphabet[x]] = target
    return SafeZoneData(pairs, zone, delta, strategy)


def _eve_move(g, inner, eve_strategy, v):
    """Follow Eve's choice inside her automaton until the move is settled."""
    while g.names[v][0] == "s":
        out = g.out_edges[v]
        e = eve_strategy.get(v, out[0]) if g.owner[v] == EVE else out[0]
        _, lab, w = g.edges[e]
        v = w
    _, inner_target, _, lab, _ = g.names[v]
    return inner.names[inner_target][2], lab[1]


def safe_suffix_witness(norm, data, w):
    """Split point and state from which ``delta_det`` reads the rest of ``w`` safely.

    Returns ``(i, s)`` such that ``s`` shares the reachable-set component
    of the prefix of length ``i``, lies in the safe zone, and the
    deterministic safe moves are defined forever on the suffix.  Returns
    ``None`` when no split among the first ``len(w) * (n + 1)`` positions works.
    """
    c = norm.automaton
    limit = len(w.u) + len(w.v) * (c.n + 1)
    s = c.initial
    reach_at = []
    for i in range(limit):
        reach_at.append(norm.reach_of[s])
        s = c.successors[s, w.letter(_index(w, i))][0][0]
    for i in range(limit):
        for t in sorted(data.safe_zone):
            if norm.reach_of[t] != reach_at[i]:
                continue
            if _runs_forever(data.delta_det, w, _index(w, i), t):
                return i, t
    return None


def _index(w, i):
    if i < len(w):
        return i
    return len(w.u) + (i - len(w.u)) % len(w.v)


def _runs_forever(delta, w, i, s):
    seen = set()
    while (i, s) not in seen:
        seen.add((i, s))
        nxt = delta.get((s, w.letter(i)))
        if nxt is None:
            return False
        i, s = w.next(i), nxt
    return True
