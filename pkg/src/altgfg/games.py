"""Two-player games on finite arenas with colored edges.

Positions are dense integers owned by Eve (0) or Adam (1).  Each edge is a
triple ``(source, label, target)`` where ``label`` is ``None`` for silent
edges and an integer vector otherwise.  Silent edges behave as priority 0
for parity purposes, which is neutral because every cycle carries a
labelled edge.
"""
from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property

from .conditions import EmersonLei, Parity, ZielonkaTree
from .errors import NotParity, TooLarge

EVE = 0
ADAM = 1


def opponent(player):
    return 1 - player


@dataclass(frozen=True, eq=False)
class Game:
    owner: tuple
    edges: tuple
    initial: int = 0
    condition: object = None
    partial: bool = False
    names: tuple = field(default=None, repr=False)

    @property
    def size(self):
        return len(self.owner)

    @cached_property
    def out_edges(self):
        out = [[] for _ in self.owner]
        for i, (s, _, _) in enumerate(self.edges):
            out[s].append(i)
        return out

    @cached_property
    def in_edges(self):
        inc = [[] for _ in self.owner]
        for i, (_, _, t) in enumerate(self.edges):
            inc[t].append(i)
        return inc

    def with_condition(self, condition, initial=None):
        return Game(self.owner, self.edges, self.initial if initial is None else initial,
                    condition, self.partial, self.names)

    def terminals(self):
        return [v for v, out in enumerate(self.out_edges) if not out]

    def colors(self):
        return {lab for _, lab, _ in self.edges if lab is not None}

    def __repr__(self):
        return "Game(%d positions, %d edges, %s)" % (len(self.owner), len(self.edges), self.condition)


@dataclass(frozen=True)
class GameSolution:
    """Winner per position and strategies on the winning regions.

    For parity games the strategies are dicts from position to edge id.
    Games with an Emerson-Lei condition carry :class:`StrategyWithMemory`
    objects instead (or ``None`` when the solver does not produce them).
    """

    winner: tuple
    eve_strategy: object
    adam_strategy: object

    def region(self, player):
        return {v for v, w in enumerate(self.winner) if w == player}

    def strategy(self, player):
        return self.eve_strategy if player == EVE else self.adam_strategy


@dataclass(frozen=True)
class StrategyWithMemory:
    memory: tuple
    initial: int
    update: dict
    choice: dict

    def move(self, m, position):
        return self.choice.get((m, position))


class Builder:
    """Incremental construction of a game keyed by hashable position names."""

    def __init__(self):
        self.ids = {}
        self.owner = []
        self.names = []
        self.edges = []

    def position(self, name, owner):
        pid = self.ids.get(name)
        if pid is None:
            pid = len(self.owner)
            self.ids[name] = pid
            self.owner.append(owner)
            self.names.append(name)
        return pid

    def edge(self, source, label, target):
        self.edges.append((source, label, target))

    def game(self, initial=0, condition=None, partial=False):
        return Game(tuple(self.owner), tuple(self.edges), initial, condition, partial, tuple(self.names))


def _priorities(g, track):
    return [0 if lab is None else lab[track] for _, lab, _ in g.edges]


def attractor(g, player, positions, edges, target_positions=(), target_edges=(), blocked=()):
    """Positions from which ``player`` forces reaching a target.

    A target is either a position of ``target_positions`` or the traversal
    of an edge in ``target_edges``.  Only edges in ``edges`` (between
    ``positions``) are playable; ``blocked`` edges are playable but never
    lead towards the target.  Returns the attractor and the attracting
    move for every ``player`` position added to it.
    """
    attr = set(target_positions)
    strat = {}
    count = {}
    for v in positions:
        if g.owner[v] != player and v not in attr:
            count[v] = sum(1 for e in g.out_edges[v] if e in edges)
    queue = deque(attr)
    for v, c in count.items():
        if c == 0:
            attr.add(v)
            queue.append(v)

    def good(e):
        v = g.edges[e][0]
        if v in attr:
            return
        if g.owner[v] == player:
            attr.add(v)
            strat[v] = e
            queue.append(v)
        else:
            count[v] -= 1
            if count[v] == 0:
                attr.add(v)
                queue.append(v)

    targets = sorted(e for e in target_edges if e in edges)
    for e in targets:
        good(e)
    targets = set(targets)
    while queue:
        w = queue.popleft()
        for e in g.in_edges[w]:
            if e in edges and e not in targets and e not in blocked:
                good(e)
    return attr, strat


def _zielonka(g, prio, positions, edges):
    won = (set(), set())
    strat = {}
    positions = set(positions)
    edges = set(edges)
    while positions:
        if not edges:
            raise ValueError("subgame without moves")
        d = max(prio[e] for e in edges)
        me = d % 2
        other = 1 - me
        top = {e for e in edges if prio[e] == d}
        a, a_strat = attractor(g, me, positions, edges, (), top)
        rest = positions - a
        rest_edges = {e for e in edges
                      if prio[e] != d and g.edges[e][0] in rest and g.edges[e][2] in rest}
        sub_won, sub_strat = _zielonka(g, prio, rest, rest_edges)
        if not sub_won[other]:
            won[me].update(positions)
            for v in rest:
                if g.owner[v] == me:
                    strat[v] = sub_strat[v]
            for v, e in a_strat.items():
                strat[v] = e
            break
        b, b_strat = attractor(g, other, positions, edges, sub_won[other])
        won[other].update(b)
        for v in sub_won[other]:
            if g.owner[v] == other:
                strat[v] = sub_strat[v]
        for v, e in b_strat.items():
            strat[v] = e
        positions -= b
        edges = {e for e in edges if g.edges[e][0] in positions and g.edges[e][2] in positions}
    return won, strat


def _check_total(g):
    if g.terminals():
        raise ValueError("game has terminal positions")


def solve_parity(g):
    """Zielonka's recursive algorithm with positional strategies."""
    if not isinstance(g.condition, Parity):
        raise NotParity("solve_parity needs a parity condition, got %s" % (g.condition,))
    _check_total(g)
    prio = _priorities(g, g.condition.track)
    won, strat = _zielonka(g, prio, range(g.size), range(len(g.edges)))
    winner = tuple(EVE if v in won[EVE] else ADAM for v in range(g.size))
    eve = {v: e for v, e in strat.items() if g.owner[v] == EVE and winner[v] == EVE}
    adam = {v: e for v, e in strat.items() if g.owner[v] == ADAM and winner[v] == ADAM}
    return GameSolution(winner, eve, adam)


@dataclass(frozen=True)
class CompiledGame:
    """Parity game obtained by running a color monitor alongside ``source``.

    ``origin[i]`` is the pair (source position, monitor leaf) of compiled
    position ``i`` and ``entry[v]`` the compiled position that starts at
    ``v`` with the initial monitor state.
    """

    game: Game
    source: Game
    tree: ZielonkaTree
    origin: tuple
    entry: dict


def compile_emerson_lei(g, roots=None):
    """Product of ``g`` with the Zielonka-tree monitor of its condition.

    Only positions reachable from ``roots`` (default: every position)
    paired with the initial monitor state are built.
    """
    cond = g.condition
    if isinstance(cond, Parity):
        cond = EmersonLei(cond)
    tree = ZielonkaTree(cond, {tuple(lab[t] for t in sorted(cond.tracks())) for lab in g.colors()})
    proj = tree.project
    leaf0 = tree.leaf_index[_leftmost(tree)]
    ids = {}
    origin = []
    owner = []
    edges = []
    queue = deque()

    def pid(v, m):
        key = (v, m)
        i = ids.get(key)
        if i is None:
            i = len(origin)
            ids[key] = i
            origin.append(key)
            owner.append(g.owner[v])
            queue.append(key)
        return i

    roots = range(g.size) if roots is None else roots
    entry = {v: pid(v, leaf0) for v in roots}
    while queue:
        v, m = queue.popleft()
        src = ids[v, m]
        for e in g.out_edges[v]:
            _, lab, w = g.edges[e]
            if lab is None:
                edges.append((src, (0,), pid(w, m)))
            else:
                m2, p = tree.step(m, proj(lab))
                edges.append((src, (p,), pid(w, m2)))
    init = entry.get(g.initial)
    if init is None:
        init = pid(g.initial, leaf0)
        entry[g.initial] = init
        while queue:
            v, m = queue.popleft()
            src = ids[v, m]
            for e in g.out_edges[v]:
                _, lab, w = g.edges[e]
                if lab is None:
                    edges.append((src, (0,), pid(w, m)))
                else:
                    m2, p = tree.step(m, proj(lab))
                    edges.append((src, (p,), pid(w, m2)))
    pg = Game(tuple(owner), tuple(edges), init, Parity(0), g.partial, tuple(origin))
    return CompiledGame(pg, g, tree, tuple(origin), entry)


def _leftmost(tree):
    node = 0
    while tree.children[node]:
        node = tree.children[node][0]
    return node


def project_strategy(cg, solution, player):
    """Turn a positional strategy on a compiled game into one with memory."""
    g = cg.source
    update = {}
    choice = {}
    edge_of = {}
    for i, (v, m) in enumerate(cg.origin):
        for k, e in enumerate(g.out_edges[v]):
            edge_of[i, k] = e
    compiled_out = cg.game.out_edges
    strat = solution.strategy(player)
    for i, (v, m) in enumerate(cg.origin):
        for k, e in enumerate(g.out_edges[v]):
            lab = g.edges[e][1]
            if lab is None:
                update[m, e] = m
            else:
                update[m, e] = cg.tree.step(m, cg.tree.project(lab))[0]
        ce = strat.get(i)
        if ce is not None and g.owner[v] == player:
            k = compiled_out[i].index(ce)
            choice[m, v] = g.out_edges[v][k]
    leaf0 = cg.origin[cg.entry[next(iter(cg.entry))]][1]
    return StrategyWithMemory(tuple(range(len(cg.tree.leaves))), leaf0, update, choice)


def solve(g, roots=None, strategies=False):
    """Solve a parity or Emerson-Lei game.

    Emerson-Lei games are compiled first; the winner of a source position
    is the winner of its entry in the compiled game.  Positions outside
    ``roots`` are reported as ``None`` when ``roots`` is given.
    """
    if isinstance(g.condition, Parity):
        return solve_parity(g)
    cg = compile_emerson_lei(g, roots)
    sol = solve_parity(cg.game)
    winner = [None] * g.size
    for v, i in cg.entry.items():
        winner[v] = sol.winner[i]
    eve = adam = None
    if strategies:
        eve = project_strategy(cg, sol, EVE)
        adam = project_strategy(cg, sol, ADAM)
    return GameSolution(tuple(winner), eve, adam)


def solve_safety(g, eve_immediate_win=(), eve_immediate_loss=()):
    """Safety game: Eve wins infinite plays and plays ending on a win edge.

    Traversing a loss edge ends the play as an Adam win.  A player stuck
    in a terminal position loses.
    """
    win = set(eve_immediate_win)
    loss = set(eve_immediate_loss)
    if win & loss:
        raise ValueError("win and loss edge sets overlap")
    everything = set(range(len(g.edges)))
    adam_region, adam_strat = attractor(g, ADAM, range(g.size), everything, (), loss, blocked=win)
    winner = tuple(ADAM if v in adam_region else EVE for v in range(g.size))
    eve_strat = {}
    for v in range(g.size):
        if g.owner[v] != EVE or winner[v] != EVE:
            continue
        for e in g.out_edges[v]:
            if e in win or (e not in loss and winner[g.edges[e][2]] == EVE):
                eve_strat[v] = e
                break
    return GameSolution(winner, eve_strat, {v: e for v, e in adam_strat.items() if winner[v] == ADAM})


# ---------------------------------------------------------------------------
# brute force oracle

BRUTE_FORCE_POSITIONS = 16
BRUTE_FORCE_STRATEGIES = 1 << 16


def _sccs(nodes, succ):
    """Tarjan's algorithm, iterative.  ``succ(v)`` yields successors."""
    index = {}
    low = {}
    on = set()
    stack = []
    out = []
    counter = 0
    for root in nodes:
        if root in index:
            continue
        work = [(root, iter(succ(root)))]
        index[root] = low[root] = counter
        counter += 1
        stack.append(root)
        on.add(root)
        while work:
            v, it = work[-1]
            advanced = False
            for w in it:
                if w not in index:
                    index[w] = low[w] = counter
                    counter += 1
                    stack.append(w)
                    on.add(w)
                    work.append((w, iter(succ(w))))
                    advanced = True
                    break
                if w in on:
                    low[v] = min(low[v], index[w])
            if advanced:
                continue
            work.pop()
            if work:
                u = work[-1][0]
                low[u] = min(low[u], low[v])
            if low[v] == index[v]:
                comp = []
                while True:
                    w = stack.pop()
                    on.discard(w)
                    comp.append(w)
                    if w == v:
                        break
                out.append(comp)
    return out


def _one_player_losers(g, prio, chosen, parity):
    """Positions from which the free player reaches a cycle of parity ``parity``.

    ``chosen`` fixes one edge per position of the other player.
    """
    live = [e for e in range(len(g.edges)) if chosen.get(g.edges[e][0], e) == e]
    bad = set()
    for p in sorted({prio[e] for e in live}):
        if p % 2 != parity:
            continue
        sub = [e for e in live if prio[e] <= p]
        succ = {}
        for e in sub:
            succ.setdefault(g.edges[e][0], []).append(g.edges[e][2])
        comps = _sccs(list(succ), lambda v: succ.get(v, ()))
        where = {}
        for k, comp in enumerate(comps):
            for v in comp:
                where[v] = k
        for e in sub:
            s, _, t = g.edges[e]
            if prio[e] == p and where.get(s) == where.get(t) and s in where:
                bad.update(comps[where[s]])
    pred = {}
    for e in live:
        pred.setdefault(g.edges[e][2], []).append(g.edges[e][0])
    reach = set(bad)
    stack = list(bad)
    while stack:
        v = stack.pop()
        for u in pred.get(v, ()):
            if u not in reach:
                reach.add(u)
                stack.append(u)
    return reach


def _positional_choices(g, player):
    mine = [v for v in range(g.size) if g.owner[v] == player]
    options = [g.out_edges[v] for v in mine]
    total = 1
    for o in options:
        total *= len(o)
    if total > BRUTE_FORCE_STRATEGIES:
        raise TooLarge("%d positional strategies" % total)
    for combo in itertools.product(*options):
        yield dict(zip(mine, combo))


def _best_response_regions(g, prio, player):
    """Union of the positions won by some positional strategy of ``player``,
    together with one strategy that wins all of them (if any does)."""
    results = []
    region = set()
    for strat in _positional_choices(g, player):
        good = frozenset(range(g.size)) - _one_player_losers(g, prio, strat, 1 - player)
        results.append((strat, good))
        region |= good
    for strat, good in results:
        if good == region:
            return region, {v: e for v, e in strat.items() if v in region}
    raise AssertionError("no uniform positional strategy found")


def _brute_parity(g):
    prio = _priorities(g, g.condition.track)
    eve_region, eve = _best_response_regions(g, prio, EVE)
    adam_region, adam = _best_response_regions(g, prio, ADAM)
    if eve_region & adam_region or len(eve_region | adam_region) != g.size:
        raise AssertionError("brute force found a non-determined game")
    winner = tuple(EVE if v in eve_region else ADAM for v in range(g.size))
    return GameSolution(winner, eve, adam)


def _mcnaughton(g, cond, positions, edges):
    won = (set(), set())
    positions = set(positions)
    edges = set(edges)
    tracks = sorted(cond.tracks())
    width = max(tracks) + 1 if tracks else 0
    while positions:
        colors = sorted({g.edges[e][1] for e in edges if g.edges[e][1] is not None})
        top = [0] * width
        for c in colors:
            for t in tracks:
                top[t] = max(top[t], c[t])
        me = EVE if cond.holds(top) else ADAM
        other = 1 - me
        for c in colors:
            hit = {e for e in edges if g.edges[e][1] == c}
            a, _ = attractor(g, me, positions, edges, (), hit)
            rest = positions - a
            rest_edges = {e for e in edges
                          if e not in hit and g.edges[e][0] in rest and g.edges[e][2] in rest}
            sub = _mcnaughton(g, cond, rest, rest_edges)
            if sub[other]:
                b, _ = attractor(g, other, positions, edges, sub[other])
                won[other].update(b)
                positions -= b
                edges = {e for e in edges if g.edges[e][0] in positions and g.edges[e][2] in positions}
                break
        else:
            won[me].update(positions)
            break
    return won


def brute_force_solve(g):
    """Exact solver for small games, independent of Zielonka and monitors.

    Parity games: every positional strategy of each player is checked by
    cycle analysis of the remaining one-player graph.  Emerson-Lei games:
    McNaughton's recursion over sets of colors (winners only).
    """
    if g.size > BRUTE_FORCE_POSITIONS:
        raise TooLarge("%d positions exceed the brute force guard" % g.size)
    _check_total(g)
    if isinstance(g.condition, Parity):
        return _brute_parity(g)
    won = _mcnaughton(g, g.condition, range(g.size), range(len(g.edges)))
    winner = tuple(EVE if v in won[EVE] else ADAM for v in range(g.size))
    return GameSolution(winner, None, None)


def check_strategy(g, solution, player):
    """True iff the positional strategy keeps ``player`` inside its region."""
    strat = solution.strategy(player)
    region = solution.region(player)
    for v in region:
        if g.owner[v] == player:
            e = strat.get(v)
            if e is None or g.edges[e][0] != v or g.edges[e][2] not in region:
                return False
        else:
            if any(g.edges[e][2] not in region for e in g.out_edges[v]):
                return False
    return True
