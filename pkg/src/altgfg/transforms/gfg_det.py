"""Determinising good-for-games alternating automata.

Two games fix how the choices of ``A`` are resolved.  In the first, Adam
picks letters, Eve runs ``Box(dual(A))`` and both resolve ``A``; Eve wins
when the box run or the path of ``A`` accepts.  In the second, Eve picks
letters, Adam runs ``Box(A)``; Adam wins when the box run accepts or the
path of ``A`` rejects.  Following Eve's strategy from the first game at
disjunctions and Adam's from the second at conjunctions yields a single
path of ``A`` per word, which is accepting exactly on ``L(A)``.
"""
from __future__ import annotations

from collections import deque

from ..automata import OR, dual, from_successors, trim, universal_version
from ..conditions import EmersonLei, Even, Odd, all_of, any_of
from ..config import state_guard
from ..errors import AlphabetMismatch, NotGFG, TooLarge
from ..games import ADAM, EVE, compile_emerson_lei, solve_parity
from ..products import letter_arena
from .dealternate import box_automaton
from .reduce import quotient


def _check_alphabet(a, b):
    if tuple(a.alphabet) != tuple(b.alphabet):
        raise AlphabetMismatch("%s versus %s" % (a.alphabet, b.alphabet))


def _game_G_layers(a, box_dual):
    from ..deciders import nested_layers

    _check_alphabet(a, box_dual)
    layers, pos = nested_layers(letter_arena(a.alphabet, ADAM), [box_dual, a],
                                [(box_dual.initial, a.initial)])
    g = layers[-1].with_condition(EmersonLei(any_of(Even(1), Even(2))),
                                  initial=pos[box_dual.initial, a.initial])
    return g, layers[1]


def _game_Gprime_layers(a, box):
    from ..deciders import nested_layers

    _check_alphabet(a, box)
    layers, pos = nested_layers(letter_arena(a.alphabet, EVE), [universal_version(box), a],
                                [(box.initial, a.initial)])
    g = layers[-1].with_condition(EmersonLei(all_of(Odd(1), Even(2))),
                                  initial=pos[box.initial, a.initial])
    return g, layers[1]


def build_game_G(a, box_dual):
    """Adam picks letters, Eve moves in ``box_dual``, then both resolve ``a``.

    Labels are ``(letter, box priority, priority of a)``; Eve wins iff
    either track is even.
    """
    return _game_G_layers(a, box_dual)[0]


def build_game_Gprime(a, box):
    """Eve picks letters, Adam moves in ``box``, then both resolve ``a``.

    Eve wins iff the path of ``a`` accepts and the box run rejects.
    """
    return _game_Gprime_layers(a, box)[0]


class _Side:
    """One of the two games with a positional winning strategy of ``player``.

    The strategy lives on the compiled parity game; it is read back on the
    source game as a choice depending on the position and the memory leaf.
    """

    def __init__(self, g, inner, player):
        self.g = g
        self.inner = inner
        self.player = player
        self.cg = compile_emerson_lei(g, roots=[g.initial])
        sol = solve_parity(self.cg.game)
        start = self.cg.entry[g.initial]
        self.wins = sol.winner[start] == player
        self.strategy = sol.strategy(player)
        self.where = {key: i for i, key in enumerate(self.cg.origin)}
        self.start_memory = self.cg.origin[start][1]

    def choose(self, v, m):
        i = self.where[v, m]
        k = self.cg.game.out_edges[i].index(self.strategy[i])
        return self.g.out_edges[v][k]

    def remember(self, m, label):
        tree = self.cg.tree
        return tree.step(m, tree.project(label))[0]

    def pick_letter(self, v, x):
        """Edge from round position ``v`` that selects letter index ``x``."""
        for e in self.g.out_edges[v]:
            w = self.g.edges[e][2]
            if self.inner.names[self.g.names[w][1]][3][0] == x:
                return e
        raise KeyError(x)

    def box_part(self, v, m):
        """Resolve the box automaton's move; stop at the first formula of ``a``."""
        g = self.g
        while g.names[v][0] == "s":
            out = g.out_edges[v]
            e = self.choose(v, m) if g.owner[v] == self.player and len(out) > 1 else out[0]
            v = g.edges[e][2]
        return v

    def box_state(self, v):
        """State of the box automaton at round position ``v``."""
        return self.inner.names[self.g.names[v][1]][2]


def _child(g, v, node):
    for e in g.out_edges[v]:
        if g.names[g.edges[e][2]][4] == node:
            return e
    raise KeyError(node)


def _play_round(a, eve, adam, v_eve, m_eve, v_adam, m_adam, x):
    """One letter: Eve's side picks disjunctions, Adam's side conjunctions."""
    u_eve = eve.box_part(eve.g.edges[eve.pick_letter(v_eve, x)][2], m_eve)
    u_adam = adam.box_part(adam.g.edges[adam.pick_letter(v_adam, x)][2], m_adam)
    ge, ga = eve.g, adam.g
    while True:
        _, _, q, _, node = ge.names[u_eve]
        op, payload = a.nodes[q, a.alphabet[x]][node]
        if op == "atom":
            (e_eve,) = ge.out_edges[u_eve]
            (e_adam,) = ga.out_edges[u_adam]
            break
        if op == OR:
            e = eve.choose(u_eve, m_eve)
            child = ge.names[ge.edges[e][2]][4]
            e_eve, e_adam = e, _child(ga, u_adam, child)
        else:
            e = adam.choose(u_adam, m_adam)
            child = ga.names[ga.edges[e][2]][4]
            e_eve, e_adam = _child(ge, u_eve, child), e
        u_eve = ge.edges[e_eve][2]
        u_adam = ga.edges[e_adam][2]
    _, lab_eve, next_eve = ge.edges[e_eve]
    _, lab_adam, next_adam = ga.edges[e_adam]
    nxt = (next_eve, eve.remember(m_eve, lab_eve), next_adam, adam.remember(m_adam, lab_adam))
    return nxt, lab_eve[2]


def gfg_determinise(a):
    """Deterministic parity automaton for a good-for-games alternating one.

    States pair a position of each game with the memory of the strategy
    played there; they are named ``(q, p1, m1, p2, m2)`` with ``q`` a state
    of ``a``, ``p1`` a state of ``Box(a)`` and ``p2`` one of
    ``Box(dual(a))``.  Priorities are those of ``a``.  Raises
    :class:`NotGFG` when either game is lost.
    """
    a = trim(a)
    box = box_automaton(a)
    box_dual = box_automaton(dual(a))
    eve = _Side(*_game_G_layers(a, box_dual), EVE)
    if not eve.wins:
        raise NotGFG("Eve loses the game against the dual box automaton")
    adam = _Side(*_game_Gprime_layers(a, box), ADAM)
    if not adam.wins:
        raise NotGFG("Adam loses the game against the box automaton")

    start = (eve.g.initial, eve.start_memory, adam.g.initial, adam.start_memory)
    ids = {start: 0}
    order = [start]
    queue = deque([start])
    succ = {}
    guard = state_guard()
    while queue:
        state = queue.popleft()
        for x, letter in enumerate(a.alphabet):
            nxt, prio = _play_round(a, eve, adam, state[0], state[1], state[2], state[3], x)
            if nxt not in ids:
                ids[nxt] = len(order)
                order.append(nxt)
                queue.append(nxt)
                if len(order) > guard:
                    raise TooLarge("determinisation exceeded %d states" % guard)
            succ[ids[state], letter] = [(ids[nxt], prio)]
    names = [(eve.g.names[ve][2], adam.box_state(va), ma, eve.box_state(ve), me)
             for ve, me, va, ma in order]
    return quotient(from_successors(a.alphabet, len(order), 0, succ, names))
