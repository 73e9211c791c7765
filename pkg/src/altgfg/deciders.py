"""Deciding whether automata are good for games.

Every decider works on a reachable-trimmed copy of its input.  The naive
deciders solve the letter games directly and serve as the reference; the
token-game, breakpoint, box and joint-game routes are the fast paths.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass

from .automata import (
    DETERMINISTIC, NONDETERMINISTIC, UNIVERSAL, Automaton, dual, trim, universal_version,
)
from .conditions import EmersonLei, Even, Odd, all_of, any_of
from .config import guard_limit
from .errors import NotBuchi, NotNBW, NotNCW, NotNondeterministic, TooLarge
from .games import ADAM, EVE, solve
from .products import letter_arena, npw_emptiness, synchronized_product
from .transforms.dealternate import box_automaton, mh_breakpoint
from .transforms.determinise import complement_dpw, determinise_npw

FIRST_ATTEMPT_STATES = 20000


@dataclass(frozen=True)
class GfgVerdict:
    exists_gfg: bool
    forall_gfg: bool
    gfg: bool
    method: str
    witness: object = None


# ---------------------------------------------------------------------------
# nested products

def nested_layers(arena, automata, starts):
    """Run ``automata`` one after the other alongside ``arena``.

    ``starts`` lists tuples holding one state per automaton.  Returns every
    intermediate game (the arena first) and a dict from each start tuple
    to its position in the last game.  Labels end up as
    ``(letter, p1, p2, ...)`` with one priority slot per automaton.
    """
    starts = [tuple(t) for t in starts]
    pos = {(): arena.initial}
    layers = [arena]
    for depth, a in enumerate(automata):
        prefixes = sorted({t[:depth + 1] for t in starts})
        roots = sorted({(pos[p[:-1]], p[-1]) for p in prefixes})
        g = synchronized_product(layers[-1], a, roots)
        index = {name: i for i, name in enumerate(g.names)}
        pos = {p: index["s", pos[p[:-1]], p[-1]] for p in prefixes}
        layers.append(g)
    return layers, pos


def nested_product(arena, automata, starts):
    """Last game of :func:`nested_layers` with its start positions."""
    layers, pos = nested_layers(arena, automata, starts)
    return layers[-1], pos


def _eve_wins(g, v):
    return solve(g, roots=[v]).winner[v] == EVE


# ---------------------------------------------------------------------------
# complement monitors

_MONITORS = {}


def _sink(alphabet, priority):
    delta = {(0, x): 0 for x in alphabet}
    prio = {(0, x, 0): priority for x in alphabet}
    return Automaton(tuple(alphabet), 1, 0, delta, prio)


def _monitor_routes(a):
    """Candidate ways to a deterministic automaton for the complement of ``L(a)``."""
    if a.kind in (DETERMINISTIC, NONDETERMINISTIC):
        return [lambda: complement_dpw(determinise_npw(a))]
    if a.kind == UNIVERSAL:
        return [lambda: determinise_npw(dual(a))]
    inside = box_automaton(a)
    outside = box_automaton(dual(a))
    if npw_emptiness(inside)[0]:
        return [lambda: _sink(a.alphabet, 0)]
    if npw_emptiness(outside)[0]:
        return [lambda: _sink(a.alphabet, 1)]
    routes = [
        (outside.n * len(outside.index), lambda: determinise_npw(outside)),
        (inside.n * len(inside.index), lambda: complement_dpw(determinise_npw(inside))),
    ]
    routes.sort(key=lambda r: r[0])
    return [r[1] for r in routes]


def complement_monitor(a):
    """Deterministic parity automaton for the complement of ``L(a)``.

    Alternating inputs go through a box automaton, either of the dual or of
    ``a`` itself; the cheaper-looking route is tried first under a reduced
    state guard, then the others under the full guard.
    """
    cached = _MONITORS.get(a)
    if cached is not None:
        return cached
    routes = _monitor_routes(a)
    result = None
    if len(routes) > 1:
        with guard_limit(FIRST_ATTEMPT_STATES):
            for route in routes:
                try:
                    result = route()
                    break
                except TooLarge:
                    continue
    if result is None:
        error = None
        for route in routes:
            try:
                result = route()
                break
            except TooLarge as exc:
                error = exc
        if result is None:
            raise error
    _MONITORS[a] = result
    return result


def language_monitor(a):
    """Deterministic parity automaton for ``L(a)``."""
    return complement_dpw(complement_monitor(a))


# ---------------------------------------------------------------------------
# letter games

def letter_game(a, player=EVE, monitor=None):
    """Eve's (``player=EVE``) or Adam's letter game on ``a``.

    ``monitor`` must recognise the complement of ``L(a)``; it runs in
    parallel so that the condition only looks at colors.  Labels are
    ``(letter, monitor priority, priority of a)``; the condition is
    stated for Eve in both games.
    """
    a = trim(a)
    m = complement_monitor(a) if monitor is None else monitor
    chooser = ADAM if player == EVE else EVE
    g, pos = nested_product(letter_arena(a.alphabet, chooser), [m, a], [(m.initial, a.initial)])
    if player == EVE:
        cond = EmersonLei(any_of(Even(1), Even(2)))
    else:
        cond = EmersonLei(all_of(Even(1), Even(2)))
    return g.with_condition(cond, initial=pos[m.initial, a.initial])


def is_exists_gfg_naive(a, monitor=None):
    """Eve wins her letter game."""
    g = letter_game(a, EVE, monitor)
    return _eve_wins(g, g.initial)


def is_forall_gfg_naive(a, monitor=None):
    """Adam wins his letter game."""
    g = letter_game(a, ADAM, monitor)
    return not _eve_wins(g, g.initial)


# ---------------------------------------------------------------------------
# token games

def _require_nondet(a):
    if a.kind not in (DETERMINISTIC, NONDETERMINISTIC):
        raise NotNondeterministic("token games need a nondeterministic automaton, got %s" % a.kind)


def token_game(a, k, full=False):
    """Eve moves one token, Adam picks letters and moves ``k`` tokens.

    A round reads Adam's letter, then Eve's move, then Adam's tokens in
    order.  Eve wins iff her run accepts or every run of Adam's tokens
    rejects.  With ``full`` the game covers every start tuple, otherwise
    only the one with all tokens on the initial state.  Returns the game
    and the dict from start tuples to positions.
    """
    _require_nondet(a)
    if k < 1:
        raise ValueError("need at least one token for Adam")
    if full:
        starts = list(itertools.product(range(a.n), repeat=k + 1))
    else:
        starts = [(a.initial,) * (k + 1)]
    adam = universal_version(a)
    g, pos = nested_product(letter_arena(a.alphabet, ADAM), [a] + [adam] * k, starts)
    cond = EmersonLei(any_of(Even(1), all_of(*[Odd(i) for i in range(2, k + 2)])))
    return g.with_condition(cond, initial=pos[starts[0]]), pos


def _is_ncw(a):
    return a.kind in (DETERMINISTIC, NONDETERMINISTIC) and a.index <= {0, 1}


def _is_nbw(a):
    return a.kind in (DETERMINISTIC, NONDETERMINISTIC) and a.index <= {1, 2}


def _wins_g2(a):
    g, pos = token_game(a, 2)
    return _eve_wins(g, g.initial)


def is_gfg_ncw_g2(a):
    """Good-for-games test for coBüchi automata: Eve wins the 2-token game."""
    a = trim(a)
    if not _is_ncw(a):
        raise NotNCW("expected a nondeterministic coBüchi automaton")
    return _wins_g2(a)


def is_gfg_nbw_g2(a):
    """Good-for-games test for Büchi automata: Eve wins the 2-token game."""
    a = trim(a)
    if not _is_nbw(a):
        raise NotNBW("expected a nondeterministic Büchi automaton")
    return _wins_g2(a)


# ---------------------------------------------------------------------------
# half good-for-games via removal of alternation

def is_exists_gfg_abw(a):
    """Eve wins her letter game on an alternating Büchi automaton.

    Decided as good-for-gameness of the breakpoint automaton.
    """
    a = trim(a)
    if not a.index <= {1, 2}:
        raise NotBuchi("expected priorities within {1, 2}")
    return is_gfg_nbw_g2(mh_breakpoint(a))


def _nondet_gfg(b, monitor):
    """Good-for-gameness of a nondeterministic automaton, by the cheapest exact route."""
    b = trim(b)
    token_cost = b.n ** 3
    naive_cost = b.n * monitor.n * 2
    if (_is_ncw(b) or _is_nbw(b)) and token_cost <= naive_cost:
        return _wins_g2(b)
    return is_exists_gfg_naive(b, monitor)


def is_exists_gfg_apw(a, monitor=None):
    """Eve wins her letter game on ``a``, decided on the box automaton.

    The box automaton is nondeterministic with the same language as ``a``
    and is good for games exactly when ``a`` is existentially so.
    """
    a = trim(a)
    m = complement_monitor(a) if monitor is None else monitor
    return _nondet_gfg(box_automaton(a), m)


def joint_game(a):
    """Adam picks letters; Eve extends runs of ``Box(a)`` and ``Box(dual(a))``.

    Eve wins iff one of the two runs accepts.
    """
    a = trim(a)
    inside = box_automaton(a)
    outside = box_automaton(dual(a))
    g, pos = nested_product(letter_arena(a.alphabet, ADAM), [inside, outside],
                            [(inside.initial, outside.initial)])
    cond = EmersonLei(any_of(Even(1), Even(2)))
    return g.with_condition(cond, initial=pos[inside.initial, outside.initial])


def is_gfg_apw(a, witness=False):
    """Full good-for-games verdict of an alternating parity automaton.

    The joint game decides good-for-gameness.  When it fails, each half is
    decided on the box automata of ``a`` and of its dual.
    """
    a = trim(a)
    g = joint_game(a)
    sol = solve(g, roots=[g.initial], strategies=witness)
    gfg = sol.winner[g.initial] == EVE
    if gfg:
        return GfgVerdict(True, True, True, "joint", sol.eve_strategy if witness else None)
    m = complement_monitor(a)
    exists = is_exists_gfg_apw(a, m)
    forall = _nondet_gfg(box_automaton(dual(a)), complement_dpw(m))
    return GfgVerdict(exists, forall, False, "joint", sol.adam_strategy if witness else None)


def decide(a, method="auto"):
    """Verdict by the requested method: ``naive``, ``g2``, ``joint`` or ``auto``."""
    a = trim(a)
    if method == "auto":
        if _is_ncw(a) or _is_nbw(a):
            method = "g2"
        else:
            method = "joint"
    if method == "naive":
        exists = is_exists_gfg_naive(a)
        forall = is_forall_gfg_naive(a)
        return GfgVerdict(exists, forall, exists and forall, "naive")
    if method == "g2":
        if _is_ncw(a):
            gfg = is_gfg_ncw_g2(a)
        elif _is_nbw(a):
            gfg = is_gfg_nbw_g2(a)
        else:
            raise NotNondeterministic("the token-game method needs a Büchi or coBüchi automaton")
        # nondeterministic automata are always universally good for games
        return GfgVerdict(gfg, True, gfg, "g2")
    if method == "joint":
        return is_gfg_apw(a)
    raise ValueError("unknown method %r" % method)
