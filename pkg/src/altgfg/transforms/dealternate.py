"""Removing alternation: box automata and the breakpoint construction."""
from __future__ import annotations

from collections import deque
from functools import lru_cache

from ..automata import from_successors, minimal_models
from ..config import state_guard
from ..errors import NotBuchi, TooLarge
from ..products import all_boxes
from .determinise import complement_dpw, determinise_npw
from .reduce import reduce_nondet


def path_guesser(a, boxes):
    """Nondeterministic automaton over box indices that follows one path.

    Priorities are shifted by one, so it accepts exactly the box words
    with some rejecting path.
    """
    letters = tuple("x%d" % i for i in range(len(boxes)))
    succ = {}
    for q in range(a.n):
        for name, box in zip(letters, boxes):
            succ[q, name] = [(r, a.priority[q, box.letter, r] + 1) for r in box.targets(q)]
    return from_successors(letters, a.n, a.initial, succ, None)


def minimal_boxes(a):
    """Boxes whose relation contains no other box of the same letter.

    A larger relation only adds paths, so dropping it keeps the language
    of the box automaton.
    """
    keep = []
    for b in all_boxes(a):
        if not any(c.letter == b.letter and c.relation < b.relation for c in all_boxes(a)):
            keep.append(b)
    return keep


def build_univ_acc_dpw(a, boxes=None):
    """Deterministic automaton over boxes accepting the universally accepting words.

    Returns the automaton (letters ``x0, x1, ...``) and the list of boxes
    those letters stand for, which defaults to the minimal boxes.
    """
    if boxes is None:
        boxes = minimal_boxes(a)
    guesser = path_guesser(a, boxes)
    return complement_dpw(determinise_npw(guesser)), boxes


def box_automaton(a):
    """Nondeterministic automaton over the original alphabet guessing one box per letter."""
    return _box_automaton(a)


@lru_cache(maxsize=256)
def _box_automaton(a):
    dpw, boxes = build_univ_acc_dpw(a)
    by_letter = {x: [] for x in a.alphabet}
    for name, box in zip(dpw.alphabet, boxes):
        by_letter[box.letter].append(name)
    succ = {}
    for p in range(dpw.n):
        for x in a.alphabet:
            succ[p, x] = [dpw.successors[p, name][0] for name in by_letter[x]]
    return reduce_nondet(from_successors(a.alphabet, dpw.n, dpw.initial, succ, None))


def mh_breakpoint(a):
    """Nondeterministic Büchi automaton for an alternating Büchi automaton.

    States are pairs ``(S, O)`` of frozensets with ``O`` the states still
    owing a visit to an accepting transition since the last breakpoint.
    """
    if not a.index <= {1, 2}:
        raise NotBuchi("breakpoint construction needs priorities within {1, 2}")
    models = {key: sorted(minimal_models(f), key=lambda m: (len(m), sorted(m)))
              for key, f in a.delta.items()}
    start = (frozenset([a.initial]), frozenset())
    ids = {start: 0}
    order = [start]
    queue = deque([start])
    succ = {}
    guard = state_guard()
    while queue:
        s, o = queue.popleft()
        src = ids[s, o]
        for x in a.alphabet:
            options = [()]
            for q in sorted(s):
                options = [opt + ((q, m),) for opt in options for m in models[q, x]]
            moves = []
            for opt in options:
                s2 = frozenset().union(*(m for _, m in opt))
                owing = o if o else s
                o2 = frozenset(r for q, m in opt if q in owing
                               for r in m if a.priority[q, x, r] == 1)
                key = (s2, o2)
                if key not in ids:
                    ids[key] = len(order)
                    order.append(key)
                    queue.append(key)
                    if len(order) > guard:
                        raise TooLarge("breakpoint construction exceeded %d states" % guard)
                moves.append((ids[key], 2 if not o2 else 1))
            succ[src, x] = moves
    names = [(tuple(sorted(s)), tuple(sorted(o))) for s, o in order]
    return from_successors(a.alphabet, len(order), 0, succ, names)
