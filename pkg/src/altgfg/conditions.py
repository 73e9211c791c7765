"""Winning conditions over colored edges and their reduction to parity.

Edge labels are integer vectors with one slot per color track.  Every
condition here depends only on the largest value seen infinitely often on
each track, which covers parity conditions, Büchi/coBüchi style
``Inf``/``Fin`` atoms and arbitrary positive Boolean combinations of them.

The reduction to parity follows the Zielonka tree of the condition: leaves
of the tree are the memory states of a deterministic parity monitor that
reads one color vector per labelled edge.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass

from .errors import TooManyColors

MAX_TRACKS = 8
MAX_LEAVES = 20000


@dataclass(frozen=True)
class Parity:
    """Max-parity on one track: Eve wins iff the top recurring value is even."""

    track: int = 0

    def holds(self, top):
        return top[self.track] % 2 == 0

    def tracks(self):
        return {self.track}

    def __str__(self):
        return "Parity(%d)" % self.track


@dataclass(frozen=True)
class Even:
    track: int

    def holds(self, top):
        return top[self.track] % 2 == 0

    def tracks(self):
        return {self.track}

    def __str__(self):
        return "Even(%d)" % self.track


@dataclass(frozen=True)
class Odd:
    track: int

    def holds(self, top):
        return top[self.track] % 2 == 1

    def tracks(self):
        return {self.track}

    def __str__(self):
        return "Odd(%d)" % self.track


@dataclass(frozen=True)
class Inf:
    """Some value ``>= at_least`` recurs on ``track``."""

    track: int
    at_least: int = 1

    def holds(self, top):
        return top[self.track] >= self.at_least

    def tracks(self):
        return {self.track}

    def __str__(self):
        return "Inf(%d>=%d)" % (self.track, self.at_least)


@dataclass(frozen=True)
class Fin:
    track: int
    at_least: int = 1

    def holds(self, top):
        return top[self.track] < self.at_least

    def tracks(self):
        return {self.track}

    def __str__(self):
        return "Fin(%d>=%d)" % (self.track, self.at_least)


@dataclass(frozen=True)
class All:
    parts: tuple

    def holds(self, top):
        return all(p.holds(top) for p in self.parts)

    def tracks(self):
        return set().union(*(p.tracks() for p in self.parts))

    def __str__(self):
        return "(" + " & ".join(map(str, self.parts)) + ")"


@dataclass(frozen=True)
class Any:
    parts: tuple

    def holds(self, top):
        return any(p.holds(top) for p in self.parts)

    def tracks(self):
        return set().union(*(p.tracks() for p in self.parts))

    def __str__(self):
        return "(" + " | ".join(map(str, self.parts)) + ")"


def all_of(*parts):
    return All(tuple(parts))


def any_of(*parts):
    return Any(tuple(parts))


@dataclass(frozen=True)
class EmersonLei:
    """A Boolean combination of per-track atoms."""

    formula: object

    def holds(self, top):
        return self.formula.holds(top)

    def tracks(self):
        return self.formula.tracks()

    def __str__(self):
        return "EL%s" % (self.formula,)


class ZielonkaTree:
    """Zielonka tree of a condition restricted to a finite set of colors.

    ``colors`` are vectors over the condition's relevant tracks (in sorted
    track order).  Labels of tree nodes are sets of colors; the children of
    a node are the maximal subsets whose winner differs from the node's.
    """

    def __init__(self, condition, colors):
        self.tracks = sorted(condition.tracks())
        if len(self.tracks) > MAX_TRACKS:
            raise TooManyColors("%d color tracks exceed the guard of %d" % (len(self.tracks), MAX_TRACKS))
        self.condition = condition
        width = (max(self.tracks) + 1) if self.tracks else 0
        self._width = width
        colors = sorted(set(colors))
        self.labels = []
        self.winning = []
        self.children = []
        self.parent = []
        self.depth = []
        self._build(frozenset(colors), None, 0)
        self.max_depth = max(self.depth)
        want = 0 if self.winning[0] else 1
        self.top_priority = self.max_depth if self.max_depth % 2 == want else self.max_depth + 1
        self.leaves = [i for i in range(len(self.labels)) if not self.children[i]]
        if len(self.leaves) > MAX_LEAVES:
            raise TooManyColors("appearance monitor would need %d states" % len(self.leaves))
        self.leaf_index = {node: k for k, node in enumerate(self.leaves)}
        self.branch = []
        for node in self.leaves:
            path = [node]
            while self.parent[path[-1]] is not None:
                path.append(self.parent[path[-1]])
            self.branch.append(path[::-1])
        self._memo = {}

    def _top(self, label):
        top = [0] * self._width
        for c in label:
            for t, v in zip(self.tracks, c):
                if v > top[t]:
                    top[t] = v
        return top

    def _wins(self, label):
        return self.condition.holds(self._top(label))

    def _build(self, label, parent, depth):
        node = len(self.labels)
        wins = self._wins(label) if label else True
        self.labels.append(label)
        self.winning.append(wins)
        self.children.append([])
        self.parent.append(parent)
        self.depth.append(depth)
        if len(self.labels) > 4 * MAX_LEAVES:
            raise TooManyColors("Zielonka tree too large")
        for sub in self._flip_subsets(label, wins):
            self.children[node].append(self._build(sub, node, depth + 1))
        return node

    def _flip_subsets(self, label, wins):
        if not label:
            return []
        values = [sorted({c[i] for c in label}) for i in range(len(self.tracks))]
        found = set()
        for bound in itertools.product(*values):
            sub = frozenset(c for c in label if all(x <= b for x, b in zip(c, bound)))
            if sub and sub not in found and self._wins(sub) != wins:
                found.add(sub)
        maximal = [s for s in found if not any(s < t for t in found)]
        return sorted(maximal, key=lambda s: (-len(s), sorted(s)))

    @property
    def initial(self):
        return 0

    def priority_at(self, depth):
        return self.top_priority - depth

    def project(self, label):
        return tuple(label[t] for t in self.tracks)

    def step(self, leaf, color):
        """Move leaf ``leaf`` (an index into ``leaves``) on a projected color."""
        key = (leaf, color)
        hit = self._memo.get(key)
        if hit is not None:
            return hit
        path = self.branch[leaf]
        i = len(path) - 1
        while color not in self.labels[path[i]]:
            i -= 1
        if i == len(path) - 1:
            out = (leaf, self.priority_at(i))
        else:
            node = path[i]
            kids = self.children[node]
            nxt = kids[(kids.index(path[i + 1]) + 1) % len(kids)]
            while self.children[nxt]:
                nxt = self.children[nxt][0]
            out = (self.leaf_index[nxt], self.priority_at(i))
        self._memo[key] = out
        return out
