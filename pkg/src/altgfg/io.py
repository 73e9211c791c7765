"""JSON documents for automata, games, solutions, verdicts and NFAs.

Every writer emits canonical JSON (sorted keys, sorted priority tuples)
so that identical objects always serialise to identical bytes.
"""
from __future__ import annotations

import hashlib
import json

import jsonschema

from .automata import AND, OR, is_atom, make_automaton, validate
from .conditions import All, Any, EmersonLei, Even, Fin, Inf, Odd, Parity
from .games import ADAM, EVE, Game, StrategyWithMemory
from .generators import NFA

FORMAT_VERSION = 1


class DocumentError(ValueError):
    """A document that does not parse, fails its schema or does not validate."""


_FORMULA = {
    "oneOf": [
        {"type": "integer", "minimum": 0},
        {
            "type": "object",
            "properties": {
                "op": {"enum": [AND, OR]},
                "args": {"type": "array", "minItems": 1, "items": {"$ref": "#/$defs/formula"}},
            },
            "required": ["op", "args"],
            "additionalProperties": False,
        },
    ]
}

AUTOMATON_SCHEMA = {
    "$defs": {"formula": _FORMULA},
    "type": "object",
    "properties": {
        "format_version": {"const": FORMAT_VERSION},
        "kind": {"const": "parity"},
        "alphabet": {"type": "array", "items": {"type": "string", "minLength": 1}, "minItems": 1},
        "states": {"type": "integer", "minimum": 1},
        "initial": {"type": "integer", "minimum": 0},
        "transitions": {
            "type": "object",
            "additionalProperties": {
                "type": "object",
                "additionalProperties": {"$ref": "#/$defs/formula"},
            },
        },
        "priorities": {
            "type": "array",
            "items": {
                "type": "array",
                "prefixItems": [
                    {"type": "integer", "minimum": 0},
                    {"type": "string"},
                    {"type": "integer", "minimum": 0},
                    {"type": "integer", "minimum": 0},
                ],
                "minItems": 4,
                "maxItems": 4,
            },
        },
        "default_priority": {"type": "integer", "minimum": 0},
    },
    "required": ["format_version", "kind", "alphabet", "states", "initial", "transitions", "priorities"],
    "additionalProperties": False,
}

_CONDITION = {
    "oneOf": [
        {"type": "object", "properties": {"parity": {"type": "integer", "minimum": 0}},
         "required": ["parity"], "additionalProperties": False},
        {"type": "object", "properties": {"even": {"type": "integer", "minimum": 0}},
         "required": ["even"], "additionalProperties": False},
        {"type": "object", "properties": {"odd": {"type": "integer", "minimum": 0}},
         "required": ["odd"], "additionalProperties": False},
        {"type": "object", "properties": {"inf": {"type": "integer", "minimum": 0},
                                          "at_least": {"type": "integer", "minimum": 0}},
         "required": ["inf"], "additionalProperties": False},
        {"type": "object", "properties": {"fin": {"type": "integer", "minimum": 0},
                                          "at_least": {"type": "integer", "minimum": 0}},
         "required": ["fin"], "additionalProperties": False},
        {"type": "object", "properties": {"op": {"enum": ["and", "or"]},
                                          "args": {"type": "array", "minItems": 1,
                                                   "items": {"$ref": "#/$defs/condition"}}},
         "required": ["op", "args"], "additionalProperties": False},
    ]
}

GAME_SCHEMA = {
    "$defs": {"condition": _CONDITION},
    "type": "object",
    "properties": {
        "format_version": {"const": FORMAT_VERSION},
        "owner": {"type": "array", "items": {"enum": ["eve", "adam"]}, "minItems": 1},
        "initial": {"type": "integer", "minimum": 0},
        "edges": {
            "type": "array",
            "items": {
                "type": "array",
                "prefixItems": [
                    {"type": "integer", "minimum": 0},
                    {"oneOf": [{"type": "null"},
                               {"type": "array", "items": {"type": "integer", "minimum": 0}, "minItems": 1}]},
                    {"type": "integer", "minimum": 0},
                ],
                "minItems": 3,
                "maxItems": 3,
            },
        },
        "condition": {"$ref": "#/$defs/condition"},
    },
    "required": ["format_version", "owner", "initial", "edges", "condition"],
    "additionalProperties": False,
}

NFA_SCHEMA = {
    "type": "object",
    "properties": {
        "format_version": {"const": FORMAT_VERSION},
        "kind": {"const": "nfa"},
        "alphabet": {"type": "array", "items": {"type": "string"}},
        "states": {"type": "integer", "minimum": 1},
        "initial": {"type": "integer", "minimum": 0},
        "accepting": {"type": "array", "items": {"type": "integer", "minimum": 0}},
        "transitions": {
            "type": "array",
            "items": {"type": "array", "prefixItems": [{"type": "integer"}, {"type": "string"}, {"type": "integer"}],
                      "minItems": 3, "maxItems": 3},
        },
    },
    "required": ["format_version", "kind", "alphabet", "states", "initial", "accepting", "transitions"],
    "additionalProperties": False,
}


def dumps(doc):
    """Canonical JSON text for a document."""
    return json.dumps(doc, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def document_hash(doc):
    return hashlib.sha256(json.dumps(doc, sort_keys=True, separators=(",", ":")).encode()).hexdigest()


def _check(doc, schema, what):
    try:
        jsonschema.validate(doc, schema)
    except jsonschema.ValidationError as exc:
        raise DocumentError("invalid %s document: %s" % (what, exc.message)) from exc


def parse(text, what="automaton"):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise DocumentError("%s document is not JSON: %s" % (what, exc)) from exc


# ---------------------------------------------------------------------------
# automata

def _formula_to_json(f):
    if is_atom(f):
        return f
    return {"op": f[0], "args": [_formula_to_json(c) for c in f[1]]}


def _formula_from_json(doc):
    if isinstance(doc, int):
        return doc
    parts = tuple(_formula_from_json(c) for c in doc["args"])
    if len(parts) == 1:
        return parts[0]
    return (doc["op"], parts)


def automaton_to_doc(a):
    transitions = {}
    for (q, x), f in a.delta.items():
        transitions.setdefault(str(q), {})[x] = _formula_to_json(f)
    priorities = sorted(
        ([q, x, r, p] for (q, x, r), p in a.priority.items()),
        key=lambda t: (t[0], a.letter_index[t[1]], t[2]))
    return {
        "format_version": FORMAT_VERSION,
        "kind": "parity",
        "alphabet": list(a.alphabet),
        "states": a.n,
        "initial": a.initial,
        "transitions": transitions,
        "priorities": priorities,
    }


def automaton_from_doc(doc):
    _check(doc, AUTOMATON_SCHEMA, "automaton")
    delta = {}
    for q, row in doc["transitions"].items():
        try:
            state = int(q)
        except ValueError as exc:
            raise DocumentError("state key %r is not an integer" % q) from exc
        for x, f in row.items():
            delta[state, x] = _formula_from_json(f)
    prio = {}
    for q, x, r, p in doc["priorities"]:
        if (q, x, r) in prio:
            raise DocumentError("duplicate priority for (%d, %s, %d)" % (q, x, r))
        prio[q, x, r] = p
    try:
        a = make_automaton(doc["alphabet"], doc["states"], doc["initial"], delta, prio,
                           default_priority=doc.get("default_priority"))
    except ValueError as exc:
        raise DocumentError(str(exc)) from exc
    problems = validate(a)
    if problems:
        raise DocumentError("; ".join(problems))
    return a


def load_automaton(text):
    return automaton_from_doc(parse(text))


def save_automaton(a):
    return dumps(automaton_to_doc(a))


# ---------------------------------------------------------------------------
# games

def _condition_from_json(doc):
    if "parity" in doc:
        return Parity(doc["parity"])
    if "even" in doc:
        return Even(doc["even"])
    if "odd" in doc:
        return Odd(doc["odd"])
    if "inf" in doc:
        return Inf(doc["inf"], doc.get("at_least", 1))
    if "fin" in doc:
        return Fin(doc["fin"], doc.get("at_least", 1))
    parts = tuple(_condition_from_json(c) for c in doc["args"])
    return All(parts) if doc["op"] == "and" else Any(parts)


def _condition_to_json(c):
    if isinstance(c, EmersonLei):
        return _condition_to_json(c.formula)
    if isinstance(c, Parity):
        return {"parity": c.track}
    if isinstance(c, Even):
        return {"even": c.track}
    if isinstance(c, Odd):
        return {"odd": c.track}
    if isinstance(c, Inf):
        return {"inf": c.track, "at_least": c.at_least}
    if isinstance(c, Fin):
        return {"fin": c.track, "at_least": c.at_least}
    op = "and" if isinstance(c, All) else "or"
    return {"op": op, "args": [_condition_to_json(p) for p in c.parts]}


def game_from_doc(doc):
    _check(doc, GAME_SCHEMA, "game")
    owner = tuple(EVE if o == "eve" else ADAM for o in doc["owner"])
    n = len(owner)
    edges = []
    for s, lab, t in doc["edges"]:
        if not (s < n and t < n):
            raise DocumentError("edge (%d, %d) leaves the arena" % (s, t))
        edges.append((s, None if lab is None else tuple(lab), t))
    if doc["initial"] >= n:
        raise DocumentError("initial position out of range")
    cond = _condition_from_json(doc["condition"])
    if not isinstance(cond, Parity):
        cond = EmersonLei(cond)
    width = {len(lab) for _, lab, _ in edges if lab is not None}
    if len(width) > 1:
        raise DocumentError("edge labels have different lengths")
    if width and max(cond.tracks()) >= width.pop():
        raise DocumentError("condition refers to a missing color track")
    return Game(owner, tuple(edges), doc["initial"], cond)


def game_to_doc(g):
    return {
        "format_version": FORMAT_VERSION,
        "owner": ["eve" if o == EVE else "adam" for o in g.owner],
        "initial": g.initial,
        "edges": [[s, None if lab is None else list(lab), t] for s, lab, t in g.edges],
        "condition": _condition_to_json(g.condition),
    }


def _strategy_to_json(s):
    if s is None:
        return None
    if isinstance(s, StrategyWithMemory):
        return {
            "memory_states": len(s.memory),
            "initial_memory": s.initial,
            "update": sorted([m, e, m2] for (m, e), m2 in s.update.items()),
            "choice": sorted([m, v, e] for (m, v), e in s.choice.items()),
        }
    return {"choice": sorted([v, e] for v, e in s.items())}


def solution_to_doc(g, sol):
    return {
        "format_version": FORMAT_VERSION,
        "initial": g.initial,
        "initial_winner": _player_name(sol.winner[g.initial]),
        "winner": [_player_name(w) for w in sol.winner],
        "eve_strategy": _strategy_to_json(sol.eve_strategy),
        "adam_strategy": _strategy_to_json(sol.adam_strategy),
    }


def _player_name(w):
    if w is None:
        return None
    return "eve" if w == EVE else "adam"


# ---------------------------------------------------------------------------
# verdicts and NFAs

def verdict_to_doc(verdict, input_doc, timings=None, witness=False):
    doc = {
        "format_version": FORMAT_VERSION,
        "input_sha256": document_hash(input_doc),
        "method": verdict.method,
        "exists_gfg": verdict.exists_gfg,
        "forall_gfg": verdict.forall_gfg,
        "gfg": verdict.gfg,
    }
    if timings is not None:
        doc["timings"] = timings
    if witness:
        doc["witness"] = _strategy_to_json(verdict.witness)
    return doc


def nfa_from_doc(doc):
    _check(doc, NFA_SCHEMA, "NFA")
    n = doc["states"]
    moves = {}
    for q, x, r in doc["transitions"]:
        if not (0 <= q < n and 0 <= r < n):
            raise DocumentError("NFA transition (%d, %s, %d) out of range" % (q, x, r))
        moves.setdefault((q, x), set()).add(r)
    if not 0 <= doc["initial"] < n or any(not 0 <= q < n for q in doc["accepting"]):
        raise DocumentError("NFA state out of range")
    return NFA(n, doc["initial"], {k: frozenset(v) for k, v in moves.items()},
               frozenset(doc["accepting"]), tuple(doc["alphabet"]))


def nfa_to_doc(nfa):
    return {
        "format_version": FORMAT_VERSION,
        "kind": "nfa",
        "alphabet": list(nfa.alphabet),
        "states": nfa.n,
        "initial": nfa.initial,
        "accepting": sorted(nfa.accepting),
        "transitions": sorted([q, x, r] for (q, x), targets in nfa.moves.items() for r in targets),
    }
