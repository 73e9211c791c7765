"""Command-line front end.

Exit codes: 0 for a positive answer, 1 for a negative one, 2 for any
usage, parse, validation or applicability error.
"""
from __future__ import annotations

import argparse
import random
import sys
import time
from concurrent.futures import ProcessPoolExecutor

from . import io
from .automata import DETERMINISTIC, NONDETERMINISTIC, dual
from .deciders import decide, is_gfg_apw
from .errors import AutomatonError
from .games import EVE, solve
from .generators import (
    ANY, KINDS, GeneratorConfig, combinator_cn, fixtures, pspace_reduction,
    random_automaton, random_nfa,
)
from .products import LassoWord, bounded_equiv, exact_equiv, lasso_membership
from .transforms.dealternate import box_automaton, mh_breakpoint
from .transforms.determinise import determinise_npw
from .transforms.gfg_det import gfg_determinise
from .transforms.ncw import ncw_normalise

OK, NEGATIVE, ERROR = 0, 1, 2


class UsageError(Exception):
    """A request that cannot be served; reported with exit code 2."""


def _read(path):
    if path == "-":
        return sys.stdin.read()
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def _load(path):
    doc = io.parse(_read(path))
    return doc, io.automaton_from_doc(doc)


def _emit(doc):
    sys.stdout.write(io.dumps(doc))


# ---------------------------------------------------------------------------
# check-gfg

def _check_one(path, method, witness, timings):
    doc, a = _load(path)
    start = time.perf_counter()
    token_game_applies = a.kind in (DETERMINISTIC, NONDETERMINISTIC) and (a.is_buchi() or a.is_cobuchi())
    joint = method == "joint" or method == "auto" and not token_game_applies
    if witness and joint:
        verdict = is_gfg_apw(a, witness=True)
    else:
        verdict = decide(a, method)
    elapsed = {"decide_seconds": round(time.perf_counter() - start, 6)} if timings else None
    return io.verdict_to_doc(verdict, doc, elapsed, witness)


def _check_safely(args):
    path, method, witness, timings = args
    try:
        return path, _check_one(path, method, witness, timings), None
    except (AutomatonError, io.DocumentError, OSError, ValueError) as exc:
        return path, None, "%s: %s" % (type(exc).__name__, exc)


def cmd_check_gfg(ns):
    jobs = [(p, ns.method, ns.witness, ns.timings) for p in ns.paths]
    if ns.jobs > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=ns.jobs) as pool:
            results = list(pool.map(_check_safely, jobs))
    else:
        results = [_check_safely(j) for j in jobs]
    errors = [(p, e) for p, _, e in results if e is not None]
    for p, e in errors:
        print("%s: %s" % (p, e), file=sys.stderr)
    if len(results) == 1:
        if errors:
            return ERROR
        _emit(results[0][1])
        return OK if results[0][1]["gfg"] else NEGATIVE
    _emit({"results": [{"path": p, "verdict": d, "error": e} for p, d, e in results]})
    if errors:
        return ERROR
    return OK if all(d["gfg"] for _, d, _ in results) else NEGATIVE


# ---------------------------------------------------------------------------
# transform

def _determinize(a):
    try:
        return gfg_determinise(a)
    except AutomatonError:
        if a.kind in (DETERMINISTIC, NONDETERMINISTIC):
            return determinise_npw(a)
        raise


def _normalize_ncw(a):
    return ncw_normalise(a).automaton


TRANSFORMS = {
    "dual": dual,
    "dealternate": box_automaton,
    "determinize": _determinize,
    "breakpoint": mh_breakpoint,
    "normalize-ncw": _normalize_ncw,
}


def cmd_transform(ns):
    _, a = _load(ns.path)
    _emit(io.automaton_to_doc(TRANSFORMS[ns.op](a)))
    return OK


# ---------------------------------------------------------------------------
# membership, games, equivalence

def _lasso(u, v, a):
    if not v:
        raise UsageError("the period of a lasso must be nonempty")
    for x in u + v:
        if x not in a.letter_index:
            raise UsageError("letter %r is not in the alphabet" % x)
    return LassoWord(tuple(u), tuple(v))


def cmd_membership(ns):
    _, a = _load(ns.path)
    accepted = lasso_membership(a, _lasso(ns.lasso[0], ns.lasso[1], a))
    print("accept" if accepted else "reject")
    return OK if accepted else NEGATIVE


def cmd_solve_game(ns):
    g = io.game_from_doc(io.parse(_read(ns.path), "game"))
    sol = solve(g, roots=[g.initial], strategies=True)
    _emit(io.solution_to_doc(g, sol))
    return OK if sol.winner[g.initial] == EVE else NEGATIVE


def _as_nondeterministic(a):
    return a if a.kind in (DETERMINISTIC, NONDETERMINISTIC) else box_automaton(a)


def cmd_equiv(ns):
    _, a = _load(ns.left)
    _, b = _load(ns.right)
    if a.alphabet != b.alphabet:
        raise UsageError("the automata have different alphabets")
    if ns.exact:
        result = exact_equiv(_as_nondeterministic(a), _as_nondeterministic(b))
        mode = "exact"
    else:
        max_u, max_v = ns.bounded
        if max_u < 0 or max_v < 1:
            raise UsageError("bounds must satisfy U >= 0 and V >= 1")
        result = bounded_equiv(a, b, max_u, max_v)
        mode = "bounded"
    doc = {"format_version": io.FORMAT_VERSION, "mode": mode, "equivalent": result.equivalent,
           "counterexample": None}
    if result.counterexample is not None:
        w = result.counterexample
        doc["counterexample"] = {"u": list(w.u), "v": list(w.v)}
    _emit(doc)
    return OK if result.equivalent else NEGATIVE


# ---------------------------------------------------------------------------
# generate

def cmd_generate(ns):
    if ns.what == "random":
        cfg = GeneratorConfig(seed=ns.seed, states=(ns.min_states, ns.max_states), letters=ns.letters,
                              priorities=(ns.min_priority, ns.max_priority), density=ns.density,
                              kind=ns.kind)
        a = random_automaton(cfg)
    elif ns.what == "fixture":
        table = fixtures()
        if ns.name not in table:
            raise UsageError("unknown fixture %r; choose from %s" % (ns.name, ", ".join(sorted(table))))
        a = table[ns.name]
    elif ns.what == "cn":
        a = combinator_cn(_load(ns.base)[1])
    elif ns.what == "pspace":
        a = pspace_reduction(io.nfa_from_doc(io.parse(_read(ns.nfa), "NFA")))
    else:
        _emit(io.nfa_to_doc(random_nfa(random.Random(ns.seed), ns.max_states)))
        return OK
    _emit(io.automaton_to_doc(a))
    return OK


# ---------------------------------------------------------------------------
# argument parsing

def build_parser():
    p = argparse.ArgumentParser(prog="altgfg", description="Good-for-games alternating parity automata.")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("check-gfg", help="decide good-for-gameness")
    c.add_argument("paths", nargs="+", metavar="PATH")
    c.add_argument("--method", choices=("auto", "naive", "g2", "joint"), default="auto")
    c.add_argument("--jobs", type=int, default=1, help="parallel workers across files")
    c.add_argument("--witness", action="store_true", help="include Eve's or Adam's strategy")
    c.add_argument("--timings", action="store_true", help="include wall-clock timings")
    c.set_defaults(run=cmd_check_gfg)

    t = sub.add_parser("transform", help="apply a transformation")
    t.add_argument("path")
    t.add_argument("--op", choices=sorted(TRANSFORMS), required=True)
    t.set_defaults(run=cmd_transform)

    m = sub.add_parser("membership", help="test a lasso word u v^w")
    m.add_argument("path")
    m.add_argument("--lasso", nargs=2, metavar=("U", "V"), required=True)
    m.set_defaults(run=cmd_membership)

    s = sub.add_parser("solve-game", help="solve a game document")
    s.add_argument("path")
    s.set_defaults(run=cmd_solve_game)

    e = sub.add_parser("equiv", help="compare two languages")
    e.add_argument("left")
    e.add_argument("right")
    mode = e.add_mutually_exclusive_group(required=True)
    mode.add_argument("--bounded", nargs=2, type=int, metavar=("U", "V"))
    mode.add_argument("--exact", action="store_true")
    e.set_defaults(run=cmd_equiv)

    g = sub.add_parser("generate", help="emit a generated document")
    gen = g.add_subparsers(dest="what", required=True)
    r = gen.add_parser("random")
    r.add_argument("--seed", type=int, default=0)
    r.add_argument("--min-states", type=int, default=1)
    r.add_argument("--max-states", type=int, default=3)
    r.add_argument("--letters", type=int, default=2)
    r.add_argument("--min-priority", type=int, default=0)
    r.add_argument("--max-priority", type=int, default=3)
    r.add_argument("--density", type=float, default=2.0)
    r.add_argument("--kind", choices=KINDS, default=ANY)
    f = gen.add_parser("fixture")
    f.add_argument("name")
    cn = gen.add_parser("cn")
    cn.add_argument("--base", required=True)
    ps = gen.add_parser("pspace")
    ps.add_argument("--nfa", required=True)
    nfa = gen.add_parser("nfa")
    nfa.add_argument("--seed", type=int, default=0)
    nfa.add_argument("--max-states", type=int, default=3)
    g.set_defaults(run=cmd_generate)
    return p


def main(argv=None):
    parser = build_parser()
    ns = parser.parse_args(argv)
    try:
        return ns.run(ns)
    except (UsageError, AutomatonError, io.DocumentError, OSError, ValueError) as exc:
        print("error: %s" % exc, file=sys.stderr)
        return ERROR

