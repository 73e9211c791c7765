"""Determinising a good-for-games alternating automaton.

The combinator glues a nondeterministic good-for-games coBüchi automaton
to its dual.  The result is alternating and good for games, so it
determinises without new priorities.
"""
from altgfg.deciders import is_gfg_apw
from altgfg.automata import NONDETERMINISTIC
from altgfg.generators import GeneratorConfig, combinator_cn, random_automaton
from altgfg.products import bounded_equiv
from altgfg.transforms.gfg_det import gfg_determinise


def main():
    base = random_automaton(GeneratorConfig(seed=1, states=(2, 3), priorities=(0, 1),
                                            kind=NONDETERMINISTIC))
    print("base: %d states, %s" % (base.n, base.kind))
    a = combinator_cn(base)
    print("input: %d states, %s, priorities %s" % (a.n, a.kind, sorted(a.index)))
    print("good for games:", is_gfg_apw(a).gfg)
    d = gfg_determinise(a)
    print("output: %d states, %s, priorities %s" % (d.n, d.kind, sorted(d.index)))
    print("same language on lassos up to 4/4:", bounded_equiv(a, d, 4, 4).equivalent)


if __name__ == "__main__":
    main()
