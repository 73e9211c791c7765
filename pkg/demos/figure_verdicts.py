"""Half and full good-for-games verdicts for the bundled fixtures.

Each automaton is decided twice: by the two letter games and by the joint
game.  Run with ``python3 demos/figure_verdicts.py``.
"""
from altgfg.deciders import is_exists_gfg_naive, is_forall_gfg_naive, is_gfg_apw
from altgfg.generators import fixtures


def main():
    print("%-16s %-12s %7s %7s %5s  %s" % ("automaton", "class", "exists", "forall", "gfg", "agree"))
    for name, a in fixtures().items():
        exists, forall = is_exists_gfg_naive(a), is_forall_gfg_naive(a)
        v = is_gfg_apw(a)
        agree = (v.exists_gfg, v.forall_gfg, v.gfg) == (exists, forall, exists and forall)
        print("%-16s %-12s %7s %7s %5s  %s" % (name, a.kind, exists, forall, v.gfg, agree))


if __name__ == "__main__":
    main()
