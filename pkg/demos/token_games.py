"""Token games on nondeterministic Büchi and coBüchi automata.

With two tokens Eve wins exactly on the good-for-games automata, which the
demo confirms against the letter game on a batch of random NCWs.
"""
from altgfg.automata import NONDETERMINISTIC
from altgfg.deciders import is_exists_gfg_naive, is_gfg_ncw_g2, token_game
from altgfg.games import EVE, solve
from altgfg.generators import GeneratorConfig, fixtures, random_automaton


def eve_wins(game):
    return solve(game, roots=[game.initial]).winner[game.initial] == EVE


def main():
    union = fixtures()["union-nbw"]
    for k in (1, 2):
        g, _ = token_game(union, k)
        print("union-nbw, %d token(s): %d positions, Eve wins: %s" % (k, g.size, eve_wins(g)))
    agree = 0
    for seed in range(40):
        a = random_automaton(GeneratorConfig(seed=seed, states=(1, 4), priorities=(0, 1),
                                             kind=NONDETERMINISTIC))
        agree += is_gfg_ncw_g2(a) == is_exists_gfg_naive(a)
    print("two-token game vs letter game on 40 random NCWs: %d/40 agree" % agree)


if __name__ == "__main__":
    main()
