"""Boxes of a one-step arena and the nondeterministic box automaton.

Prints the four boxes on the one-step fixture, then builds the box
automaton of an alternating automaton and checks it against the original
on every lasso word with a short prefix and period.
"""
from altgfg.generators import fixtures
from altgfg.products import bounded_equiv, enumerate_boxes
from altgfg.transforms.dealternate import box_automaton


def main():
    a = fixtures()["fig-one-step"]
    for i, box in enumerate(enumerate_boxes(a, "a")):
        edges = ", ".join("q%d->q%d" % e for e in sorted(box.relation))
        print("box %d: %s" % (i, edges))
    alt = fixtures()["fig-ex-alt-gfg"]
    nondet = box_automaton(alt)
    print("alternating: %d states, %s" % (alt.n, alt.kind))
    print("box automaton: %d states, %s, %d letters" % (nondet.n, nondet.kind, len(nondet.alphabet)))
    res = bounded_equiv(alt, nondet, 3, 3)
    print("same language on lassos up to 3/3:", res.equivalent)


if __name__ == "__main__":
    main()
