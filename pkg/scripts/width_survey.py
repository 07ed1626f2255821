#!/usr/bin/env python3
"""Tabulate the width measures over the built-in graph families."""
import argparse
import sys

from pursuitwidth.arena import width
from pursuitwidth.families import (cycle_digraph, gen_grk, tree_T,
                                   two_tree_graph)


def row(name, g, rmax):
    chain = [width(g, "dw_r", r=r) for r in range(1, min(rmax, g.n) + 1)]
    dpw = width(g, "dpw")
    tw1 = width(g, "tw_r", r=1)
    print(f"{name:<12} n={g.n:<3} dw_1..{len(chain)}={chain} dpw={dpw} tw_1={tw1}")


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--rmax", type=int, default=3)
    args = ap.parse_args()
    for n in (3, 4, 5):
        row(f"cycle{n}", cycle_digraph(n), args.rmax)
    for r, k in ((1, 1), (1, 2), (2, 1)):
        row(f"grk r{r} k{k}", gen_grk(r, k), args.rmax)
    row("tree T_2", tree_T(2)[0], args.rmax)
    row("two-tree 1", two_tree_graph(1)[0], args.rmax)
    return 0


if __name__ == "__main__":
    sys.exit(main())
