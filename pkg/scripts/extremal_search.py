"""Rank every symmetric set of each size in a group by the density of an even subdivision.

Prints, per size, the lowest and highest density set with its largest non-principal
Fourier ratio, to inspect how density tracks the spectral gap.

    python3 scripts/extremal_search.py --group Z12 --base K3 --lengths 1,1,1
"""

import argparse

from cayley_sidorenko.graphs import SubdivisionPlan, builtin_graph
from cayley_sidorenko.group import group_parse
from cayley_sidorenko.sidorenko import search_extremal


def main() -> None:
    p = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    p.add_argument("--group", default="Z12")
    p.add_argument("--base", default="K3")
    p.add_argument("--lengths")
    args = p.parse_args()
    g = group_parse(args.group)
    base = builtin_graph(args.base)
    lengths = tuple(int(x) for x in args.lengths.split(",")) if args.lengths else (1,) * base.num_edges
    plan = SubdivisionPlan(base, lengths)
    print("size  rank  density                 maxRatio  set")
    for size in range(1, g.order):
        entries = search_extremal(g, plan, size)
        if not entries:
            continue
        for tag, e in (("min", entries[0]), ("max", entries[-1])):
            print(f"{size:4d}  {tag}   {e.density:<22.15g}  {e.max_ratio:8.4f}  {e.members.label()}")


if __name__ == "__main__":
    main()
