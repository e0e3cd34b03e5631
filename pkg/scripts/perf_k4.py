"""Wall-clock comparison of the character sum and brute force on the standard subdivision of K4.

    python3 scripts/perf_k4.py --group Z8 --set 1,2,6,7 --repeats 5
"""

import argparse
import statistics
import time

from cayley_sidorenko.cayley import parse_set
from cayley_sidorenko.graphs import builtin_graph, standard_subdivision
from cayley_sidorenko.group import group_parse
from cayley_sidorenko.homdensity import density


def timed(fn):
    start = time.perf_counter()
    value = fn()
    return value, time.perf_counter() - start


def main() -> None:
    p = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    p.add_argument("--base", default="K4")
    p.add_argument("--group", default="Z8")
    p.add_argument("--set", default="1,2,6,7")
    p.add_argument("--repeats", type=int, default=5)
    args = p.parse_args()
    h = standard_subdivision(builtin_graph(args.base))
    s = parse_set(group_parse(args.group), args.set)
    runs = [timed(lambda: density(h, s, "fourier")) for _ in range(args.repeats)]
    fast = runs[0][0]
    t_fast = statistics.median(t for _, t in runs)
    slow, t_slow = timed(lambda: density(h, s, "bruteforce", cap=10**12))
    print(f"pattern: standard subdivision of {args.base} (v={h.n}, e={h.num_edges}, m={h.num_edges - h.n + 1})")
    print(f"host: Cay({args.group}, {{{args.set}}})")
    print(f"fourier     {fast.value!r:>24}  median {t_fast * 1e3:9.3f} ms  cost {fast.cost}")
    print(f"bruteforce  {slow.value!r:>24}  once   {t_slow * 1e3:9.3f} ms  cost {slow.cost}")
    print(f"speedup {t_slow / t_fast:.1f}x   |delta| {abs(fast.value - slow.value):.2e}")


if __name__ == "__main__":
    main()
