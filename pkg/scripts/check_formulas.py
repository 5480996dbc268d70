"""Tabulate the closed forms for few triangles against the exact oracle.

Triangle-free connected graphs: k = |E| - |V| + 2.  Exactly one triangle:
k = |E| - |V| with a hole, |E| - |V| + 1 without.
"""

from __future__ import annotations

import argparse
from collections import defaultdict

from holedim.competition import competition_number_exact
from holedim.generate import exhaustive
from holedim.holes import holes, triangles


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--max-n", type=int, default=8)
    args = ap.parse_args()

    table = defaultdict(lambda: [0, 0])  # (n, family) -> [checked, mismatches]
    for g in exhaustive(args.max_n, min_n=2):
        t = len(triangles(g))
        if t == 0:
            family, want = "triangle-free", g.m - g.n + 2
        elif t == 1:
            family = "one-triangle"
            want = g.m - g.n if holes(g) else g.m - g.n + 1
        else:
            continue
        row = table[(g.n, family)]
        row[0] += 1
        if competition_number_exact(g, time_budget=None).k != want:
            row[1] += 1
            print("mismatch:", g)

    print(f"{'n':>3}  {'family':<14} {'graphs':>7} {'mismatches':>11}")
    for (n, family), (count, bad) in sorted(table.items()):
        print(f"{n:>3}  {family:<14} {count:>7} {bad:>11}")
    return int(any(bad for _, bad in table.values()))


if __name__ == "__main__":
    raise SystemExit(main())
