"""Family size and orbit dimension over a grid of (n, p, r).

Prints one row per (n, p, r) with the observed S, (n - r)^2, orbit
dimension, 2np - 1, and whether the constraint-system family spans the
same space as the directly constructed complement family.

    python scripts/dimension_sweep.py [--max-n 8] [--max-p 4] [--seeds 5]
"""

import argparse

from densemask import decompose, oracle_family, random_state, solve_family, spans_equal


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--max-n", type=int, default=8)
    ap.add_argument("--max-p", type=int, default=4)
    ap.add_argument("--seeds", type=int, default=5)
    args = ap.parse_args()

    print(f"{'n':>3} {'p':>3} {'r':>3} {'S':>5} {'(n-r)^2':>8} {'orbit':>6} {'2np-1':>6} {'oracle':>7}")
    failures = 0
    for n in range(2, args.max_n + 1):
        for p in range(1, min(n, args.max_p) + 1):
            for r in range(1, min(n, p) + 1):
                sizes, orbits, agree = set(), set(), True
                for seed in range(args.seeds):
                    d = decompose(random_state(n, p, r, seed))
                    fam = solve_family(d)
                    sizes.add(fam.s_count)
                    orbits.add(fam.orbit_dimension)
                    agree &= spans_equal(fam.generators, oracle_family(d))
                ok = sizes == {(n - r) ** 2} and agree
                failures += not ok
                print(f"{n:>3} {p:>3} {r:>3} {','.join(map(str, sorted(sizes))):>5} {(n - r) ** 2:>8} "
                      f"{','.join(map(str, sorted(orbits))):>6} {2 * n * p - 1:>6} {'yes' if agree else 'NO':>7}")
    print(f"\n{failures} failing rows")


if __name__ == "__main__":
    main()
