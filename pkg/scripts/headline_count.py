"""Family size for three sender qubits and one receiver qubit.

    python scripts/headline_count.py [--d 2 --m 3 --q 1] [--seed 0]
"""

import argparse
import time

from densemask import decompose, dense_coding_capable, qubit_dims, random_state, solve_family


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--d", type=int, default=2)
    ap.add_argument("--m", type=int, default=3)
    ap.add_argument("--q", type=int, default=1)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    n, p = qubit_dims(args.d, args.m, args.q)
    state = random_state(n, p, min(n, p), args.seed)
    t0 = time.perf_counter()
    decomp = decompose(state)
    family = solve_family(decomp)
    elapsed = time.perf_counter() - t0
    rep = dense_coding_capable(decomp)
    print(f"d={args.d} m={args.m} q={args.q}  ->  n={n} p={p}")
    print(f"component rank r={rep.rank}  dense-coding capable={rep.capable}  K=n^2-2np={rep.excess_parameters}")
    print(f"S={family.s_count}  (n-p)^2={(n - p) ** 2}  orbit dimension={family.orbit_dimension}")
    print(f"solved in {elapsed * 1e3:.1f} ms")


if __name__ == "__main__":
    main()
