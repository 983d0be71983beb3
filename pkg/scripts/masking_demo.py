"""Mask every message of the shift/clock codebook and compare stations vs outcomes.

For each message unitary X^a Z^b, draws random gammas, and reports how far
the masked station matrix moved (Frobenius) against how far the outcome
state moved (should be ~1e-12).

    python scripts/masking_demo.py [--n 8 --p 2] [--seed 0]
"""

import argparse

import numpy as np

from densemask import decompose, masked_send, pauli_codebook, random_state, solve_family


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--n", type=int, default=8)
    ap.add_argument("--p", type=int, default=2)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    state = random_state(args.n, args.p, min(args.n, args.p), args.seed)
    family = solve_family(decompose(state))
    rng = np.random.default_rng(args.seed)
    codebook = pauli_codebook(args.n)
    station, outcome = [], []
    for label, U in zip(codebook.labels, codebook.unitaries):
        send = masked_send(U, family, rng.uniform(-np.pi, np.pi, family.s_count), state)
        station.append(send.station_distance)
        outcome.append(send.outcome_distance)
    station, outcome = np.array(station), np.array(outcome)
    print(f"n={args.n} p={args.p} S={family.s_count}, {len(codebook)} messages")
    print(f"station distance  min {station.min():.3f}  mean {station.mean():.3f}  max {station.max():.3f}")
    print(f"outcome distance  max {outcome.max():.2e}")


if __name__ == "__main__":
    main()
