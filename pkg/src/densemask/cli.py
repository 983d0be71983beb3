"""Command-line front end.

Exit codes: 0 success, 1 verification failed, 2 bad input, 3 I/O error.
"""

from __future__ import annotations

import argparse
import sys

import numpy as np

from . import tolerances as tols
from .channel import ambiguity_report
from .conserving import masking_unitary, solve_family, verify_conserving
from .documents import (
    FORMAT_VERSION,
    DocumentError,
    dumps,
    matrix_from_doc,
    matrix_to_doc,
    parse_json,
    state_from_doc,
    state_to_doc,
)
from .linalg import unitarity_residual
from .state import StateError, decompose, dense_coding_capable, qubit_dims, random_state

EXIT_OK, EXIT_FAILED, EXIT_INPUT, EXIT_IO = 0, 1, 2, 3


class CliError(Exception):
    def __init__(self, message: str, code: int):
        super().__init__(message)
        self.code = code


def _read_doc(path: str):
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise CliError(f"{path}: {exc.strerror}", EXIT_INPUT) from None
    try:
        return parse_json(text, path)
    except DocumentError as exc:
        raise CliError(str(exc), EXIT_INPUT) from None


def _load_state(path: str):
    try:
        state = state_from_doc(_read_doc(path), where=path)
        state.require_normalized()
    except (DocumentError, StateError) as exc:
        raise CliError(str(exc), EXIT_INPUT) from None
    return state


def _load_matrix(doc, where: str, n: int) -> np.ndarray:
    try:
        M = matrix_from_doc(doc, where=where)
    except DocumentError as exc:
        raise CliError(str(exc), EXIT_INPUT) from None
    if M.shape != (n, n):
        raise CliError(f"{where}: expected a {n}x{n} matrix, got {M.shape[0]}x{M.shape[1]}",
                       EXIT_INPUT)
    return M


def _emit(doc, out: str | None) -> None:
    text = dumps(doc)
    if out is None:
        sys.stdout.write(text)
        return
    try:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    except OSError as exc:
        raise CliError(f"{out}: {exc.strerror}", EXIT_IO) from None


def _family(state, tol):
    decomp = decompose(state)
    return decomp, solve_family(decomp, tol)


def cmd_analyze(args) -> int:
    state = _load_state(args.state)
    decomp, family = _family(state, args.tol)
    report = dense_coding_capable(decomp)
    n, p = state.dim_a, state.dim_b
    full = 2 * n * p - 1
    doc = {
        "format_version": FORMAT_VERSION,
        "n": n,
        "p": p,
        "component_rank": report.rank,
        "dense_coding_capable": report.capable,
        "K": report.excess_parameters,
        "K_positive": report.excess_positive,
        "n_greater_than_p": report.masking_possible,
        "S": family.s_count,
        "orbit_dimension": family.orbit_dimension,
        "full_orbit_dimension": full,
    }
    if family.orbit_dimension != full:
        doc["note"] = (
            f"orbit_dimension {family.orbit_dimension} differs from 2np-1 = {full}; "
            "the reported value is the rank of the linearized constraint system "
            "(n^2 - (n-r)^2), not 2np-1")
    _emit(doc, args.out)
    return EXIT_OK


def cmd_generators(args) -> int:
    state = _load_state(args.state)
    _, family = _family(state, args.tol)
    doc = {
        "format_version": FORMAT_VERSION,
        "dims": [state.dim_a, state.dim_b],
        "count": family.s_count,
        "generators": [matrix_to_doc(D) for D in family.generators],
    }
    _emit(doc, args.out)
    return EXIT_OK


def _parse_gammas(text: str) -> np.ndarray:
    parts = [t for t in text.replace(",", " ").split()]
    try:
        return np.array([float(t) for t in parts])
    except ValueError:
        raise CliError(f"--gamma: cannot parse {text!r} as a list of reals", EXIT_INPUT) from None


def cmd_mask(args) -> int:
    state = _load_state(args.state)
    message = _load_matrix(_read_doc(args.message), args.message, state.dim_a)
    if unitarity_residual(message) > tols.UNITARY_TOL:
        raise CliError(f"{args.message}: matrix is not unitary", EXIT_INPUT)
    _, family = _family(state, args.tol)
    if args.gamma is not None:
        gammas = _parse_gammas(args.gamma)
        if gammas.size != family.s_count:
            raise CliError(f"--gamma: expected {family.s_count} values, got {gammas.size}",
                           EXIT_INPUT)
    else:
        rng = np.random.default_rng(args.seed)
        gammas = rng.uniform(-np.pi, np.pi, size=family.s_count)
    E = masking_unitary(family, gammas)
    station = message @ E
    check = verify_conserving(E, state, args.verify_tol)
    phi = state.as_matrix()
    outcome_residual = float(np.linalg.norm(station @ phi - message @ phi))
    doc = {
        "format_version": FORMAT_VERSION,
        "S": family.s_count,
        "gammas": [float(g) for g in gammas],
        "seed": args.seed if args.gamma is None else None,
        "station_unitary": matrix_to_doc(station),
        "masking_unitary": matrix_to_doc(E),
        "outcome_residual": outcome_residual,
        "conserving_residual": check.residual,
        "unitarity_residual": unitarity_residual(station),
    }
    _emit(doc, args.out)
    return EXIT_OK


def cmd_verify(args) -> int:
    state = _load_state(args.state)
    doc = _read_doc(args.unitary)
    if isinstance(doc, dict) and "masking_unitary" in doc:
        U = _load_matrix(doc["masking_unitary"], f"{args.unitary}.masking_unitary", state.dim_a)
    else:
        U = _load_matrix(doc, args.unitary, state.dim_a)
    if args.message is not None:
        message = _load_matrix(_read_doc(args.message), args.message, state.dim_a)
        U = message.conj().T @ U
    result = verify_conserving(U, state, args.tol)
    print(f"residual {result.residual!r} component_residual {result.component_residual!r} "
          f"{'conserving' if result.ok else 'NOT conserving'}")
    return EXIT_OK if result.ok else EXIT_FAILED


def cmd_simulate(args) -> int:
    state = _load_state(args.state)
    if args.trials < 1:
        raise CliError("--trials must be >= 1", EXIT_INPUT)
    if args.message is not None:
        message = _load_matrix(_read_doc(args.message), args.message, state.dim_a)
    else:
        message = np.eye(state.dim_a, dtype=complex)
    _, family = _family(state, args.tol)
    report = ambiguity_report(state, family, message, args.trials, args.seed)
    doc = {"format_version": FORMAT_VERSION, **report.as_dict()}
    _emit(doc, args.out)
    return EXIT_OK


def _parse_qubits(text: str):
    try:
        d, m, q = (int(t) for t in text.split(","))
    except ValueError:
        raise CliError(f"--qubits: expected d,m,q, got {text!r}", EXIT_INPUT) from None
    try:
        return qubit_dims(d, m, q)
    except (ValueError, OverflowError) as exc:
        raise CliError(f"--qubits: {exc}", EXIT_INPUT) from None


def cmd_random_state(args) -> int:
    if args.qubits is not None:
        if args.n is not None or args.p is not None:
            raise CliError("use either --qubits or --n/--p, not both", EXIT_INPUT)
        n, p = _parse_qubits(args.qubits)
    else:
        if args.n is None or args.p is None:
            raise CliError("need --n and --p, or --qubits", EXIT_INPUT)
        n, p = args.n, args.p
    if n < 1 or p < 1:
        raise CliError("dimensions must be positive", EXIT_INPUT)
    rank = min(n, p) if args.rank is None else args.rank
    try:
        state = random_state(n, p, rank, args.seed)
    except StateError as exc:
        raise CliError(str(exc), EXIT_INPUT) from None
    _emit(state_to_doc(state), args.out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="densemask",
        description="Conserving unitaries for a shared bipartite state, and station masking.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help_):
        sp = sub.add_parser(name, help=help_)
        sp.set_defaults(func=func)
        sp.add_argument("--out", "-o", help="output file (default: stdout)")
        return sp

    rank_tol_help = "singular-value cutoff for the constraint rank (0 = max-dim*eps*sigma_max)"

    sp = add("analyze", cmd_analyze, "rank, dense-coding and family-size diagnostics")
    sp.add_argument("state")
    sp.add_argument("--tol", type=float, default=0.0, help=rank_tol_help)

    sp = add("generators", cmd_generators, "write the conserving generator family")
    sp.add_argument("state")
    sp.add_argument("--tol", type=float, default=0.0, help=rank_tol_help)

    sp = add("mask", cmd_mask, "mask a message unitary with a conserving unitary")
    sp.add_argument("state")
    sp.add_argument("message")
    grp = sp.add_mutually_exclusive_group(required=True)
    grp.add_argument("--gamma", help="comma-separated list of S reals")
    grp.add_argument("--seed", type=int, help="draw gammas uniformly from [-pi, pi]")
    sp.add_argument("--tol", type=float, default=0.0, help=rank_tol_help)
    sp.add_argument("--verify-tol", type=float, default=tols.CONSERVE_TOL)

    sp = add("verify", cmd_verify, "check that a unitary leaves the state unchanged")
    sp.add_argument("state")
    sp.add_argument("unitary", help="matrix document, or the output of 'mask'")
    sp.add_argument("--message", help="compare against this message unitary instead of identity")
    sp.add_argument("--tol", type=float, default=tols.CONSERVE_TOL)

    sp = add("simulate", cmd_simulate, "station/outcome distance statistics over random masks")
    sp.add_argument("state")
    sp.add_argument("--trials", type=int, default=100)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--message", help="message unitary (default: identity)")
    sp.add_argument("--tol", type=float, default=0.0, help=rank_tol_help)

    sp = add("random-state", cmd_random_state, "write a seeded random state")
    sp.add_argument("--n", type=int)
    sp.add_argument("--p", type=int)
    sp.add_argument("--qubits", help="d,m,q: n = d**m, p = d**q")
    sp.add_argument("--rank", type=int, help="component rank (default: min(n, p))")
    sp.add_argument("--seed", type=int, default=0)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    try:
        return args.func(args)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code


if __name__ == "__main__":
    sys.exit(main())
