"""Sender-to-receiver sends with station masking."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import tolerances as tols
from .conserving import ConservingFamily, masking_unitary
from .linalg import unitarity_residual
from .state import BipartiteState


def apply_local(U, state: BipartiteState, tol: float = tols.UNITARY_TOL) -> BipartiteState:
    """(U x I) psi."""
    U = np.asarray(U, dtype=complex)
    n = state.dim_a
    if U.shape != (n, n):
        raise ValueError(f"expected a {n}x{n} unitary, got {U.shape}")
    if unitarity_residual(U) > tol:
        raise ValueError("matrix is not unitary")
    return BipartiteState(n, state.dim_b, (U @ state.as_matrix()).reshape(-1))


@dataclass(frozen=True)
class MaskedSend:
    message_unitary: np.ndarray
    gammas: np.ndarray
    station_unitary: np.ndarray
    outcome: BipartiteState
    station_distance: float
    outcome_distance: float


def masked_send(message, family: ConservingFamily, gammas, state: BipartiteState) -> MaskedSend:
    message = np.asarray(message, dtype=complex)
    gammas = np.asarray(gammas, dtype=float).reshape(-1)
    station = message @ masking_unitary(family, gammas)
    outcome = apply_local(station, state)
    plain = apply_local(message, state)
    return MaskedSend(
        message_unitary=message,
        gammas=gammas,
        station_unitary=station,
        outcome=outcome,
        station_distance=float(np.linalg.norm(station - message)),
        outcome_distance=float(np.linalg.norm(outcome.amplitudes - plain.amplitudes)),
    )


@dataclass(frozen=True)
class Codebook:
    labels: tuple
    unitaries: tuple

    def __len__(self):
        return len(self.labels)

    def __getitem__(self, label):
        return self.unitaries[self.labels.index(label)]


def shift_matrix(n: int) -> np.ndarray:
    """X|j> = |j+1 mod n>."""
    return np.roll(np.eye(n, dtype=complex), 1, axis=0)


def clock_matrix(n: int) -> np.ndarray:
    return np.diag(np.exp(2j * np.pi * np.arange(n) / n))


def pauli_codebook(n: int) -> Codebook:
    """The n^2 shift/clock products X^a Z^b, labelled (a, b)."""
    if n < 2:
        raise ValueError("need n >= 2")
    X, Z = shift_matrix(n), clock_matrix(n)
    labels, mats = [], []
    for a in range(n):
        for b in range(n):
            labels.append((a, b))
            mats.append(np.linalg.matrix_power(X, a) @ np.linalg.matrix_power(Z, b))
    return Codebook(tuple(labels), tuple(mats))


@dataclass(frozen=True)
class AmbiguityReport:
    trials: int
    s_count: int
    seed: int
    station_min: float
    station_mean: float
    station_max: float
    outcome_min: float
    outcome_mean: float
    outcome_max: float
    hidden_fraction: float
    threshold: float

    def as_dict(self) -> dict:
        return dict(self.__dict__)


def ambiguity_report(state: BipartiteState, family: ConservingFamily, message,
                     trials: int, seed: int,
                     threshold: float = tols.HIDDEN_THRESHOLD) -> AmbiguityReport:
    """Mask ``message`` with gammas drawn uniformly from [-pi, pi]^S, ``trials`` times.

    Only sums and extrema are aggregated, so the result does not depend on
    trial order.
    """
    if trials < 1:
        raise ValueError("trials must be >= 1")
    rng = np.random.default_rng(seed)
    gammas = rng.uniform(-np.pi, np.pi, size=(trials, family.s_count))
    station = np.empty(trials)
    outcome = np.empty(trials)
    for i, g in enumerate(gammas):
        send = masked_send(message, family, g, state)
        station[i] = send.station_distance
        outcome[i] = send.outcome_distance
    return AmbiguityReport(
        trials=trials,
        s_count=family.s_count,
        seed=seed,
        station_min=float(station.min()),
        station_mean=float(station.mean()),
        station_max=float(station.max()),
        outcome_min=float(outcome.min()),
        outcome_mean=float(outcome.mean()),
        outcome_max=float(outcome.max()),
        hidden_fraction=float(np.mean(station > threshold)),
        threshold=threshold,
    )
