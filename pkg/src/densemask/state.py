"""Bipartite pure states and their sender-side component vectors."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import tolerances as tols
from .linalg import orthonormalize


class StateError(ValueError):
    pass


@dataclass(frozen=True)
class BipartiteState:
    """Pure state on C^n (sender) x C^p (receiver).

    The amplitude of ``|a>|b>`` is stored at flat index ``a * p + b``.
    Normalization is checked by the operations that need it, not enforced
    here, so an unnormalized vector can still be loaded and reported on.
    """

    dim_a: int
    dim_b: int
    amplitudes: np.ndarray = field(repr=False)

    def __post_init__(self):
        if self.dim_a < 1 or self.dim_b < 1:
            raise StateError(f"dimensions must be positive, got ({self.dim_a}, {self.dim_b})")
        amps = np.asarray(self.amplitudes, dtype=complex).reshape(-1)
        if amps.size != self.dim_a * self.dim_b:
            raise StateError(
                f"expected {self.dim_a * self.dim_b} amplitudes, got {amps.size}")
        if not np.all(np.isfinite(amps)):
            raise StateError("amplitudes must be finite")
        amps.flags.writeable = False
        object.__setattr__(self, "amplitudes", amps)

    @property
    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))

    def as_matrix(self) -> np.ndarray:
        """n x p matrix whose k-th column is the component vector phi_k."""
        return self.amplitudes.reshape(self.dim_a, self.dim_b)

    def require_normalized(self, tol: float = tols.NORM_TOL) -> None:
        if abs(self.norm - 1.0) > tol:
            raise StateError(f"state is not normalized (norm = {self.norm!r})")

    @classmethod
    def from_matrix(cls, phi) -> "BipartiteState":
        phi = np.asarray(phi, dtype=complex)
        return cls(phi.shape[0], phi.shape[1], phi.reshape(-1))

    @classmethod
    def product(cls, a, b) -> "BipartiteState":
        a = np.asarray(a, dtype=complex)
        b = np.asarray(b, dtype=complex)
        return cls(a.size, b.size, np.kron(a, b))


def normalize(state: BipartiteState) -> BipartiteState:
    nrm = state.norm
    if nrm == 0:
        raise StateError("cannot normalize the zero vector")
    return BipartiteState(state.dim_a, state.dim_b, state.amplitudes / nrm)


@dataclass(frozen=True)
class ComponentDecomposition:
    """phi_k (rows of ``components``), their rank, and bases for H and H-perp."""

    components: np.ndarray
    rank: int
    h_basis: np.ndarray
    h_perp_basis: np.ndarray

    @property
    def dim_a(self) -> int:
        return self.components.shape[1]

    @property
    def dim_b(self) -> int:
        return self.components.shape[0]

    def reconstruct(self) -> np.ndarray:
        """sum_k phi_k (x) e_k as a flat amplitude vector."""
        return self.components.T.reshape(-1)


def complete_basis(basis: np.ndarray, n: int) -> np.ndarray:
    """Orthonormal basis of the complement of span(basis) in C^n.

    Candidates are e_1, ..., e_n in order.  The acceptance threshold
    1/(2 sqrt(n)) always leaves enough survivors because the squared
    projections of the e_j onto any m-dimensional subspace sum to m.
    """
    basis = np.asarray(basis, dtype=complex).reshape(-1, n)
    k = basis.shape[0]
    full = orthonormalize(np.vstack([basis, np.eye(n, dtype=complex)]),
                          tol=0.5 / np.sqrt(n))
    # orthonormalize drops nothing from an orthonormal prefix
    perp = full[k:]
    if perp.shape[0] != n - k:
        raise StateError("basis completion failed")
    return perp


def decompose(state: BipartiteState, tol: float = tols.ORTHO_TOL) -> ComponentDecomposition:
    """Read off phi_k[a] = amplitudes[a p + k] and compute span data."""
    state.require_normalized()
    phi = np.array(state.as_matrix().T)
    h = orthonormalize(phi, tol=tol)
    h_perp = complete_basis(h, state.dim_a)
    phi.flags.writeable = False
    return ComponentDecomposition(phi, int(h.shape[0]), h, h_perp)


@dataclass(frozen=True)
class DenseCodingReport:
    capable: bool
    rank: int
    dim_a: int
    dim_b: int
    masking_possible: bool  # n > p
    excess_parameters: int  # K = n^2 - 2np
    excess_positive: bool

    @property
    def expected_family_size(self) -> int:
        return (self.dim_a - self.rank) ** 2


def dense_coding_capable(decomp: ComponentDecomposition) -> DenseCodingReport:
    """Capable iff the p component vectors are linearly independent."""
    n, p, r = decomp.dim_a, decomp.dim_b, decomp.rank
    k = n * n - 2 * n * p
    return DenseCodingReport(
        capable=r == p,
        rank=r,
        dim_a=n,
        dim_b=p,
        masking_possible=n > p,
        excess_parameters=k,
        excess_positive=k > 0,
    )


def random_state(n: int, p: int, target_rank: int, seed: int) -> BipartiteState:
    """Seeded random normalized state whose components have rank ``target_rank``.

    ``target_rank`` Gaussian vectors in C^n are mixed into p components by a
    Gaussian coefficient matrix; redraws (measure-zero events) continue the
    same generator, so output is a pure function of the arguments.
    """
    if not (1 <= target_rank <= min(n, p)):
        raise StateError(f"infeasible rank {target_rank} for n={n}, p={p}")
    rng = np.random.default_rng(seed)
    for _ in range(100):
        g = rng.standard_normal((n, target_rank)) + 1j * rng.standard_normal((n, target_rank))
        c = rng.standard_normal((target_rank, p)) + 1j * rng.standard_normal((target_rank, p))
        phi = g @ c
        state = normalize(BipartiteState.from_matrix(phi))
        if decompose(state).rank == target_rank:
            return state
    raise StateError("could not draw a state of the requested rank")


def qubit_dims(d: int, m: int, q: int) -> tuple[int, int]:
    """(d**m, d**q): dimensions for m sender and q receiver d-level systems."""
    if d < 2 or m < 1 or q < 1:
        raise ValueError(f"need d >= 2, m >= 1, q >= 1; got ({d}, {m}, {q})")
    n, p = d ** m, d ** q
    if max(n, p) > np.iinfo(np.int64).max:
        raise OverflowError("dimension exceeds int64 range")
    return n, p
