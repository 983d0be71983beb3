"""Sender-side unitaries that leave a shared state unchanged.

A unitary E with (E x I) psi = psi must fix every component vector phi_k.
Its generators are the skew-Hermitian D with D phi_k = 0.  Writing

    D = A_re + i A_im,   A_re antisymmetric (alpha_re above the diagonal),
                         A_im symmetric (delta on the diagonal, alpha_im off it)

and phi_k = x_k + i y_k, the condition D phi_k = 0 splits into the real pair

    A_re x_k - A_im y_k = 0,     A_im x_k + A_re y_k = 0,

which is linear in the n^2 real parameters (delta, alpha_re, alpha_im).
Its kernel gives the generator family; exponentials of the generators
and products of those exponentials are the conserving unitaries.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from . import tolerances as tols
from .linalg import (
    expm_from_spectrum,
    null_space_real,
    orthonormalize,
    rank_real,
    skew_hermitian_spectrum,
)
from .state import BipartiteState, ComponentDecomposition


def _pairs(n: int):
    return [(s, t) for s in range(n) for t in range(s + 1, n)]


@dataclass(frozen=True)
class GeneratorParameters:
    """Real coordinates of an n x n skew-Hermitian matrix.

    Flat order (see :meth:`to_vector`): delta_1..delta_n, then for each pair
    s < t in lexicographic order alpha_re[s,t], alpha_im[s,t].
    """

    deltas: np.ndarray
    alphas_re: np.ndarray
    alphas_im: np.ndarray

    @property
    def n(self) -> int:
        return len(self.deltas)

    def to_vector(self) -> np.ndarray:
        n = self.n
        v = np.empty(n * n)
        v[:n] = self.deltas
        v[n::2] = self.alphas_re
        v[n + 1::2] = self.alphas_im
        return v

    @classmethod
    def from_vector(cls, v) -> "GeneratorParameters":
        v = np.asarray(v, dtype=float)
        n = int(round(np.sqrt(v.size)))
        if n * n != v.size:
            raise ValueError(f"parameter count {v.size} is not a perfect square")
        return cls(v[:n].copy(), v[n::2].copy(), v[n + 1::2].copy())


def assemble_generator(params) -> np.ndarray:
    """Skew-Hermitian D from parameters (a GeneratorParameters or flat vector).

    D[k,k] = i delta_k, D[s,t] = alpha_re + i alpha_im for s < t,
    D[t,s] = -conj(D[s,t]).
    """
    if not isinstance(params, GeneratorParameters):
        params = GeneratorParameters.from_vector(params)
    n = params.n
    D = np.zeros((n, n), dtype=complex)
    D[np.diag_indices(n)] = 1j * params.deltas
    if n > 1:
        iu = np.triu_indices(n, 1)
        upper = params.alphas_re + 1j * params.alphas_im
        D[iu] = upper
        D[iu[1], iu[0]] = -np.conj(upper)
    return D


def extract_parameters(D) -> GeneratorParameters:
    """Inverse of :func:`assemble_generator` (reads the diagonal and upper triangle)."""
    D = np.asarray(D, dtype=complex)
    n = D.shape[0]
    iu = np.triu_indices(n, 1)
    return GeneratorParameters(np.diag(D).imag.copy(), D[iu].real.copy(), D[iu].imag.copy())


@dataclass(frozen=True)
class ConstraintSystem:
    """2np x n^2 real matrix of the conditions D phi_k = 0.

    Row ``2 (k n + a)`` is Re (D phi_k)[a], the next row its imaginary part.
    Columns follow :class:`GeneratorParameters` order.
    """

    matrix: np.ndarray
    dim_a: int
    dim_b: int


def _block_operators(n: int):
    """Unit-parameter matrices (A_re, A_im) for every unknown, shape (n^2, n, n)."""
    a_re = np.zeros((n * n, n, n))
    a_im = np.zeros((n * n, n, n))
    for k in range(n):
        a_im[k, k, k] = 1.0
    for j, (s, t) in enumerate(_pairs(n)):
        col = n + 2 * j
        a_re[col, s, t], a_re[col, t, s] = 1.0, -1.0
        a_im[col + 1, s, t] = a_im[col + 1, t, s] = 1.0
    return a_re, a_im


def build_constraint_system(decomp: ComponentDecomposition) -> ConstraintSystem:
    phi = np.asarray(decomp.components)
    if phi.ndim != 2:
        raise ValueError("components must all have the same length")
    p, n = phi.shape
    a_re, a_im = _block_operators(n)
    x, y = phi.real, phi.imag
    # re[u, k, a] = (A_re^u x_k - A_im^u y_k)[a]; im[...] = (A_im^u x_k + A_re^u y_k)[a]
    re = np.einsum("uab,kb->uka", a_re, x) - np.einsum("uab,kb->uka", a_im, y)
    im = np.einsum("uab,kb->uka", a_im, x) + np.einsum("uab,kb->uka", a_re, y)
    M = np.empty((2 * n * p, n * n))
    M[0::2] = re.reshape(n * n, n * p).T
    M[1::2] = im.reshape(n * n, n * p).T
    return ConstraintSystem(M, n, p)


@dataclass(frozen=True)
class ConservingFamily:
    """Orthonormal (in parameter space) basis of conserving generators.

    Parameter vectors are unit Euclidean vectors over (delta, alpha_re,
    alpha_im); the matching generator has
    ||D||_F^2 = sum delta^2 + 2 sum (alpha_re^2 + alpha_im^2), so it is
    not Frobenius-normalized.
    """

    generators: tuple
    parameter_vectors: np.ndarray
    s_count: int
    component_rank: int
    orbit_dimension: int
    dim_a: int

    @cached_property
    def spectra(self) -> tuple:
        """Per-generator (w, V) with D = V diag(i w) V^dagger; computed once."""
        return tuple(skew_hermitian_spectrum(D) for D in self.generators)

    def factor(self, s: int, gamma: float) -> np.ndarray:
        w, V = self.spectra[s]
        return expm_from_spectrum(w, V, gamma)


def solve_family(decomp: ComponentDecomposition, tol: float = 0.0) -> ConservingFamily:
    """Kernel of the constraint system, mapped back to skew-Hermitian matrices.

    ``tol`` is the singular-value cutoff passed to the rank computation
    (0 selects the default).
    """
    system = build_constraint_system(decomp)
    orbit = rank_real(system.matrix, tol)
    kernel = null_space_real(system.matrix, tol)
    gens = tuple(assemble_generator(v) for v in kernel)
    n = system.dim_a
    return ConservingFamily(
        generators=gens,
        parameter_vectors=kernel,
        s_count=len(gens),
        component_rank=decomp.rank,
        orbit_dimension=orbit,
        dim_a=n,
    )


def masking_unitary(family: ConservingFamily, gammas) -> np.ndarray:
    """E_1(g_1) E_2(g_2) ... E_S(g_S), factors in ascending order."""
    gammas = np.asarray(gammas, dtype=float).reshape(-1)
    if gammas.size != family.s_count:
        raise ValueError(f"expected {family.s_count} gammas, got {gammas.size}")
    U = np.eye(family.dim_a, dtype=complex)
    for s, g in enumerate(gammas):
        if g != 0.0:
            U = U @ family.factor(s, g)
    return U


@dataclass(frozen=True)
class Verification:
    ok: bool
    residual: float
    component_residual: float

    def __bool__(self) -> bool:
        return self.ok


def verify_conserving(E, state: BipartiteState, tol: float = tols.CONSERVE_TOL) -> Verification:
    """Check (E x I) psi = psi; also report max_k ||E phi_k - phi_k||."""
    E = np.asarray(E, dtype=complex)
    n = state.dim_a
    if E.shape != (n, n):
        raise ValueError(f"expected a {n}x{n} matrix, got {E.shape}")
    phi = state.as_matrix()
    diff = E @ phi - phi
    residual = float(np.linalg.norm(diff))
    comp = float(np.max(np.linalg.norm(diff, axis=0))) if state.dim_b else 0.0
    return Verification(residual <= tol, residual, comp)


def skew_hermitian_basis(m: int) -> list:
    """Canonical basis of the m^2-dimensional real space of m x m skew-Hermitian matrices."""
    out = []
    for j in range(m):
        K = np.zeros((m, m), dtype=complex)
        K[j, j] = 1j
        out.append(K)
    for j, k in _pairs(m):
        K = np.zeros((m, m), dtype=complex)
        K[j, k], K[k, j] = 1.0, -1.0
        out.append(K)
        K = np.zeros((m, m), dtype=complex)
        K[j, k] = K[k, j] = 1j
        out.append(K)
    return out


def oracle_family(decomp: ComponentDecomposition) -> list:
    """Skew-Hermitian matrices supported on the complement of span{phi_k}.

    Built directly as B K B^dagger with B the complement basis as columns,
    independent of the constraint system.
    """
    B = np.asarray(decomp.h_perp_basis).T
    m = B.shape[1]
    return [B @ K @ B.conj().T for K in skew_hermitian_basis(m)]


def _real_rows(mats) -> np.ndarray:
    return np.array([np.concatenate([np.ravel(M).real, np.ravel(M).imag]) for M in mats])


def _projection_residual(a: np.ndarray, qb: np.ndarray) -> float:
    worst = 0.0
    for v in a:
        nrm = np.linalg.norm(v)
        if nrm == 0:
            continue
        r = v - qb.T @ (qb @ v) if qb.size else v
        worst = max(worst, float(np.linalg.norm(r) / nrm))
    return worst


def spans_equal(a, b, tol: float = tols.SPAN_TOL) -> bool:
    """Whether two lists of same-shape matrices span the same real subspace.

    Matrices are flattened to real vectors (real parts then imaginary parts);
    each normalized vector of one list is projected onto the span of the
    other, in both directions.
    """
    a, b = list(a), list(b)
    shapes = {np.shape(M) for M in a + b}
    if len(shapes) > 1:
        raise ValueError(f"shape mismatch: {sorted(shapes)}")
    if not a or not b:
        return not any(np.any(M) for M in a + b)
    ra, rb = _real_rows(a), _real_rows(b)
    qa, qb = orthonormalize(ra, tol=tols.ORTHO_TOL), orthonormalize(rb, tol=tols.ORTHO_TOL)
    return _projection_residual(ra, qb) <= tol and _projection_residual(rb, qa) <= tol
