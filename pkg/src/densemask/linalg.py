"""Dense real/complex linear algebra kernel.

Matrices are plain 2-D numpy arrays (``float64`` or ``complex128``); vector
sequences are 2-D arrays with one vector per row.  Rank and null space sit on
top of LAPACK's SVD; the Hermitian eigensolver is a cyclic complex Jacobi
iteration so that eigenvector phases and ordering are fully under our control.
"""

from __future__ import annotations

import numpy as np

from . import tolerances as tols


class LinAlgError(ValueError):
    """Raised for shape, symmetry or convergence failures."""


def _as_matrix(M, dtype) -> np.ndarray:
    A = np.asarray(M, dtype=dtype)
    if A.ndim != 2:
        raise LinAlgError(f"expected a 2-D matrix, got ndim={A.ndim}")
    if not np.all(np.isfinite(A)):
        raise LinAlgError("matrix has non-finite entries")
    return A


def _svd_threshold(M, tol):
    A = _as_matrix(M, float)
    if A.size == 0:
        raise LinAlgError("degenerate shape")
    if tol < 0:
        raise LinAlgError("tol must be nonnegative")
    _, s, vh = np.linalg.svd(A)
    if tol == 0:
        tol = tols.default_rank_tol(s, A.shape)
    return A, s, vh, tol


def rank_real(M, tol: float = 0.0) -> int:
    """Numerical rank: number of singular values strictly above ``tol``.

    ``tol=0`` selects ``max(rows, cols) * eps * sigma_max``.
    """
    _, s, _, tol = _svd_threshold(M, tol)
    return int(np.count_nonzero(s > tol))


def fix_phase(v: np.ndarray, tol: float = tols.PHASE_TOL) -> np.ndarray:
    """Rotate ``v`` so its first component with ``|.| > tol`` is real positive."""
    v = np.array(v)
    idx = np.flatnonzero(np.abs(v) > tol)
    if idx.size:
        c = v[idx[0]]
        if np.iscomplexobj(v):
            v = v * (abs(c) / c)
            v[idx[0]] = abs(c)
        elif c < 0:
            v = -v
    return v


def orthonormalize(vs, tol: float = tols.ORTHO_TOL) -> np.ndarray:
    """Orthonormal basis of span(vs) by modified Gram-Schmidt, projecting twice.

    Input vectors are processed in order; a vector whose norm after projection
    is ``<= tol`` is dropped, so the output count is the numerical rank of the
    input set.  Returns an array of shape ``(k, dim)``; dtype follows the input.
    """
    V = np.atleast_2d(np.asarray(vs))
    if V.size == 0:
        return np.zeros((0, V.shape[-1] if V.ndim == 2 else 0), dtype=V.dtype)
    dtype = complex if np.iscomplexobj(V) else float
    V = V.astype(dtype)
    basis: list[np.ndarray] = []
    for v in V:
        w = v.copy()
        for _ in range(2):
            for q in basis:
                w -= np.vdot(q, w) * q
        nrm = np.linalg.norm(w)
        if nrm > tol:
            basis.append(w / nrm)
    if not basis:
        return np.zeros((0, V.shape[1]), dtype=dtype)
    return np.array(basis)


def null_space_real(M, tol: float = 0.0) -> np.ndarray:
    """Orthonormal basis of ker(M), one vector per row.

    The basis is canonical rather than whatever LAPACK happens to return:
    the kernel projector is applied to e_1, e_2, ... in order and the images
    are Gram-Schmidt orthonormalized, then each vector gets the sign
    convention of :func:`fix_phase`.  Every returned ``v`` satisfies
    ``||M v||_2 <= tol`` (``tol`` being the absolute singular-value cutoff,
    after default substitution), hence also ``<= 10 tol max(1, ||M||_2)``.
    """
    A, s, vh, tol = _svd_threshold(M, tol)
    r = int(np.count_nonzero(s > tol))
    N = vh[r:]
    k = N.shape[0]
    if k == 0:
        return np.zeros((0, A.shape[1]))
    P = N.T @ N
    # sum_j ||P e_j||^2 = k, so some candidate always clears 1/(2 sqrt(cols))
    picked = orthonormalize(P, tol=0.5 / np.sqrt(A.shape[1]))
    if picked.shape[0] != k:
        raise LinAlgError("failed to build canonical kernel basis")
    # one more pass against N to strip drift from the thresholded projector
    picked = orthonormalize(picked @ N.T @ N)
    return np.array([fix_phase(v) for v in picked])


def hermiticity_residual(A) -> float:
    A = np.asarray(A)
    return float(np.linalg.norm(A - A.conj().T))


def _jacobi_rotate(A: np.ndarray, V: np.ndarray, p: int, q: int) -> None:
    b = A[p, q]
    r = abs(b)
    phase = b / r
    a, d = A[p, p].real, A[q, q].real
    tau = (d - a) / (2.0 * r)
    t = (1.0 if tau >= 0 else -1.0) / (abs(tau) + np.sqrt(1.0 + tau * tau))
    c = 1.0 / np.sqrt(1.0 + t * t)
    s = t * c
    # G = diag(1, conj(phase)) @ [[c, s], [-s, c]]
    g00, g01 = c, s
    g10, g11 = -s * np.conj(phase), c * np.conj(phase)
    ap, aq = A[:, p].copy(), A[:, q].copy()
    A[:, p] = ap * g00 + aq * g10
    A[:, q] = ap * g01 + aq * g11
    ap, aq = A[p, :].copy(), A[q, :].copy()
    A[p, :] = np.conj(g00) * ap + np.conj(g10) * aq
    A[q, :] = np.conj(g01) * ap + np.conj(g11) * aq
    A[p, q] = A[q, p] = 0.0
    A[p, p] = A[p, p].real
    A[q, q] = A[q, q].real
    vp, vq = V[:, p].copy(), V[:, q].copy()
    V[:, p] = vp * g00 + vq * g10
    V[:, q] = vp * g01 + vq * g11


def hermitian_eigen(A, hermitian_tol: float = tols.HERMITIAN_TOL,
                    off_tol: float = tols.JACOBI_OFF_TOL,
                    max_sweeps: int = tols.JACOBI_MAX_SWEEPS):
    """Eigendecomposition ``A = V diag(w) V^dagger`` by cyclic Jacobi sweeps.

    Eigenvalues are returned ascending; each eigenvector column has its first
    component of magnitude ``> PHASE_TOL`` made real positive.
    """
    A = _as_matrix(A, complex)
    n, m = A.shape
    if n != m:
        raise LinAlgError(f"non-square input {A.shape}")
    scale = np.linalg.norm(A)
    if hermiticity_residual(A) > hermitian_tol * scale:
        raise LinAlgError("non-Hermitian input")
    A = 0.5 * (A + A.conj().T)
    V = np.eye(n, dtype=complex)
    target = off_tol * scale
    # rotations below this are no-ops at working precision
    skip = tols.EPS * 1e-3 * scale
    for _ in range(max_sweeps + 1):
        off = np.linalg.norm(A - np.diag(np.diag(A)))
        if off <= target:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                if abs(A[p, q]) > skip:
                    _jacobi_rotate(A, V, p, q)
    else:
        raise LinAlgError(f"Jacobi did not converge in {max_sweeps} sweeps")
    w = np.diag(A).real.copy()
    order = np.argsort(w, kind="stable")
    w = w[order]
    V = V[:, order]
    V = np.column_stack([fix_phase(V[:, j]) for j in range(n)]) if n else V
    return w, V


def skew_hermitian_spectrum(D, tol: float = tols.SKEW_TOL):
    """Return ``(w, V)`` with ``D = V diag(i w) V^dagger``.

    Obtained from :func:`hermitian_eigen` of the Hermitian matrix ``-i D``.
    """
    D = _as_matrix(D, complex)
    if D.shape[0] != D.shape[1]:
        raise LinAlgError(f"non-square input {D.shape}")
    nrm = np.linalg.norm(D)
    if np.linalg.norm(D + D.conj().T) > tol * max(1.0, nrm):
        raise LinAlgError("non-skew-Hermitian input")
    A = -1j * D
    A = 0.5 * (A + A.conj().T)
    return hermitian_eigen(A)


def expm_from_spectrum(w, V, gamma: float) -> np.ndarray:
    return (V * np.exp(1j * gamma * w)) @ V.conj().T


def expm_skew_hermitian(D, gamma: float = 1.0, tol: float = tols.SKEW_TOL) -> np.ndarray:
    """exp(gamma * D) for skew-Hermitian ``D``; the result is unitary."""
    w, V = skew_hermitian_spectrum(D, tol)
    return expm_from_spectrum(w, V, gamma)


def unitarity_residual(U) -> float:
    """||U^dagger U - I||_F."""
    U = np.asarray(U)
    if U.ndim != 2 or U.shape[0] != U.shape[1]:
        raise LinAlgError(f"non-square input {U.shape}")
    return float(np.linalg.norm(U.conj().T @ U - np.eye(U.shape[0])))
