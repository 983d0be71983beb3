"""Independent reference computations used to check the library.

Nothing here calls into densemask; each routine is a slow, obvious method.
"""

import numpy as np
import scipy.linalg


def elimination_rank(M, rel_tol=1e-9):
    """Rank by Gaussian elimination with full pivoting."""
    A = np.array(M, dtype=float)
    if A.size == 0:
        return 0
    scale = np.abs(A).max()
    if scale == 0:
        return 0
    rows, cols = A.shape
    rank = 0
    for _ in range(min(rows, cols)):
        sub = np.abs(A[rank:, rank:])
        i, j = np.unravel_index(np.argmax(sub), sub.shape)
        if sub[i, j] <= rel_tol * scale:
            break
        i += rank
        j += rank
        A[[rank, i]] = A[[i, rank]]
        A[:, [rank, j]] = A[:, [j, rank]]
        A[rank + 1:] -= np.outer(A[rank + 1:, rank] / A[rank, rank], A[rank])
        rank += 1
    return rank


def taylor_expm(A, terms=40):
    """exp(A) by scaling, truncated Taylor series, and squaring."""
    A = np.asarray(A, dtype=complex)
    k = max(0, int(np.ceil(np.log2(max(np.linalg.norm(A), 1e-300)))) + 1)
    B = A / 2 ** k
    out = np.eye(A.shape[0], dtype=complex)
    term = np.eye(A.shape[0], dtype=complex)
    for j in range(1, terms):
        term = term @ B / j
        out = out + term
    for _ in range(k):
        out = out @ out
    return out


def unitary_algebra_basis(n):
    """Real basis of n x n skew-Hermitian matrices (n^2 elements)."""
    basis = []
    for a in range(n):
        for b in range(n):
            E = np.zeros((n, n), dtype=complex)
            if a == b:
                E[a, a] = 1j
            elif a < b:
                E[a, b], E[b, a] = 1, -1
            else:
                E[a, b] = E[b, a] = 1j
            basis.append(E)
    return basis


def differential_orbit_rank(amplitudes, n, p, h=1e-5, rel_tol=1e-6):
    """Rank of the real Jacobian of X -> (expm(X) x I) psi at X = 0.

    Columns are central finite differences along a basis of skew-Hermitian
    matrices, computed with scipy's expm on the full n p dimensional space.
    """
    psi = np.asarray(amplitudes, dtype=complex)
    cols = []
    for X in unitary_algebra_basis(n):
        plus = np.kron(scipy.linalg.expm(h * X), np.eye(p)) @ psi
        minus = np.kron(scipy.linalg.expm(-h * X), np.eye(p)) @ psi
        d = (plus - minus) / (2 * h)
        cols.append(np.concatenate([d.real, d.imag]))
    J = np.array(cols).T
    s = np.linalg.svd(J, compute_uv=False)
    return int(np.count_nonzero(s > rel_tol * s[0])) if s.size and s[0] > 0 else 0


def stabilizer_dimension_by_projection(phi_rows):
    """(n - r)^2 computed from the SVD rank of the component matrix."""
    phi = np.asarray(phi_rows)
    n = phi.shape[1]
    s = np.linalg.svd(phi, compute_uv=False)
    r = int(np.count_nonzero(s > 1e-10 * max(s[0], 1e-300))) if s.size else 0
    return (n - r) ** 2
