"""Default numerical tolerances, collected in one place.

Every public function that compares against a threshold takes a ``tol``-style
keyword whose default comes from here.
"""

import numpy as np

EPS = float(np.finfo(float).eps)

# Gram-Schmidt: vectors whose post-projection norm is <= this are dropped.
ORTHO_TOL = 1e-10

# Hermitian / skew-Hermitian input checks, relative to ||A||_F.
HERMITIAN_TOL = 1e-10
SKEW_TOL = 1e-10

# Cyclic Jacobi stopping rule: off-diagonal Frobenius norm <= JACOBI_OFF_TOL * ||A||_F.
JACOBI_OFF_TOL = 1e-12
JACOBI_MAX_SWEEPS = 50

# Components below this magnitude are skipped when fixing sign/phase.
PHASE_TOL = 1e-8

# State norm must be within this of 1.
NORM_TOL = 1e-6

# ||U^dagger U - I||_F allowed for a matrix accepted as unitary.
UNITARY_TOL = 1e-8

# ||(E x I) psi - psi||_2 accepted as "conserving".
CONSERVE_TOL = 1e-8

# Projection residual accepted by spans_equal.
SPAN_TOL = 1e-9

# station_distance above which a masked send counts as hidden.
HIDDEN_THRESHOLD = 0.1


def default_rank_tol(singular_values, shape) -> float:
    """max(rows, cols) * eps * largest singular value."""
    smax = float(singular_values[0]) if len(singular_values) else 0.0
    return max(shape) * EPS * smax
