"""Conserving unitaries for shared bipartite states and sender-station masking."""

from .channel import (
    AmbiguityReport,
    Codebook,
    MaskedSend,
    ambiguity_report,
    apply_local,
    masked_send,
    pauli_codebook,
)
from .conserving import (
    ConservingFamily,
    ConstraintSystem,
    GeneratorParameters,
    assemble_generator,
    build_constraint_system,
    extract_parameters,
    masking_unitary,
    oracle_family,
    solve_family,
    spans_equal,
    verify_conserving,
)
from .linalg import (
    LinAlgError,
    expm_skew_hermitian,
    hermitian_eigen,
    null_space_real,
    orthonormalize,
    rank_real,
    unitarity_residual,
)
from .state import (
    BipartiteState,
    ComponentDecomposition,
    decompose,
    dense_coding_capable,
    normalize,
    qubit_dims,
    random_state,
)

__version__ = "0.1.0"
