import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import random_unitary
from densemask.state import (
    BipartiteState,
    StateError,
    decompose,
    dense_coding_capable,
    normalize,
    qubit_dims,
    random_state,
)


def test_decompose_product_state(product00):
    d = decompose(product00)
    np.testing.assert_array_equal(d.components, [[1, 0], [0, 0]])
    assert d.rank == 1


def test_decompose_bell(bell):
    d = decompose(bell)
    h = 1 / np.sqrt(2)
    np.testing.assert_array_equal(d.components, [[h, 0], [0, h]])
    assert d.rank == 2
    assert d.h_perp_basis.shape == (0, 2)


def test_decompose_random_reconstructs():
    s = random_state(8, 2, 2, seed=1)
    d = decompose(s)
    assert d.rank == 2
    assert np.linalg.norm(d.reconstruct() - s.amplitudes) <= 1e-12


def test_decompose_rejects_unnormalized():
    with pytest.raises(StateError, match="not normalized"):
        decompose(BipartiteState(2, 2, [1, 1, 0, 0]))


def test_normalize_helper():
    s = normalize(BipartiteState(2, 2, [3, 4j, 0, 0]))
    assert s.norm == pytest.approx(1.0, abs=1e-15)


def test_state_rejects_wrong_length():
    with pytest.raises(StateError):
        BipartiteState(2, 3, np.ones(5))


def test_state_is_immutable(bell):
    with pytest.raises(ValueError):
        bell.amplitudes[0] = 0


@pytest.mark.parametrize("n,p,r", [(2, 2, 1), (4, 3, 2), (8, 4, 3), (6, 1, 1)])
def test_decomposition_bases(n, p, r):
    d = decompose(random_state(n, p, r, seed=n * 100 + p * 10 + r))
    assert d.rank == r == d.h_basis.shape[0]
    assert d.h_basis.shape[0] + d.h_perp_basis.shape[0] == n
    Q = np.vstack([d.h_basis, d.h_perp_basis])
    np.testing.assert_allclose(Q.conj() @ Q.T, np.eye(n), atol=1e-10)
    # components live in H
    proj = d.components @ d.h_perp_basis.conj().T
    assert np.abs(proj).max() <= 1e-10


def test_dense_coding_product(product00):
    assert not dense_coding_capable(decompose(product00)).capable


def test_dense_coding_bell(bell):
    rep = dense_coding_capable(decompose(bell))
    assert rep.capable
    assert not rep.masking_possible
    assert rep.expected_family_size == 0


def test_dense_coding_headline(headline_state):
    rep = dense_coding_capable(decompose(headline_state))
    assert rep.capable and rep.masking_possible
    assert rep.excess_parameters == 32 and rep.excess_positive


def test_random_state_full_rank_is_capable():
    assert dense_coding_capable(decompose(random_state(2, 2, 2, seed=5))).capable


def test_random_state_rank_one():
    assert decompose(random_state(4, 2, 1, seed=5)).rank == 1


def test_random_state_deterministic():
    a = random_state(5, 3, 2, seed=42)
    b = random_state(5, 3, 2, seed=42)
    assert a.amplitudes.tobytes() == b.amplitudes.tobytes()


@pytest.mark.parametrize("rank", [0, 3])
def test_random_state_infeasible_rank(rank):
    with pytest.raises(StateError, match="infeasible"):
        random_state(4, 2, rank, seed=0)


@pytest.mark.parametrize("args,expected", [((2, 3, 1), (8, 2)), ((2, 1, 1), (2, 2)), ((3, 2, 1), (9, 3))])
def test_qubit_dims(args, expected):
    assert qubit_dims(*args) == expected


def test_qubit_dims_rejects_bad():
    with pytest.raises(ValueError):
        qubit_dims(1, 2, 1)


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 6), st.integers(1, 6), st.integers(0, 10**6))
def test_product_states_have_rank_one(n, p, seed):
    rng = np.random.default_rng(seed)
    a = rng.standard_normal(n) + 1j * rng.standard_normal(n)
    b = rng.standard_normal(p) + 1j * rng.standard_normal(p)
    s = normalize(BipartiteState.product(a, b))
    d = decompose(s)
    assert d.rank == 1
    np.testing.assert_array_equal(d.reconstruct(), s.amplitudes)


@settings(max_examples=40, deadline=None)
@given(st.integers(2, 7), st.integers(1, 4), st.data())
def test_rank_invariant_under_sender_unitary(n, p, data):
    r = data.draw(st.integers(1, min(n, p)))
    seed = data.draw(st.integers(0, 10**6))
    s = random_state(n, p, r, seed)
    U = random_unitary(n, np.random.default_rng(seed + 1))
    moved = BipartiteState.from_matrix(U @ s.as_matrix())
    assert decompose(moved).rank == r
