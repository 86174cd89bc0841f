import numpy as np
import pytest

from etf_forge.errors import EtfError
from etf_forge.linalg import (
    adjoint,
    as_matrix,
    frob_norm,
    hermitian_eigen,
    matmul,
    max_offdiag_abs,
    offdiag_frob,
)

from conftest import random_hermitian


def test_as_matrix_rejects_nonfinite():
    with pytest.raises(EtfError) as err:
        as_matrix([[1.0, np.nan]])
    assert err.value.code == "bad_entry"


def test_matmul_identity():
    M = np.array([[1 + 2j, 3], [0, -1j]])
    assert np.array_equal(matmul(np.eye(2), M), M)


def test_matmul_involution():
    X = np.array([[0.0, 1.0], [1.0, 0.0]])
    assert np.array_equal(matmul(X, X), np.eye(2))


def test_matmul_counting():
    A = np.ones((2, 3))
    B = np.ones((3, 2))
    assert np.array_equal(matmul(A, B), 3.0 * np.ones((2, 2)))


def test_matmul_dim_error():
    with pytest.raises(EtfError) as err:
        matmul(np.ones((2, 3)), np.ones((2, 3)))
    assert err.value.code == "dim"


def test_matmul_associativity(rng):
    for _ in range(5):
        A = rng.standard_normal((4, 5)) + 1j * rng.standard_normal((4, 5))
        B = rng.standard_normal((5, 3)) + 1j * rng.standard_normal((5, 3))
        C = rng.standard_normal((3, 6)) + 1j * rng.standard_normal((3, 6))
        left = matmul(matmul(A, B), C)
        right = matmul(A, matmul(B, C))
        assert frob_norm(left - right) <= 1e-12 * frob_norm(left)


def test_adjoint_conjugates():
    assert np.array_equal(adjoint(np.array([[1j]])), np.array([[-1j]]))


def test_frob_norm_identity():
    assert frob_norm(np.eye(4)) == 2.0


def test_max_offdiag_abs():
    n = 3
    M = np.eye(n) + 0.5 * (np.ones((n, n)) - np.eye(n))
    assert max_offdiag_abs(M) == 0.5


def test_max_offdiag_abs_degenerate():
    with pytest.raises(EtfError) as err:
        max_offdiag_abs(np.array([[2.0]]))
    assert err.value.code == "degenerate"


def test_eigen_identity():
    eig = hermitian_eigen(np.eye(5))
    assert np.allclose(eig.eigenvalues, np.ones(5), atol=0)


def test_eigen_diagonal_sorted_with_permutation_vectors():
    eig = hermitian_eigen(np.diag([3.0, 1.0, 2.0]))
    assert np.array_equal(eig.eigenvalues, [3.0, 2.0, 1.0])
    P = np.abs(eig.eigenvectors)
    assert np.array_equal(P, np.eye(3)[:, [0, 2, 1]])


def test_eigen_zero_matrix():
    eig = hermitian_eigen(np.zeros((3, 3)))
    assert np.array_equal(eig.eigenvalues, np.zeros(3))
    assert np.array_equal(eig.eigenvectors, np.eye(3))


def test_eigen_nonsquare_rejected():
    with pytest.raises(EtfError) as err:
        hermitian_eigen(np.ones((2, 3)))
    assert err.value.code == "dim"


@pytest.mark.parametrize("n", [2, 3, 8, 40, 200])
def test_eigen_reconstruction_and_orthonormality(rng, n):
    M = random_hermitian(rng, n)
    eig = hermitian_eigen(M)
    V, w = eig.eigenvectors, eig.eigenvalues
    scale = n * frob_norm(M)
    assert frob_norm(M @ V - V @ np.diag(w)) <= 1e-10 * scale
    assert frob_norm(V.conj().T @ V - np.eye(n)) <= 1e-10 * n
    assert frob_norm(V @ np.diag(w) @ V.conj().T - M) <= 1e-9 * scale
    # eigenvalues agree with the LAPACK oracle
    ref = np.sort(np.linalg.eigvalsh(M))[::-1]
    assert np.max(np.abs(w - ref)) <= 1e-10 * max(1.0, frob_norm(M))


def test_eigen_trace_matches_eigenvalue_sum(rng):
    M = random_hermitian(rng, 17)
    eig = hermitian_eigen(M)
    assert abs(eig.eigenvalues.sum() - np.real(np.trace(M))) <= 1e-10 * 17 * frob_norm(M)


def test_eigen_descending_order(rng):
    M = random_hermitian(rng, 12)
    w = hermitian_eigen(M).eigenvalues
    assert np.all(np.diff(w) <= 0)


def test_eigen_deterministic(rng):
    M = random_hermitian(rng, 9)
    a = hermitian_eigen(M.copy())
    b = hermitian_eigen(M.copy())
    assert np.array_equal(a.eigenvalues, b.eigenvalues)
    assert np.array_equal(a.eigenvectors, b.eigenvectors)


def test_eigen_real_input_stays_real(rng):
    X = rng.standard_normal((6, 6))
    eig = hermitian_eigen(((X + X.T) / 2).astype(complex))
    assert np.max(np.abs(eig.eigenvectors.imag)) == 0.0


def test_offdiag_frob_no_cancellation():
    # a tiny off-diagonal entry must be measured exactly, not lost to cancellation
    M = np.eye(40) * 7.0
    M[0, 1] = M[1, 0] = 1e-13
    assert abs(offdiag_frob(M) - np.sqrt(2) * 1e-13) < 1e-28
