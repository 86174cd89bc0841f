"""Dense complex matrix helpers and a deterministic Hermitian eigensolver.

Matrices are plain numpy arrays of complex128. The eigensolver is a cyclic
Jacobi iteration with a fixed round-robin sweep order, so identical input
bits always produce identical output bits (no randomized pivoting, no
platform-dependent branching).
"""

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import EtfError

# Convergence: off-diagonal Frobenius mass relative to ||M||_F, with an
# absolute fallback for the zero matrix.
JACOBI_REL_TOL = 1e-14
JACOBI_ABS_TOL = 1e-14
JACOBI_MAX_SWEEPS = 100


def as_matrix(entries):
    """Validate and return a 2-D complex128 matrix.

    Rejects empty shapes and non-finite entries.
    """
    A = np.asarray(entries, dtype=complex)
    if A.ndim != 2 or A.shape[0] < 1 or A.shape[1] < 1:
        raise EtfError("dim", f"expected a non-empty 2-D matrix, got shape {A.shape}")
    if not np.all(np.isfinite(A)):
        raise EtfError("bad_entry", "matrix contains NaN or Inf")
    return A


def matmul(A, B):
    A = as_matrix(A)
    B = as_matrix(B)
    if A.shape[1] != B.shape[0]:
        raise EtfError("dim", f"cannot multiply {A.shape} by {B.shape}")
    return A @ B


def adjoint(A):
    """Conjugate transpose."""
    return as_matrix(A).conj().T


def frob_norm(A):
    return float(np.linalg.norm(as_matrix(A)))


def max_offdiag_abs(A):
    """Largest |a_ij| over i != j."""
    A = as_matrix(A)
    if A.shape == (1, 1):
        raise EtfError("degenerate", "no off-diagonal entries in a 1x1 matrix")
    mask = ~np.eye(A.shape[0], A.shape[1], dtype=bool)
    return float(np.max(np.abs(A[mask])))


def offdiag_frob(A):
    """Frobenius norm of the off-diagonal part (square input).

    Computed on a diagonal-zeroed copy; subtracting squared norms would
    cancel catastrophically once the off-diagonal mass is near rounding.
    """
    B = np.array(A, copy=True)
    np.fill_diagonal(B, 0.0)
    return float(np.linalg.norm(B))


@dataclass(frozen=True)
class HermitianEigen:
    """Eigendecomposition with eigenvalues sorted descending.

    eigenvectors[:, k] is the unit eigenvector paired with eigenvalues[k];
    ties keep the order in which the diagonal entries emerged.
    """

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray


@lru_cache(maxsize=None)
def _round_robin_rounds(n):
    """Fixed round-robin pairing of {0..n-1}: a tuple of rounds, each an array
    of disjoint (p, q) pairs with p < q, covering every pair exactly once."""
    m = n if n % 2 == 0 else n + 1
    players = list(range(m))
    rounds = []
    for _ in range(m - 1):
        pairs = sorted(
            (min(a, b), max(a, b))
            for a, b in ((players[i], players[m - 1 - i]) for i in range(m // 2))
            if a < n and b < n
        )
        if pairs:
            rounds.append(np.array(pairs, dtype=np.intp))
        players = [players[0], players[-1]] + players[1:-1]
    return tuple(rounds)


def _apply_round(A, V, pairs):
    """One round of simultaneous Jacobi rotations on disjoint pivot pairs."""
    p, q = pairs[:, 0], pairs[:, 1]
    apq = A[p, q]
    r = np.abs(apq)
    active = r > 0.0
    safe_r = np.where(active, r, 1.0)
    # Factor out the pivot phase, then rotate the real 2x2 remainder.
    u = np.where(active, apq / safe_r, 1.0 + 0.0j)
    tau = np.where(active, (A[q, q].real - A[p, p].real) / (2.0 * safe_r), 0.0)
    t = np.where(active, np.sign(tau) / (np.abs(tau) + np.sqrt(1.0 + tau * tau)), 0.0)
    t = np.where(active & (tau == 0.0), 1.0, t)
    c = 1.0 / np.sqrt(1.0 + t * t)
    s = t * c
    cu = np.conj(u)
    P, Q = A[:, p], A[:, q]
    A[:, p] = c * P - (s * cu) * Q
    A[:, q] = s * P + (c * cu) * Q
    P, Q = A[p, :], A[q, :]
    A[p, :] = c[:, None] * P - (s * u)[:, None] * Q
    A[q, :] = s[:, None] * P + (c * u)[:, None] * Q
    P, Q = V[:, p], V[:, q]
    V[:, p] = c * P - (s * cu) * Q
    V[:, q] = s * P + (c * cu) * Q


def hermitian_eigen(M, max_sweeps=JACOBI_MAX_SWEEPS):
    """Eigendecomposition of a Hermitian matrix by cyclic Jacobi rotations.

    The input is symmetrized as (M + M*)/2 before iterating, so slightly
    non-Hermitian inputs are tolerated. Raises EtfError("no_convergence")
    if the off-diagonal mass has not dropped below 1e-14 * ||M||_F after
    `max_sweeps` full sweeps.
    """
    M = as_matrix(M)
    n, m = M.shape
    if n != m:
        raise EtfError("dim", f"eigendecomposition needs a square matrix, got {M.shape}")
    A = np.array((M + M.conj().T) / 2.0, dtype=complex)
    V = np.eye(n, dtype=complex)
    norm = np.linalg.norm(A)
    tol = JACOBI_REL_TOL * norm if norm > 0.0 else JACOBI_ABS_TOL
    converged = n == 1 or offdiag_frob(A) <= tol
    for _ in range(max_sweeps):
        if converged:
            break
        for pairs in _round_robin_rounds(n):
            _apply_round(A, V, pairs)
        converged = offdiag_frob(A) <= tol
    if not converged:
        raise EtfError("no_convergence", f"Jacobi did not converge in {max_sweeps} sweeps")
    evals = np.real(np.diagonal(A)).copy()
    order = np.argsort(-evals, kind="stable")
    return HermitianEigen(eigenvalues=evals[order], eigenvectors=V[:, order])
