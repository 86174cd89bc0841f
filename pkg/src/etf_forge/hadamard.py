"""Skew Hadamard matrices: Paley generation, doubling, normalization, cores.

Everything here is exact 64-bit integer arithmetic; checks are equalities,
never tolerances. A skew Hadamard H of order m satisfies H^T H = m*I and
H + H^T = 2*I, i.e. H = C + I with C skew-symmetric.
"""

import numpy as np

from .errors import EtfError


def is_prime(q):
    """Deterministic trial division; adequate for the orders used here."""
    if q < 2:
        return False
    if q % 2 == 0:
        return q == 2
    f = 3
    while f * f <= q:
        if q % f == 0:
            return False
        f += 2
    return True


def is_skew_hadamard(H):
    """Exact integer check of both defining identities."""
    H = np.asarray(H)
    if H.ndim != 2 or H.shape[0] != H.shape[1] or H.shape[0] < 1:
        return False
    if not np.issubdtype(H.dtype, np.integer):
        return False
    if not np.all(np.abs(H) == 1):
        return False
    m = H.shape[0]
    eye = np.eye(m, dtype=np.int64)
    return np.array_equal(H.T @ H, m * eye) and np.array_equal(H + H.T, 2 * eye)


def check_skew_hadamard(H):
    H = np.asarray(H, dtype=np.int64)
    if not is_skew_hadamard(H):
        raise EtfError("not_skew_hadamard", "input fails the skew Hadamard identities")
    return H


def paley_skew_hadamard(q):
    """Skew Hadamard of order q+1 from quadratic residues mod a prime q = 3 (mod 4).

    Rows and columns are indexed by {inf} + Z_q with the inf row all +1, so
    the result is already normalized.
    """
    if q < 2 or not is_prime(q):
        raise EtfError("not_prime", f"q={q} is not prime")
    if q % 4 != 3:
        raise EtfError("wrong_residue", f"q={q} is not 3 mod 4")
    chi = -np.ones(q, dtype=np.int64)
    chi[(np.arange(1, q, dtype=np.int64) ** 2) % q] = 1
    m = q + 1
    H = np.ones((m, m), dtype=np.int64)
    diff = (np.arange(q)[None, :] - np.arange(q)[:, None]) % q  # y - x mod q
    H[1:, 1:] = chi[diff]
    H[1:, 0] = -1
    np.fill_diagonal(H, 1)
    return H


def double_hadamard(H):
    """Order-doubling: [[C+I, C+I], [C-I, -C+I]] for H = C + I."""
    H = check_skew_hadamard(H)
    m = H.shape[0]
    eye = np.eye(m, dtype=np.int64)
    C = H - eye
    return np.block([[C + eye, C + eye], [C - eye, -C + eye]])


def normalize_hadamard(H):
    """Conjugate by D = diag(first row) so the top row becomes all +1.

    Skewness is preserved, and the first column below the corner is all -1.
    Idempotent: normalizing a normalized matrix is the identity map.
    """
    H = check_skew_hadamard(H)
    d = H[0, :]
    return d[:, None] * H * d[None, :]


def core_adjacency(H):
    """0/1 matrix marking the off-diagonal +1 positions in the normalized core.

    The result A is a tournament (A + A^T + I = J) in which every vertex has
    out-degree (n-1)/2, with n = order - 1.
    """
    H = check_skew_hadamard(H)
    m = H.shape[0]
    if m <= 2:
        raise EtfError("order_too_small", f"core adjacency needs order > 2, got {m}")
    B = normalize_hadamard(H)[1:, 1:]
    A = (B > 0).astype(np.int64)
    np.fill_diagonal(A, 0)
    return A


def is_tournament_core(A):
    """True iff A is a 0/1 zero-diagonal matrix with A + A^T + I = J and
    constant row sums (n-1)/2."""
    A = np.asarray(A)
    if A.ndim != 2 or A.shape[0] != A.shape[1] or A.shape[0] < 1:
        return False
    if not np.issubdtype(A.dtype, np.integer):
        return False
    n = A.shape[0]
    if np.any((A != 0) & (A != 1)) or np.any(np.diagonal(A) != 0):
        return False
    J = np.ones((n, n), dtype=np.int64)
    if not np.array_equal(A + A.T + np.eye(n, dtype=np.int64), J):
        return False
    return bool(np.all(A.sum(axis=1) * 2 == n - 1))


def association_check(A):
    """Exact check of the adjacency-algebra relations of a skew Hadamard core.

    With n = 3 (mod 4):

        A A^T = A^T A = ((n-1)/2) I + ((n-3)/4) (A + A^T)
        A^2   = ((n-3)/4) A + ((n+1)/4) A^T

    Note the identity coefficient (n-1)/2 and the A^T coefficient (n+1)/4:
    these are forced by trace counting (tr(A A^T) = n(n-1)/2) and by the
    3-cycle tournament, and they are what doubly regular tournaments satisfy.
    """
    A = np.asarray(A, dtype=np.int64)
    n = A.shape[0]
    if n % 4 != 3:
        raise EtfError("wrong_residue", f"core order n={n} is not 3 mod 4")
    if not is_tournament_core(A):
        return False
    eye = np.eye(n, dtype=np.int64)
    # integer-exact: 4*coefficients avoids any division
    lhs = 4 * (A @ A.T)
    rhs = 2 * (n - 1) * eye + (n - 3) * (A + A.T)
    if not np.array_equal(lhs, rhs):
        return False
    if not np.array_equal(4 * (A.T @ A), rhs):
        return False
    return np.array_equal(4 * (A @ A), (n - 3) * A + (n + 1) * A.T)
