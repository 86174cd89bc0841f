"""Signature matrix algebra: scalar parameters, constructors, doubling, checks.

A signature matrix S of a d x n ETF is Hermitian with zero diagonal and
unimodular off-diagonal entries, and satisfies the quadratic relation

    S^2 = c S + (n-1) I,   c = (n - 2d) sqrt((n-1) / (d (n-d))).

All constructors funnel through verify_signature, so c and d are always
recovered from the matrix data rather than trusted from metadata.
"""

from dataclasses import dataclass

import numpy as np

from .errors import EtfError
from .hadamard import check_skew_hadamard, is_tournament_core, normalize_hadamard
from .linalg import as_matrix, frob_norm

QUADRATIC_TOL = 1e-9  # times n, on ||S^2 - cS - (n-1)I||_F
ENTRY_TOL = 1e-10  # on hermiticity, diagonal, unimodularity
D_INTEGRALITY_TOL = 1e-6
FEASIBLE_SLACK = 1e-14  # on |c| <= 1


def welch_mu(d, n):
    """Coherence lower bound for n unit-norm vectors in dimension d."""
    if n <= d or n < 2:
        return 0.0
    return float(np.sqrt((n - d) / (d * (n - 1))))


@dataclass(frozen=True)
class FrameParams:
    """Scalar parameters of a d x n ETF and of its doubling."""

    d: int
    n: int
    mu: float  # Welch bound, off-diagonal Gram modulus
    nu: float  # complement Gram modulus
    c: float  # coefficient in the quadratic relation
    lam: float  # Welch bound of the doubled n x 2n frame, 1/sqrt(2n-1)


def frame_params(d, n):
    if not (1 <= d < n):
        raise EtfError("underdetermined", f"need 1 <= d < n, got d={d}, n={n}")
    mu = welch_mu(d, n)
    nu = float(np.sqrt(d / ((n - d) * (n - 1))))
    c = float((n - 2 * d) * np.sqrt((n - 1) / (d * (n - d))))
    # independent recomputation: c = 1/nu - 1/mu
    c_alt = 1.0 / nu - 1.0 / mu
    if abs(c - c_alt) > 1e-14 * max(1.0, abs(c)):
        raise AssertionError(f"c recomputation mismatch: {c} vs {c_alt}")
    return FrameParams(d=d, n=n, mu=mu, nu=nu, c=c, lam=float(1.0 / np.sqrt(2 * n - 1)))


def doubling_feasible(d, n):
    """True iff the doubling applies, i.e. |c| <= 1 (boundary included).

    Equivalently, n/d - 2 lies in the window
    [-(sqrt(4n-3)-1)/(2(n-1)), (sqrt(4n-3)+1)/(2(n-1))]; both tests are
    evaluated and must agree.
    """
    params = frame_params(d, n)
    by_c = abs(params.c) <= 1.0 + FEASIBLE_SLACK
    t = n / d - 2.0
    root = np.sqrt(4.0 * n - 3.0)
    lo = -(root - 1.0) / (2.0 * (n - 1.0))
    hi = (root + 1.0) / (2.0 * (n - 1.0))
    slack = 1e-12
    by_window = (lo - slack) <= t <= (hi + slack)
    if by_c != by_window:
        raise AssertionError(f"feasibility tests disagree at (d={d}, n={n}): c={params.c}, t={t}")
    return by_c


@dataclass(frozen=True)
class DoublingScalars:
    """Unimodular scalars used by the doubling and the core construction."""

    epsilon: int
    beta: complex
    alpha: complex | None = None


def alpha_for_order(m):
    """Off-diagonal phase for cores of a skew Hadamard of order m."""
    return complex(-1.0 / np.sqrt(m), np.sqrt(1.0 - 1.0 / m))


def doubling_scalars(c, epsilon, m=None):
    if epsilon not in (1, -1):
        raise ValueError(f"epsilon must be +1 or -1, got {epsilon}")
    beta = complex(-c, epsilon * np.sqrt(max(0.0, 1.0 - c * c)))
    alpha = alpha_for_order(m) if m is not None else None
    if abs(abs(beta) - 1.0) > 1e-14 or abs(beta.real + c) > 1e-14:
        raise AssertionError(f"beta invariant violated: beta={beta}, c={c}")
    if alpha is not None and abs(abs(alpha) - 1.0) > 1e-14:
        raise AssertionError(f"alpha invariant violated: alpha={alpha}")
    return DoublingScalars(epsilon=epsilon, beta=beta, alpha=alpha)


@dataclass(frozen=True)
class SignatureMatrix:
    """A verified signature matrix with its recovered parameters."""

    n: int
    S: np.ndarray
    c: float
    d: int


def verify_signature(S):
    """Check the signature-matrix conditions and recover (d, n, c).

    c is recovered as the least-squares coefficient tr(S^3) / ||S||_F^2 and
    d by inverting the quadratic-relation identity; d must land within
    1e-6 of an integer in [1, n-1].
    """
    S = as_matrix(S)
    n = S.shape[0]
    if S.shape[0] != S.shape[1] or n < 2:
        raise EtfError("dim", f"signature matrix must be square of order >= 2, got {S.shape}")
    if frob_norm(S - S.conj().T) > ENTRY_TOL * n:
        raise EtfError("not_hermitian")
    if np.max(np.abs(np.diagonal(S))) > ENTRY_TOL:
        raise EtfError("bad_diagonal")
    off = np.abs(S[~np.eye(n, dtype=bool)])
    if np.max(np.abs(off - 1.0)) > ENTRY_TOL:
        raise EtfError("not_unimodular")
    S2 = S @ S
    c = float(np.real(np.trace(S2 @ S)) / frob_norm(S) ** 2)
    residual = frob_norm(S2 - c * S - (n - 1) * np.eye(n))
    if residual > QUADRATIC_TOL * n:
        raise EtfError("no_quadratic_relation", f"residual {residual:.3e} at n={n}")
    x = n * n * (n - 1) / (c * c + 4.0 * (n - 1))
    disc = np.sqrt(max(n * n - 4.0 * x, 0.0))
    d_real = (n - disc) / 2.0 if c > 0 else (n + disc) / 2.0
    d = round(d_real)
    if abs(d_real - d) > D_INTEGRALITY_TOL or not (1 <= d <= n - 1):
        raise EtfError("nonintegral_d", f"recovered d = {d_real}")
    return d, n, c


def as_signature(S):
    """Wrap a raw matrix as a verified SignatureMatrix."""
    d, n, c = verify_signature(S)
    return SignatureMatrix(n=n, S=as_matrix(S), c=c, d=d)


def strohmer_signature(A, m):
    """Signature matrix alpha*A + conj(alpha)*A^T from a core adjacency matrix.

    For a core of a skew Hadamard of order m = n+1 this yields the signature
    of an (n-1)/2 x n ETF with c = 2/sqrt(m).
    """
    A = np.asarray(A, dtype=np.int64)
    n = A.shape[0]
    if A.shape != (n, n) or n != m - 1 or n < 3:
        raise EtfError("not_signature", f"core of order {A.shape} does not match m={m}")
    alpha = alpha_for_order(m)
    S = alpha * A + np.conj(alpha) * A.T
    try:
        sig = as_signature(S)
    except EtfError as exc:
        raise EtfError("not_signature", f"core failed verification ({exc.code})") from exc
    if sig.d != (n - 1) // 2:
        raise EtfError("not_signature", f"unexpected recovered d={sig.d} for n={n}")
    return sig


def conference_signature(H):
    """Signature matrix i*(H_norm - I) of an m/2 x m ETF from a skew Hadamard."""
    H = check_skew_hadamard(H)
    m = H.shape[0]
    if m < 2:
        raise EtfError("not_skew_hadamard", "order must be at least 2")
    C = normalize_hadamard(H) - np.eye(m, dtype=np.int64)
    sig = as_signature(1j * C.astype(complex))
    if sig.d != m // 2 or abs(sig.c) > 1e-12:
        raise EtfError("not_skew_hadamard", f"conference check failed (d={sig.d}, c={sig.c})")
    return sig


def double_signature(sig, epsilon=1):
    """Block doubling of a signature matrix.

    Produces the 2n x 2n signature [[S, S + beta*I], [S + conj(beta)*I, -S]]
    with beta = -c + epsilon*i*sqrt(1 - c^2); it satisfies the quadratic
    relation with c = 0, so the doubled ETF has size n x 2n.
    """
    if not isinstance(sig, SignatureMatrix):
        sig = as_signature(sig)
    if abs(sig.c) > 1.0 + FEASIBLE_SLACK:
        raise EtfError("infeasible_c", f"|c| = {abs(sig.c)} exceeds 1")
    beta = doubling_scalars(sig.c, epsilon).beta
    eye = np.eye(sig.n)
    S = sig.S
    Sigma = np.block([[S, S + beta * eye], [S + np.conj(beta) * eye, -S]])
    doubled = as_signature(Sigma)
    if doubled.d != sig.n or abs(doubled.c) > 1e-10:
        raise AssertionError(f"doubled signature off-contract: d={doubled.d}, c={doubled.c}")
    return doubled


def idempotent_check(A):
    """Spectral-idempotent test for a core adjacency matrix.

    Builds E = z*A + conj(z)*A^T + (d/n)*I with z = -1/(2n) + i*sqrt(n)/(2n)
    and d = (n-1)/2, then requires E^2 = E and E*J = 0 numerically.
    """
    A = np.asarray(A, dtype=np.int64)
    n = A.shape[0]
    if n % 4 != 3:
        raise EtfError("wrong_residue", f"core order n={n} is not 3 mod 4")
    if not is_tournament_core(A):
        return False
    z = complex(-1.0 / (2 * n), np.sqrt(n) / (2 * n))
    d = (n - 1) // 2
    E = z * A + np.conj(z) * A.T + (d / n) * np.eye(n)
    if frob_norm(E @ E - E) > 1e-10 * n:
        return False
    return frob_norm(E @ np.ones((n, n))) <= 1e-10 * n
