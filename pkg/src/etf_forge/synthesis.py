"""Frame synthesis and certification.

Signature matrices become explicit unit-norm frames here: Gram assembly,
rank-d factorization through the deterministic eigensolver, Naimark
complements, block doubling, and Welch-bound certificates.
"""

import logging
from dataclasses import dataclass

import numpy as np

from .errors import EtfError
from .hadamard import check_skew_hadamard, core_adjacency
from .linalg import as_matrix, frob_norm, hermitian_eigen
from .signature import (
    SignatureMatrix,
    as_signature,
    doubling_feasible,
    double_signature,
    frame_params,
    strohmer_signature,
    welch_mu,
)

log = logging.getLogger(__name__)

DEFAULT_TOL = 1e-8  # certification tolerance (absolute; tightness scaled by n)
COLUMN_NORM_TOL = 1e-10
RENORM_LIMIT = 1e-9
COMPLEMENT_TOL = 1e-6  # times n, on ||F G*||_F when validating a complement


@dataclass(frozen=True)
class Frame:
    """d x n matrix of unit-norm columns plus a human-readable construction path."""

    d: int
    n: int
    F: np.ndarray
    provenance: str = ""


@dataclass(frozen=True)
class Certificate:
    """Welch-bound verification record for a frame."""

    d: int
    n: int
    mu_target: float
    coherence: float
    equiangularity_dev: float
    tightness_residual: float
    tolerance: float
    passed: bool
    provenance: str = ""


def make_frame(F, provenance=""):
    """Wrap a matrix as a Frame, checking unit column norms."""
    F = as_matrix(F)
    norms = np.linalg.norm(F, axis=0)
    if np.max(np.abs(norms - 1.0)) > COLUMN_NORM_TOL:
        raise EtfError("bad_entry", "frame columns are not unit-norm")
    return Frame(d=F.shape[0], n=F.shape[1], F=F, provenance=provenance)


def _as_frame_matrix(F):
    if isinstance(F, Frame):
        return F.F, F.provenance
    return as_matrix(F), ""


def coherence_of(F):
    """Largest off-diagonal Gram modulus; 0 for a single column."""
    M, _ = _as_frame_matrix(F)
    if M.shape[1] < 2:
        return 0.0
    G = M.conj().T @ M
    return float(np.max(np.abs(G[~np.eye(M.shape[1], dtype=bool)])))


def verify_etf(F, tolerance=DEFAULT_TOL):
    """Certify a frame against the Welch bound.

    pass requires coherence <= mu + tol, max | |g_ij| - mu | <= tol, and
    ||F F* - (n/d) I||_F <= tol * n.
    """
    M, provenance = _as_frame_matrix(F)
    d, n = M.shape
    mu = welch_mu(d, n)
    G = M.conj().T @ M
    if n >= 2:
        off = np.abs(G[~np.eye(n, dtype=bool)])
        coherence = float(np.max(off))
        equi_dev = float(np.max(np.abs(off - mu)))
    else:
        coherence = 0.0
        equi_dev = 0.0
    tightness = frob_norm(M @ M.conj().T - (n / d) * np.eye(d))
    passed = coherence <= mu + tolerance and equi_dev <= tolerance and tightness <= tolerance * n
    return Certificate(
        d=d,
        n=n,
        mu_target=mu,
        coherence=coherence,
        equiangularity_dev=equi_dev,
        tightness_residual=tightness,
        tolerance=tolerance,
        passed=bool(passed),
        provenance=provenance,
    )


def gram_from_signature(sig):
    """Gram matrix I + mu*S of the ETF encoded by a signature matrix."""
    if not isinstance(sig, SignatureMatrix):
        sig = as_signature(sig)
    params = frame_params(sig.d, sig.n)
    return np.eye(sig.n) + params.mu * sig.S


def factor_gram(G, d, provenance=""):
    """Factor an (approximately) rank-d scaled-projection Gram into a frame.

    The Gram of a d x n ETF has eigenvalues n/d (d times) and 0 (n-d times);
    the frame is sqrt(n/d) times the adjoint of the top-d eigenvector block,
    with a final per-column renormalization that must stay below 1e-9.
    """
    G = as_matrix(G)
    n = G.shape[0]
    if G.shape[0] != G.shape[1]:
        raise EtfError("dim", f"Gram must be square, got {G.shape}")
    if not (1 <= d <= n):
        raise EtfError("dim", f"need 1 <= d <= n, got d={d}, n={n}")
    eig = hermitian_eigen(G)
    scale = n / d
    if d < n and eig.eigenvalues[d] > 1e-6 * scale:
        raise EtfError("rank_exceeds_d", f"eigenvalue {d + 1} is {eig.eigenvalues[d]:.3e}")
    if eig.eigenvalues[-1] < -1e-8 * scale:
        raise EtfError("not_psd", f"most negative eigenvalue {eig.eigenvalues[-1]:.3e}")
    F = np.sqrt(scale) * eig.eigenvectors[:, :d].conj().T
    norms = np.linalg.norm(F, axis=0)
    correction = float(np.max(np.abs(norms - 1.0)))
    log.debug("factor_gram column renormalization correction: %.3e", correction)
    if correction > RENORM_LIMIT:
        raise AssertionError(f"column renormalization {correction:.3e} exceeds {RENORM_LIMIT}")
    F = F / norms
    residual = frob_norm(F.conj().T @ F - G)
    if residual > 1e-8 * n:
        raise AssertionError(f"factorization residual {residual:.3e} too large")
    return Frame(d=d, n=n, F=F, provenance=provenance)


def frame_signature(F):
    """(F*F - I) / mu, the signature matrix realized by a frame."""
    M, _ = _as_frame_matrix(F)
    d, n = M.shape
    mu = welch_mu(d, n)
    if mu == 0.0:
        raise EtfError("dim", f"no signature for d={d}, n={n}")
    return (M.conj().T @ M - np.eye(n)) / mu


def naimark_complement(F, tolerance=DEFAULT_TOL):
    """(n-d) x n ETF with Gram I - nu*S, cross-orthogonal to F."""
    if not isinstance(F, Frame):
        F = make_frame(F)
    cert = verify_etf(F, tolerance)
    if not cert.passed:
        raise EtfError("not_etf", "input frame failed certification")
    params = frame_params(F.d, F.n)
    S = frame_signature(F)
    G = factor_gram(
        np.eye(F.n) - params.nu * S,
        F.n - F.d,
        provenance=f"naimark({F.provenance})" if F.provenance else "naimark",
    )
    cross = frob_norm(F.F @ G.F.conj().T)
    if cross > 1e-8 * F.n:
        raise AssertionError(f"complement cross-Gram residual {cross:.3e}")
    return G


@dataclass(frozen=True)
class DoublingConstants:
    """Block scalars (a, b, w, z) of the frame-level doubling."""

    a: float
    b: float
    w: complex
    z: complex


def doubling_constants(d, n, epsilon=1):
    """Scalars for doubling a d x n ETF into an n x 2n ETF.

    a = sqrt((nu+lam)/(mu+nu)), b = sqrt((mu-lam)/(mu+nu)),
    w = lam*(n-d + mu*beta*d)/(a*mu*n), z = -lam*(d - nu*beta*(n-d))/(b*nu*n),
    where beta = -c + epsilon*i*sqrt(1-c^2).
    """
    if not doubling_feasible(d, n):
        raise EtfError("infeasible_c", f"(d={d}, n={n}) is outside the doubling window")
    p = frame_params(d, n)
    if p.mu <= p.lam:
        raise EtfError("b_nonpositive", f"mu={p.mu} <= lam={p.lam}")
    beta = complex(-p.c, epsilon * np.sqrt(max(0.0, 1.0 - p.c * p.c)))
    a = float(np.sqrt((p.nu + p.lam) / (p.mu + p.nu)))
    b = float(np.sqrt((p.mu - p.lam) / (p.mu + p.nu)))
    w = p.lam * (n - d + p.mu * beta * d) / (a * p.mu * n)
    z = -p.lam * (d - p.nu * beta * (n - d)) / (b * p.nu * n)
    if abs(a * a + b * b - 1.0) > 1e-12 or abs(a * a * p.mu - b * b * p.nu - p.lam) > 1e-12:
        raise AssertionError("doubling constant identities violated")
    return DoublingConstants(a=a, b=b, w=complex(w), z=complex(z))


def double_etf(F, G, epsilon=1):
    """Double a d x n ETF F with Naimark complement G into an n x 2n ETF.

    The result [[aF, wF], [bG, zG]] attains coherence 1/sqrt(2n-1) and
    realizes the block doubling of F's signature matrix.
    """
    if not isinstance(F, Frame):
        F = make_frame(F)
    if not isinstance(G, Frame):
        G = make_frame(G)
    d, n = F.d, F.n
    if G.n != n or G.d != n - d:
        raise EtfError("dim", f"complement shape {G.d}x{G.n} does not match {d}x{n}")
    cross = frob_norm(F.F @ G.F.conj().T)
    if cross > COMPLEMENT_TOL * n:
        raise EtfError("not_complement", f"cross-Gram residual {cross:.3e}")
    if not doubling_feasible(d, n):
        raise EtfError("infeasible_c", f"(d={d}, n={n}) is outside the doubling window")
    k = doubling_constants(d, n, epsilon)
    Phi = np.block([[k.a * F.F, k.w * F.F], [k.b * G.F, k.z * G.F]])
    provenance = f"double(eps={epsilon:+d}; {F.provenance or 'F'}; {G.provenance or 'G'})"
    doubled = Frame(d=n, n=2 * n, F=Phi, provenance=provenance)
    cert = verify_etf(doubled)
    if not cert.passed:
        raise AssertionError(f"doubled frame failed certification: {cert}")
    sigma = double_signature(as_signature(frame_signature(F)), epsilon)
    dev = float(np.max(np.abs(frame_signature(doubled) - sigma.S)))
    if dev > 1e-8:
        raise AssertionError(f"doubled signature deviates entrywise by {dev:.3e}")
    return doubled


def build_skew_etf(H):
    """Full pipeline from a skew Hadamard of order m to an (m-1) x 2(m-1) ETF.

    normalize -> core adjacency -> core signature -> block doubling ->
    Gram -> rank-d factorization, certified before returning.
    """
    H = check_skew_hadamard(H)
    m = H.shape[0]
    A = core_adjacency(H)  # raises order_too_small for m <= 2
    sig = strohmer_signature(A, m)
    doubled = double_signature(sig, epsilon=1)
    F = factor_gram(
        gram_from_signature(doubled),
        doubled.d,
        provenance=f"skew_etf(m={m})",
    )
    cert = verify_etf(F)
    if not cert.passed:
        raise EtfError("certification_failed", f"pipeline output failed: {cert}")
    return F
