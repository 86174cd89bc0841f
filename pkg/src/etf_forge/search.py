"""Alternating projections search for ETFs at sizes without an algebraic route.

The iteration alternates between the set of unit-diagonal Gram matrices with
off-diagonal moduli capped at the Welch bound and the set of tight-frame
Grams (rank-d PSD with all nonzero eigenvalues n/d, hence trace n). Restarts
are independent given their sub-seeds, so a run is reproducible bit-for-bit
from its config, serial or parallel.
"""

import logging
import os
from concurrent.futures import ProcessPoolExecutor
from concurrent.futures.process import BrokenProcessPool
from dataclasses import dataclass, replace

import numpy as np

from .errors import EtfError
from .linalg import hermitian_eigen
from .signature import welch_mu
from .synthesis import Frame, verify_etf

log = logging.getLogger(__name__)

SEARCH_CERT_TOL = 1e-4  # looser certification for numerically found frames


@dataclass(frozen=True)
class SearchConfig:
    d: int
    n: int
    max_iters: int = 5000
    restarts: int = 20
    seed: int = 0
    target_coherence: float | None = None  # None means the Welch bound
    stop_slack: float = 1e-8

    def __post_init__(self):
        if not (1 <= self.d < self.n):
            raise EtfError("dim", f"need 1 <= d < n, got d={self.d}, n={self.n}")
        if self.max_iters < 1 or self.restarts < 1:
            raise EtfError("dim", "max_iters and restarts must be positive")
        if not (0 <= self.seed < 2**64):
            raise EtfError("dim", "seed must fit in 64 bits")

    @property
    def target(self):
        if self.target_coherence is not None:
            return self.target_coherence
        return welch_mu(self.d, self.n)


@dataclass(frozen=True)
class SearchResult:
    best_frame: Frame
    best_coherence: float
    iterations_used: int
    restart_index: int
    converged: bool


def structural_projection(G, mu):
    """Nearest Gram with unit diagonal and off-diagonal moduli at most mu.

    Entries above the cap are shrunk to modulus mu keeping their phase;
    entries already inside the cap are left alone.
    """
    out = np.array(G, dtype=complex)
    absG = np.abs(out)
    over = absG > mu
    np.fill_diagonal(over, False)
    out[over] *= mu / absG[over]
    np.fill_diagonal(out, 1.0)
    return out


def spectral_projection(G, d, n):
    """Project onto Gram matrices of d-dimensional tight frames.

    Keeps the top-d eigenspace and sets every kept eigenvalue to n/d, so the
    output is PSD with rank d and trace exactly n. Returns (eigenvalues,
    eigenvectors) restricted to the rank-d support.
    """
    eig = hermitian_eigen(G)
    return np.full(d, n / d), eig.eigenvectors[:, :d]


def _normalize_columns(F):
    norms = np.linalg.norm(F, axis=0)
    return F / np.maximum(norms, 1e-300)


def _gram_coherence(F):
    G = F.conj().T @ F
    n = G.shape[0]
    return float(np.max(np.abs(G[~np.eye(n, dtype=bool)]))), G


def run_restart(cfg, restart_index):
    """One restart of the alternating projection loop.

    Per iteration: Gram of the current frame, structural projection,
    spectral projection, refactor into a column-normalized frame, then the
    early-stop check on the new frame's coherence. Returns
    (best_coherence, best_F, iterations_used, converged); abandons with
    coherence +inf if the eigensolver fails mid-iteration.
    """
    d, n = cfg.d, cfg.n
    mu = welch_mu(d, n)
    stop_at = cfg.target + cfg.stop_slack
    rng = np.random.default_rng(cfg.seed ^ restart_index)
    X = rng.standard_normal((2, d, n))
    F = _normalize_columns(X[0] + 1j * X[1])
    best_coh, best_F = _gram_coherence(F)[0], F
    iterations = 0
    for it in range(1, cfg.max_iters + 1):
        iterations = it
        G = structural_projection(F.conj().T @ F, mu)
        try:
            evals, vecs = spectral_projection(G, d, n)
        except EtfError as exc:
            # abandoned, not fatal: keep the best iterate seen so far
            log.warning("restart %d abandoned at iteration %d: %s", restart_index, it, exc)
            return float(best_coh), best_F, it, False
        F = _normalize_columns(np.sqrt(evals)[:, None] * vecs.conj().T)
        coh, _ = _gram_coherence(F)
        if coh < best_coh:
            best_coh, best_F = coh, F
        if coh <= stop_at:
            break
    return float(best_coh), best_F, iterations, bool(best_coh <= stop_at)


def _default_threads():
    env = os.environ.get("ETF_FORGE_THREADS", "")
    if env.strip():
        return max(1, int(env))
    return os.cpu_count() or 1


def select_best(coherences):
    """Winning restart index: lowest coherence, ties to the lower index."""
    return min(range(len(coherences)), key=lambda r: (coherences[r], r))


def alternating_projections(cfg, threads=None):
    """Best frame over independent restarts.

    Restart r derives its RNG stream from seed XOR r. The winner is the
    restart minimizing (coherence, restart index), which makes parallel and
    serial execution agree exactly on the selected result.
    """
    if threads is None:
        threads = _default_threads()
    indices = range(cfg.restarts)
    if threads > 1 and cfg.restarts > 1:
        try:
            with ProcessPoolExecutor(max_workers=min(threads, cfg.restarts)) as pool:
                outcomes = list(pool.map(run_restart, [cfg] * cfg.restarts, indices))
        except (OSError, BrokenProcessPool) as exc:  # no process spawning here; run serially
            log.warning("parallel restarts unavailable (%s); running serially", exc)
            outcomes = [run_restart(cfg, r) for r in indices]
    else:
        outcomes = [run_restart(cfg, r) for r in indices]
    best_r = select_best([o[0] for o in outcomes])
    coh, F, iters, converged = outcomes[best_r]
    provenance = (
        f"ap_search(d={cfg.d}, n={cfg.n}, seed={cfg.seed}, restart={best_r}, "
        f"iters={iters}, restarts={cfg.restarts}, max_iters={cfg.max_iters})"
    )
    frame = Frame(d=cfg.d, n=cfg.n, F=F, provenance=provenance)
    return SearchResult(
        best_frame=frame,
        best_coherence=coh,
        iterations_used=iters,
        restart_index=best_r,
        converged=converged,
    )


def search_report(result, tolerance=SEARCH_CERT_TOL):
    """Certificate for a search result, with the search metadata attached."""
    cert = verify_etf(result.best_frame, tolerance)
    meta = (
        f"{result.best_frame.provenance}; converged={result.converged}, "
        f"best_coherence={result.best_coherence:.12g}"
    )
    return replace(cert, provenance=meta)
