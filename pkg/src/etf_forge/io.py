"""Plain-text file formats: matrices, Hadamard fixtures, certificates, reports.

Matrix files render every entry with 17 significant digits, which is enough
to round-trip IEEE doubles exactly: write -> read -> write reproduces the
file byte for byte.
"""

import json

import numpy as np

from .errors import EtfError
from .synthesis import Certificate

MATRIX_MAGIC = "ETFMAT"
MATRIX_VERSION = "1"
HADAMARD_MAGIC = "HADAMARD"
HADAMARD_VERSION = "1"

REPORT_COLUMNS = ("d", "status", "m", "j", "k", "source", "coherence", "mu_target", "pass")


def _format_entry(z):
    return f"({z.real:.17g},{z.imag:.17g})"


def _parse_entry(token):
    if not (token.startswith("(") and token.endswith(")")) or token.count(",") != 1:
        raise EtfError("bad_entry", f"malformed entry {token!r}")
    re_s, im_s = token[1:-1].split(",")
    try:
        re, im = float(re_s), float(im_s)
    except ValueError as exc:
        raise EtfError("bad_entry", f"malformed entry {token!r}") from exc
    if not (np.isfinite(re) and np.isfinite(im)):
        raise EtfError("bad_entry", f"non-finite entry {token!r}")
    return complex(re, im)


def write_matrix(path, M):
    M = np.asarray(M, dtype=complex)
    if M.ndim != 2:
        raise EtfError("dim", f"expected a 2-D matrix, got shape {M.shape}")
    rows, cols = M.shape
    lines = [f"{MATRIX_MAGIC} {MATRIX_VERSION} {rows} {cols}"]
    for i in range(rows):
        lines.append(" ".join(_format_entry(z) for z in M[i]))
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("\n".join(lines) + "\n")


def read_matrix(path):
    with open(path, "r", encoding="utf-8") as fh:
        lines = fh.read().splitlines()
    if not lines:
        raise EtfError("bad_header", "empty file")
    header = lines[0].split()
    if len(header) != 4 or header[0] != MATRIX_MAGIC or header[1] != MATRIX_VERSION:
        raise EtfError("bad_header", f"bad header {lines[0]!r}")
    try:
        rows, cols = int(header[2]), int(header[3])
    except ValueError as exc:
        raise EtfError("bad_header", f"bad header {lines[0]!r}") from exc
    if rows < 1 or cols < 1:
        raise EtfError("bad_header", f"bad dimensions {rows}x{cols}")
    body = [ln for ln in lines[1:] if ln.strip()]
    if len(body) != rows:
        raise EtfError("dim_mismatch", f"expected {rows} rows, found {len(body)}")
    M = np.empty((rows, cols), dtype=complex)
    for i, line in enumerate(body):
        tokens = line.split()
        if len(tokens) != cols:
            raise EtfError("dim_mismatch", f"row {i} has {len(tokens)} entries, expected {cols}")
        M[i] = [_parse_entry(tok) for tok in tokens]
    return M


def write_hadamard(path, H):
    H = np.asarray(H, dtype=np.int64)
    m = H.shape[0]
    if H.ndim != 2 or H.shape != (m, m) or np.any(np.abs(H) != 1):
        raise EtfError("dim", "expected a square +-1 matrix")
    lines = [f"{HADAMARD_MAGIC} {HADAMARD_VERSION} {m}"]
    for i in range(m):
        lines.append("".join("+" if v > 0 else "-" for v in H[i]))
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("\n".join(lines) + "\n")


def read_hadamard(path):
    """Parse a sign-matrix file; validity as a skew Hadamard is checked by
    callers, not here."""
    with open(path, "r", encoding="utf-8") as fh:
        lines = fh.read().splitlines()
    if not lines:
        raise EtfError("bad_header", "empty file")
    header = lines[0].split()
    if len(header) != 3 or header[0] != HADAMARD_MAGIC or header[1] != HADAMARD_VERSION:
        raise EtfError("bad_header", f"bad header {lines[0]!r}")
    try:
        m = int(header[2])
    except ValueError as exc:
        raise EtfError("bad_header", f"bad header {lines[0]!r}") from exc
    if m < 1:
        raise EtfError("bad_header", f"bad order {m}")
    body = [ln for ln in lines[1:] if ln.strip()]
    if len(body) != m:
        raise EtfError("dim_mismatch", f"expected {m} rows, found {len(body)}")
    H = np.empty((m, m), dtype=np.int64)
    for i, line in enumerate(body):
        if len(line) != m:
            raise EtfError("dim_mismatch", f"row {i} has {len(line)} characters, expected {m}")
        for jj, ch in enumerate(line):
            if ch == "+":
                H[i, jj] = 1
            elif ch == "-":
                H[i, jj] = -1
            else:
                raise EtfError("bad_entry", f"unexpected character {ch!r} in row {i}")
    return H


def certificate_dict(cert):
    """Certificate as a dict with the fixed key order used everywhere."""
    return {
        "d": cert.d,
        "n": cert.n,
        "mu_target": cert.mu_target,
        "coherence": cert.coherence,
        "equiangularity_dev": cert.equiangularity_dev,
        "tightness_residual": cert.tightness_residual,
        "tolerance": cert.tolerance,
        "pass": cert.passed,
        "provenance": cert.provenance,
    }


def write_certificate_json(path, cert):
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        json.dump(certificate_dict(cert), fh, indent=2)
        fh.write("\n")


def read_certificate_json(path):
    with open(path, "r", encoding="utf-8") as fh:
        data = json.load(fh)
    return Certificate(
        d=data["d"],
        n=data["n"],
        mu_target=data["mu_target"],
        coherence=data["coherence"],
        equiangularity_dev=data["equiangularity_dev"],
        tightness_residual=data["tightness_residual"],
        tolerance=data["tolerance"],
        passed=data["pass"],
        provenance=data.get("provenance", ""),
    )


def validate_certificate(cert):
    """Re-check the pass flag against its defining inequality."""
    expected = (
        cert.coherence <= cert.mu_target + cert.tolerance
        and cert.equiangularity_dev <= cert.tolerance
        and cert.tightness_residual <= cert.tolerance * cert.n
    )
    return cert.passed == expected


def _cell(value):
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return f"{value:.17g}"
    return str(value)


def write_report_tsv(path, rows):
    lines = ["\t".join(REPORT_COLUMNS)]
    for r in rows:
        lines.append(
            "\t".join(
                _cell(v)
                for v in (r.d, r.status, r.m, r.j, r.k, r.source, r.coherence, r.mu_target, r.passed)
            )
        )
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("\n".join(lines) + "\n")
