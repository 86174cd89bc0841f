"""Command-line interface.

Machine-readable key=value lines go to stdout; diagnostics go to stderr.
Exit codes: 0 success/pass, 1 verification failure, 2 usage or I/O error.
"""

import argparse
import logging
import os
import sys
from dataclasses import replace

from . import catalog, io, plots, search, synthesis
from .errors import EtfError
from .hadamard import (
    check_skew_hadamard,
    core_adjacency,
    double_hadamard,
    is_skew_hadamard,
    paley_skew_hadamard,
)
from .signature import as_signature, conference_signature, double_signature, strohmer_signature
from .synthesis import factor_gram, gram_from_signature, make_frame, verify_etf

log = logging.getLogger(__name__)


def _emit(**kv):
    for key, value in kv.items():
        if isinstance(value, bool):
            value = "true" if value else "false"
        elif isinstance(value, float):
            value = f"{value:.17g}"
        print(f"{key}={value}")


def _print_certificate(cert):
    _emit(
        d=cert.d,
        n=cert.n,
        mu_target=cert.mu_target,
        coherence=cert.coherence,
        equiangularity_dev=cert.equiangularity_dev,
        tightness_residual=cert.tightness_residual,
        tolerance=cert.tolerance,
    )
    _emit(**{"pass": cert.passed})


def cmd_hadamard(args):
    if args.subcommand == "paley":
        H = paley_skew_hadamard(args.q)
        io.write_hadamard(args.output, H)
        _emit(order=H.shape[0], output=args.output)
        return 0
    if args.subcommand == "double":
        H = double_hadamard(io.read_hadamard(args.input))
        io.write_hadamard(args.output, H)
        _emit(order=H.shape[0], output=args.output)
        return 0
    if args.subcommand == "verify":
        H = io.read_hadamard(args.input)
        ok = is_skew_hadamard(H)
        _emit(order=H.shape[0], skew_hadamard=ok)
        return 0 if ok else 1
    raise AssertionError(args.subcommand)


def cmd_sig(args):
    if args.subcommand == "verify":
        M = io.read_matrix(args.input)
        try:
            sig = as_signature(M)
        except EtfError as exc:
            _emit(signature=False, error=exc.code)
            return 1
        _emit(signature=True, d=sig.d, n=sig.n, c=sig.c)
        return 0
    if args.subcommand == "strohmer":
        H = check_skew_hadamard(io.read_hadamard(args.input))
        sig = strohmer_signature(core_adjacency(H), H.shape[0])
        io.write_matrix(args.output, sig.S)
        _emit(d=sig.d, n=sig.n, c=sig.c, output=args.output)
        return 0
    if args.subcommand == "conference":
        sig = conference_signature(io.read_hadamard(args.input))
        io.write_matrix(args.output, sig.S)
        _emit(d=sig.d, n=sig.n, c=sig.c, output=args.output)
        return 0
    if args.subcommand == "double":
        sig = double_signature(as_signature(io.read_matrix(args.input)), args.epsilon)
        io.write_matrix(args.output, sig.S)
        _emit(d=sig.d, n=sig.n, c=sig.c, output=args.output)
        return 0
    raise AssertionError(args.subcommand)


def cmd_etf(args):
    if args.subcommand == "synth":
        sig = as_signature(io.read_matrix(args.input))
        frame = factor_gram(gram_from_signature(sig), sig.d, provenance=f"synth({args.input})")
        io.write_matrix(args.output, frame.F)
        cert = verify_etf(frame)
        _emit(output=args.output)
        _print_certificate(cert)
        return 0 if cert.passed else 1
    if args.subcommand == "naimark":
        frame = make_frame(io.read_matrix(args.input), provenance=f"file({args.input})")
        comp = synthesis.naimark_complement(frame)
        io.write_matrix(args.output, comp.F)
        _emit(d=comp.d, n=comp.n, output=args.output)
        return 0
    if args.subcommand == "double":
        F = make_frame(io.read_matrix(args.input), provenance=f"file({args.input})")
        G = make_frame(io.read_matrix(args.complement), provenance=f"file({args.complement})")
        doubled = synthesis.double_etf(F, G, args.epsilon)
        io.write_matrix(args.output, doubled.F)
        cert = verify_etf(doubled)
        _emit(output=args.output)
        _print_certificate(cert)
        return 0 if cert.passed else 1
    if args.subcommand == "verify":
        M = io.read_matrix(args.input)
        cert = replace(verify_etf(M, args.tol), provenance=f"file({args.input})")
        _print_certificate(cert)
        if args.json:
            io.write_certificate_json(args.json, cert)
            _emit(json=args.json)
        return 0 if cert.passed else 1
    raise AssertionError(args.subcommand)


def cmd_build(args):
    if args.m is not None:
        H = catalog.hadamard_of_order(args.m)
    else:
        H = check_skew_hadamard(io.read_hadamard(args.import_path))
    frame = synthesis.build_skew_etf(H)
    io.write_matrix(args.output, frame.F)
    cert = verify_etf(frame)
    _emit(output=args.output)
    _print_certificate(cert)
    return 0 if cert.passed else 1


def cmd_search(args):
    cfg = search.SearchConfig(
        d=args.d,
        n=args.n,
        max_iters=args.iters,
        restarts=args.restarts,
        seed=args.seed,
    )
    result = search.alternating_projections(cfg)
    cert = search.search_report(result)
    _emit(
        d=args.d,
        n=args.n,
        seed=args.seed,
        restarts=args.restarts,
        iters=args.iters,
        best_coherence=result.best_coherence,
        restart_index=result.restart_index,
        iterations_used=result.iterations_used,
        converged=result.converged,
    )
    _print_certificate(cert)
    if args.json:
        io.write_certificate_json(args.json, cert)
        _emit(json=args.json)
    return 0 if cert.passed else 1


def cmd_catalog(args):
    imports = {}
    for path in args.imports or []:
        H = check_skew_hadamard(io.read_hadamard(path))
        imports[H.shape[0]] = path
    rows = catalog.size_report(args.max_d, imports)
    io.write_report_tsv(args.output, rows)
    fig_path = os.path.splitext(args.output)[0] + ".png"
    plots.render_report_figure(rows, fig_path)
    _emit(
        rows=len(rows),
        certified=sum(1 for r in rows if r.status == "certified"),
        needs_import=sum(1 for r in rows if r.status == "needs_import"),
        conjectural=sum(1 for r in rows if r.status == "conjectural"),
        output=args.output,
        figure=fig_path,
    )
    return 0


def build_parser():
    parser = argparse.ArgumentParser(
        prog="etf-forge",
        description="Construct, double, certify, and search for equiangular tight frames.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_had = sub.add_parser("hadamard", help="skew Hadamard generation and checks")
    had_sub = p_had.add_subparsers(dest="subcommand", required=True)
    p = had_sub.add_parser("paley", help="Paley construction for prime q = 3 mod 4")
    p.add_argument("--q", type=int, required=True)
    p.add_argument("-o", dest="output", required=True)
    p = had_sub.add_parser("double", help="order-doubling construction")
    p.add_argument("-i", dest="input", required=True)
    p.add_argument("-o", dest="output", required=True)
    p = had_sub.add_parser("verify", help="exact integer verification")
    p.add_argument("-i", dest="input", required=True)

    p_sig = sub.add_parser("sig", help="signature matrix operations")
    sig_sub = p_sig.add_subparsers(dest="subcommand", required=True)
    p = sig_sub.add_parser("strohmer", help="core signature from a skew Hadamard")
    p.add_argument("-i", dest="input", required=True)
    p.add_argument("-o", dest="output", required=True)
    p = sig_sub.add_parser("conference", help="conference signature i*(H - I)")
    p.add_argument("-i", dest="input", required=True)
    p.add_argument("-o", dest="output", required=True)
    p = sig_sub.add_parser("double", help="block doubling of a signature matrix")
    p.add_argument("-i", dest="input", required=True)
    p.add_argument("--epsilon", type=int, choices=(1, -1), default=1)
    p.add_argument("-o", dest="output", required=True)
    p = sig_sub.add_parser("verify", help="verify and recover (d, n, c)")
    p.add_argument("-i", dest="input", required=True)

    p_etf = sub.add_parser("etf", help="frame synthesis and certification")
    etf_sub = p_etf.add_subparsers(dest="subcommand", required=True)
    p = etf_sub.add_parser("synth", help="frame from a signature matrix")
    p.add_argument("-i", dest="input", required=True)
    p.add_argument("-o", dest="output", required=True)
    p = etf_sub.add_parser("naimark", help="Naimark complement of an ETF")
    p.add_argument("-i", dest="input", required=True)
    p.add_argument("-o", dest="output", required=True)
    p = etf_sub.add_parser("double", help="frame-level doubling")
    p.add_argument("-i", dest="input", required=True)
    p.add_argument("--complement", required=True)
    p.add_argument("--epsilon", type=int, choices=(1, -1), default=1)
    p.add_argument("-o", dest="output", required=True)
    p = etf_sub.add_parser("verify", help="Welch bound certificate")
    p.add_argument("-i", dest="input", required=True)
    p.add_argument("--tol", type=float, default=synthesis.DEFAULT_TOL)
    p.add_argument("--json", default=None)

    p = sub.add_parser("build", help="skew Hadamard to (m-1) x 2(m-1) ETF pipeline")
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--m", type=int, default=None)
    group.add_argument("--import", dest="import_path", default=None)
    p.add_argument("-o", dest="output", required=True)

    p_search = sub.add_parser("search", help="numerical search")
    search_sub = p_search.add_subparsers(dest="subcommand", required=True)
    p = search_sub.add_parser("ap", help="alternating projections")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--restarts", type=int, default=20)
    p.add_argument("--iters", type=int, default=5000)
    p.add_argument("--json", default=None)

    p = sub.add_parser("catalog", help="plan and certify d x 2d sizes")
    p.add_argument("--max-d", dest="max_d", type=int, required=True)
    p.add_argument("--import", dest="imports", action="append", default=[])
    p.add_argument("-o", dest="output", required=True)

    return parser


def main(argv=None):
    logging.basicConfig(stream=sys.stderr, level=logging.WARNING, format="%(levelname)s: %(message)s")
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "hadamard":
            return cmd_hadamard(args)
        if args.command == "sig":
            return cmd_sig(args)
        if args.command == "etf":
            return cmd_etf(args)
        if args.command == "build":
            return cmd_build(args)
        if args.command == "search":
            return cmd_search(args)
        if args.command == "catalog":
            return cmd_catalog(args)
    except EtfError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    raise AssertionError(args.command)


if __name__ == "__main__":
    sys.exit(main())
