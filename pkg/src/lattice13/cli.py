"""Command-line interface.

Exit codes: 0 success, 2 usage or parse error, 3 numeric failure (a form that
is not positive-definite, a degenerate cone, non-termination).
"""
from __future__ import annotations

import argparse
import json
import logging
import statistics
import sys
from concurrent.futures import ProcessPoolExecutor

import numpy as np

from . import kernels
from .core import (CONFIG, CellParameters, SymMat, gram_from_cell, numeric_mode,
                   require_pd, scalar)
from .ctype import enumerate_ctype_reps
from .embedding import (Embedding13, EmbeddingKind, MetricKind, embed, embed_distance,
                        gl_mod2, lattice_distance, rank2_distance,
                        vonorm_distance_generic)
from .errors import LatticeError, ParseError
from .io import dumps, index_record, read_lattice_csv, render_number, write_atlas, write_index
from .isometry import match_isometry
from .reduction import minkowski_reduce, selling_reduce
from .verify import SUITES, run_suites

log = logging.getLogger("lattice13")

EXIT_OK, EXIT_USAGE, EXIT_NUMERIC = 0, 2, 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise ParseError(message)


# ---------------------------------------------------------------------------
# input parsing

def _numbers(text):
    parts = [p.strip() for p in text.replace(";", ",").split(",") if p.strip()]
    if not parts:
        raise ParseError(f"no numbers in {text!r}")
    try:
        return [scalar(p) for p in parts]
    except (ValueError, ZeroDivisionError):
        raise ParseError(f"cannot parse {text!r} as numbers") from None


def parse_form(text, cell=False):
    """Gram entries ``s11,s22,s33,s12,s13,s23`` (or ``s11,s22,s12``), or cell
    parameters ``a,b,c,alpha,beta,gamma`` when ``cell`` is set or the text
    starts with ``cell:``."""
    text = text.strip()
    if text.lower().startswith("cell:"):
        cell, text = True, text[5:]
    vals = _numbers(text)
    if cell:
        if len(vals) != 6:
            raise ParseError("cell parameters need 6 numbers")
        try:
            params = CellParameters(*vals)
        except ValueError as exc:
            raise ParseError(str(exc)) from None
        return gram_from_cell(params)
    if len(vals) not in (3, 6):
        raise ParseError("a Gram matrix needs 6 entries (3 for rank 2)")
    S = SymMat.from_entries(vals)
    require_pd(S)
    return S


def _fmt(x):
    return str(render_number(x))


def _fmt_row(values):
    return ",".join(_fmt(x) for x in values)


def _fmt_matrix(g):
    return "[" + ",".join("[" + ",".join(str(x) for x in row) + "]" for row in g) + "]"


# ---------------------------------------------------------------------------
# subcommands

def cmd_reduce(args, out):
    S = parse_form(args.matrix or args.cell, cell=args.matrix is None)
    kind = args.kind
    if kind in ("m", "minkowski"):
        if S.n != 3:
            raise ParseError("Minkowski reduction needs a 3x3 form")
        res = minkowski_reduce(S)
    else:
        res = selling_reduce(S)
    print(f"reduced: {_fmt_row(res.reduced.entries)}", file=out)
    print(f"transform: {_fmt_matrix(res.transform)}", file=out)
    return EXIT_OK


def cmd_embed(args, out):
    S = parse_form(args.matrix or args.cell, cell=args.matrix is None)
    e = embed(S, args.kind, normalize_scale=args.normalize_scale)
    print(_fmt_row(e.values), file=out)
    return EXIT_OK


def cmd_dist(args, out):
    S1, S2 = parse_form(args.first), parse_form(args.second)
    if args.algo == "rank2":
        d = rank2_distance(S1, S2, args.metric)
    elif args.algo == "vonorm-generic":
        d = vonorm_distance_generic(S1, S2, args.metric)
        log.info("minimised over %d matrices of GL_%d(Z/2Z)", len(gl_mod2(S1.n)), S1.n)
    else:
        if args.normalize_scale:
            d = embed_distance(embed(S1, args.kind, True), embed(S2, args.kind, True),
                               args.metric)
        else:
            d = lattice_distance(S1, S2, args.metric, args.kind)
    print(_fmt(d), file=out)
    return EXIT_OK


def cmd_isometries(args, out):
    T1, T2 = parse_form(args.first), parse_form(args.second)
    tol = _numbers(args.tol)[0] if args.tol is not None else 0
    found = match_isometry(T1, T2, tol, inclusive=args.inclusive, all_candidates=True)
    for c in found:
        print(f"{_fmt_matrix(c.g)} residual={_fmt(c.residual)}", file=out)
    print(f"{len(found)} candidate{'s' if len(found) != 1 else ''}", file=out)
    return EXIT_OK


def cmd_ctype(args, out):
    if args.n not in (2, 3) or args.r not in (2, 3, 4):
        raise ParseError("supported: n in {2, 3}, r in {2, 3, 4}")
    domains = enumerate_ctype_reps(args.n, args.r, seed=args.seed)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            write_atlas(domains, args.n, args.r, fh)
    k = len(domains)
    print(f"{k} class{'es' if k != 1 else ''}", file=out)
    return EXIT_OK


def cmd_verify(args, out):
    results = run_suites(args.suite, samples=args.samples, seed=args.seed)
    summary = {"passed": all(r.passed for r in results),
               "suites": [r.as_dict() for r in results]}
    print(json.dumps(summary, indent=2), file=out)
    return EXIT_OK if summary["passed"] else 1


# -- dedupe -----------------------------------------------------------------

def _fingerprint_exact(job):
    rid, entries, kind, normalize, mode, tau = job
    with numeric_mode(mode, tau_cmp=tau):
        S = SymMat.from_entries(entries)
        e = embed(S, kind, normalize_scale=normalize)
        red = (minkowski_reduce(S) if kind is EmbeddingKind.MINKOWSKI
               else selling_reduce(S)).reduced
        return rid, e, S.det(), red


def _fingerprints(records, kind, args):
    """Embeddings in input order.  Float mode runs the batch kernels."""
    if CONFIG.mode == "float" and not args.normalize_scale:
        entries = np.array([[float(x) for x in r.gram.entries] for r in records]).reshape(-1, 6)
        values, reduced, _ = kernels.fingerprint_batch(
            entries, kind.value, tau=CONFIG.tau_cmp, tau_pd=CONFIG.tau_pd)
        return [(rec.id, Embedding13(kind, tuple(float(x) for x in vals)), rec.gram.det(),
                 SymMat.from_entries([float(x) for x in red]))
                for rec, vals, red in zip(records, values, reduced)]
    jobs = [(r.id, r.gram.entries, kind, args.normalize_scale, CONFIG.mode, CONFIG.tau_cmp)
            for r in records]
    if args.jobs and args.jobs > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            return list(pool.map(_fingerprint_exact, jobs, chunksize=16))
    return [_fingerprint_exact(j) for j in jobs]


def _find(parent, i):
    while parent[i] != i:
        parent[i] = parent[parent[i]]
        i = parent[i]
    return i


def single_link_clusters(ids, embeddings, threshold, metric):
    """Connected components of the graph joining pairs at distance <= threshold."""
    n = len(ids)
    parent = list(range(n))
    metric = MetricKind.parse(metric)
    if n > 1 and metric is MetricKind.LINF and all(
            isinstance(x, float) for e in embeddings for x in e.values):
        X = np.array([e.values for e in embeddings], dtype=np.float64)
        pairs = kernels.linf_pairs(X, float(threshold))
    else:
        pairs = [(i, j) for i in range(n) for j in range(i + 1, n)
                 if embed_distance(embeddings[i], embeddings[j], metric) <= threshold]
    for i, j in pairs:
        ri, rj = _find(parent, int(i)), _find(parent, int(j))
        if ri != rj:
            parent[max(ri, rj)] = min(ri, rj)
    groups = {}
    for i in range(n):
        groups.setdefault(_find(parent, i), []).append(ids[i])
    clusters = [sorted(g) for g in groups.values()]
    clusters.sort(key=lambda c: c[0])
    return clusters


def cmd_dedupe(args, out):
    records, skipped = read_lattice_csv(args.input)
    for row, rid, msg in skipped:
        log.warning("row %d (%s) skipped: %s", row, rid, msg)
    kind = EmbeddingKind.parse(args.kind)
    fps = _fingerprints(records, kind, args)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            write_index([index_record(rid, e, det, red) for rid, e, det, red in fps], fh)
    if args.threshold is not None:
        threshold = _numbers(args.threshold)[0]
    elif records:
        threshold = statistics.median(r.gram.trace() for r in records) / 1000
    else:
        threshold = 0
    ids = [rid for rid, *_ in fps]
    clusters = single_link_clusters(ids, [e for _, e, *_ in fps], threshold, args.metric)
    report = {
        "kind": kind.value,
        "metric": MetricKind.parse(args.metric).value,
        "threshold": render_number(threshold),
        "clusters": clusters,
        "skipped": [{"row": row, "id": rid, "error": msg} for row, rid, msg in skipped],
    }
    print(dumps(report), file=out)
    return EXIT_OK


# ---------------------------------------------------------------------------

def build_parser():
    common = _Parser(add_help=False)
    common.add_argument("--mode", choices=("exact", "float"), default="exact",
                        help="scalar arithmetic (default: exact rationals)")
    common.add_argument("--tau", type=float, default=None,
                        help="comparison tolerance in float mode (default 1e-9)")
    common.add_argument("-v", "--verbose", action="store_true")

    p = _Parser(prog="lattice13", description="Fingerprints and isometries of 3D lattices.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def form_input(sp):
        sp.add_argument("matrix", nargs="?", help="Gram entries s11,s22,s33,s12,s13,s23")
        sp.add_argument("--cell", help="cell parameters a,b,c,alpha,beta,gamma")

    sp = sub.add_parser("reduce", parents=[common], help="Selling or Minkowski reduction")
    form_input(sp)
    sp.add_argument("--kind", choices=("m", "s", "minkowski", "selling"), default="m")
    sp.set_defaults(func=cmd_reduce, needs_form=True)

    sp = sub.add_parser("embed", parents=[common], help="13-dimensional fingerprint")
    form_input(sp)
    sp.add_argument("--kind", choices=("s", "m"), default="m")
    sp.add_argument("--normalize-scale", action="store_true")
    sp.set_defaults(func=cmd_embed, needs_form=True)

    sp = sub.add_parser("dist", parents=[common], help="distance between two lattices")
    sp.add_argument("first")
    sp.add_argument("second")
    sp.add_argument("--kind", choices=("s", "m"), default="m")
    sp.add_argument("--metric", choices=("l1", "l2", "linf"), default="l2")
    sp.add_argument("--algo", choices=("embed13", "vonorm-generic", "rank2"), default="embed13")
    sp.add_argument("--normalize-scale", action="store_true")
    sp.set_defaults(func=cmd_dist)

    sp = sub.add_parser("dedupe", parents=[common], help="cluster near-duplicate lattices")
    sp.add_argument("--in", dest="input", required=True)
    sp.add_argument("--out")
    sp.add_argument("--threshold")
    sp.add_argument("--metric", choices=("l1", "l2", "linf"), default="linf")
    sp.add_argument("--kind", choices=("s", "m"), default="m")
    sp.add_argument("--normalize-scale", action="store_true")
    sp.add_argument("--jobs", type=int, default=1)
    sp.set_defaults(func=cmd_dedupe)

    sp = sub.add_parser("isometries", parents=[common], help="potential isometries T1 -> T2")
    sp.add_argument("first")
    sp.add_argument("second")
    sp.add_argument("--tol")
    sp.add_argument("--inclusive", action="store_true",
                    help="admit rows whose norm equals the bound")
    sp.set_defaults(func=cmd_isometries)

    sp = sub.add_parser("ctype", parents=[common], help="enumerate C-type domains mod r")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--r", type=int, required=True)
    sp.add_argument("--out")
    sp.add_argument("--seed", type=int, default=0)
    sp.set_defaults(func=cmd_ctype)

    sp = sub.add_parser("verify", parents=[common], help="run self-check suites")
    sp.add_argument("--suite", action="append", choices=sorted(SUITES) + ["all"])
    sp.add_argument("--samples", type=int)
    sp.add_argument("--seed", type=int, default=0)
    sp.set_defaults(func=cmd_verify)
    return p


def main(argv=None, out=None):
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if getattr(args, "needs_form", False) and (args.matrix is None) == (args.cell is None):
            raise ParseError("give either a Gram matrix or --cell")
        if args.command == "verify" and not args.suite:
            args.suite = ["all"]
        logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                            format="%(levelname)s %(name)s: %(message)s")
        with numeric_mode(args.mode, tau_cmp=args.tau):
            return args.func(args, out)
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (LatticeError, ArithmeticError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
