"""Command-line interface.

Exit codes: 0 success, 1 I/O or unreadable input, 2 usage or contract
violation (including failed verification), 3 enumeration guard refusal.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
import time
from fractions import Fraction
from pathlib import Path

import numpy as np

from . import __version__, kernels
from .bench import scaling_table, time_backends, trend_flags
from .corpus import build_norm_graph
from .errors import ContractError, GuardExceeded, ParseError
from .graph import Graph, Ordering, degeneracy_order, gen, parse_edge_list, to_edge_list
from .labeling import (
    LabelSet,
    adjacent,
    build_universal,
    encode_degeneracy,
    encode_intervals,
    runs_of_ones,
    verify_labeling,
    verify_universal,
)
from .lowcross import alternation_counts, build_low_crossing_tree, crossing_profile, tree_to_order
from .patterns import build_u, contains_kst, contains_u
from .setsystem import primal_shatter, rows_of, vc_dimension

EXIT_OK, EXIT_IO, EXIT_USAGE, EXIT_GUARD = 0, 1, 2, 3


class InputError(Exception):
    """Unreadable or malformed input file."""


class RunReport:
    """Ordered key/value report with optional tables.

    Everything except ``elapsed_s`` is a deterministic function of the
    command line and input files.
    """

    def __init__(self, argv):
        self.fields = {"command": "labelforge " + " ".join(argv)}
        self.tables = {}
        self._t0 = time.perf_counter()

    def __setitem__(self, key, value):
        self.fields[key] = value

    def __getitem__(self, key):
        return self.fields[key]

    def add_table(self, name, rows):
        self.tables[name] = rows

    def finish(self):
        self.fields["elapsed_s"] = round(time.perf_counter() - self._t0, 4)

    def render(self) -> str:
        lines = [f"{k}: {_fmt(v)}" for k, v in self.fields.items() if k != "elapsed_s"]
        for name, rows in self.tables.items():
            lines.append(f"[{name}]")
            lines.extend(_table(rows))
        if "elapsed_s" in self.fields:
            lines.append(f"elapsed_s: {self.fields['elapsed_s']}")
        return "\n".join(lines) + "\n"

    def to_json(self) -> str:
        return json.dumps({**self.fields, "tables": self.tables}, indent=2, sort_keys=False, default=_jsonable)


def _jsonable(x):
    if isinstance(x, np.generic):
        return x.item()
    raise TypeError(type(x))


def _fmt(v):
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, float):
        return f"{v:.4f}"
    return str(v)


def _table(rows):
    if not rows:
        return ["(empty)"]
    cols = list(rows[0])
    cells = [[_fmt(r[c]) for c in cols] for r in rows]
    widths = [max(len(c), *(len(row[i]) for row in cells)) for i, c in enumerate(cols)]
    out = ["  ".join(c.rjust(w) for c, w in zip(cols, widths))]
    out.extend("  ".join(x.rjust(w) for x, w in zip(row, widths)) for row in cells)
    return out


def _read(path) -> bytes:
    try:
        return Path(path).read_bytes()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None


def _load_graph(path, report=None):
    data = _read(path)
    if report is not None:
        report["input_sha256"] = hashlib.sha256(data).hexdigest()
    try:
        return parse_edge_list(data)
    except (ParseError, UnicodeDecodeError) as exc:
        raise InputError(f"{path}: {exc}") from None


def _load_labels(path, report=None):
    data = _read(path)
    if report is not None:
        report["labels_sha256"] = hashlib.sha256(data).hexdigest()
    try:
        return LabelSet.from_text(data)
    except (ParseError, UnicodeDecodeError) as exc:
        raise InputError(f"{path}: {exc}") from None


def _write(path, text):
    if path is None or path == "-":
        sys.stdout.write(text)
        return
    try:
        Path(path).write_text(text)
    except OSError as exc:
        raise InputError(f"cannot write {path}: {exc.strerror}") from None


def _emit(report, args):
    report.finish()
    text = report.render()
    if getattr(args, "report", None):
        _write(args.report, text)
    elif args.cmd == "label" and args.out in (None, "-"):
        # stdout carries the labels
        sys.stderr.write(text)
    else:
        sys.stdout.write(text)
    if getattr(args, "json", None):
        _write(args.json, report.to_json())


# -- commands


def cmd_gen(args, argv):
    kind = args.kind
    if kind in ("gnp", "path", "cycle", "clique", "star", "empty"):
        if args.n is None:
            raise ContractError(f"gen {kind} requires --n")
        if kind == "gnp":
            if args.seed is None:
                raise ContractError("gen gnp requires --seed")
            if args.p is None:
                raise ContractError("gen gnp requires --p")
            p = Fraction(args.p)
        else:
            p = None
        g = gen(kind, args.n, p=p, seed=args.seed)
    elif kind == "u":
        if args.k is None or args.d is None:
            raise ContractError("gen u requires --k and --d")
        g = build_u(args.k, args.d)[0]
    else:
        if args.q is None or args.d is None:
            raise ContractError("gen norm requires --q and --d")
        g = build_norm_graph(args.q, args.d)
    _write(args.out, to_edge_list(g))
    return EXIT_OK


def _interval_certificates(g, labels, tree=None):
    """Certificate dict for interval labels; the factor-2 check needs the tree
    the ordering came from."""
    f = rows_of(g)
    alts = alternation_counts(f, labels.ordering)
    runs_ok = all(
        tuple(runs_of_ones(g.adj[v, labels.ordering.perm])) == labels.labels[v].intervals
        and 2 * len(labels.labels[v].intervals) <= alts[v] + 2
        for v in range(g.n)
    )
    certs = {"intervals_are_maximal_runs": "pass" if runs_ok else "fail"}
    if tree is None:
        default_tree = build_low_crossing_tree(f)
        if tree_to_order(default_tree) == labels.ordering:
            tree = default_tree
    if tree is None:
        certs["factor2"] = "skipped (ordering not from a low-crossing tree)"
        return certs, alts, None
    prof = crossing_profile(tree, f)
    certs["factor2"] = "pass" if bool(np.all(alts <= 2 * prof.counts)) else "fail"
    return certs, alts, prof.maximum


def cmd_label(args, argv):
    report = RunReport(argv)
    g = _load_graph(args.input, report)
    report["scheme"] = args.scheme
    report["n"] = g.n
    tree = None
    if args.scheme == "interval":
        if args.order:
            ordering = _load_ordering(args.order)
            if ordering.n != g.n:
                raise ContractError(f"ordering has {ordering.n} positions, graph has {g.n} vertices")
        else:
            tree = build_low_crossing_tree(rows_of(g), backend=args.backend)
            ordering = tree_to_order(tree)
        labels = encode_intervals(g, ordering)
    else:
        if args.order:
            raise ContractError("--order applies to the interval scheme only")
        labels = encode_degeneracy(g)
    _write(args.out, labels.to_text())
    cost = labels.bit_cost()
    report["position_bits"] = cost.width
    report["max_label_bits"] = cost.max
    report["mean_label_bits"] = cost.mean
    if args.scheme == "interval":
        certs, alts, tree_max = _interval_certificates(g, labels, tree)
        report["max_alternations"] = int(alts.max()) if alts.size else 0
        report["tree_crossing_max"] = tree_max if tree_max is not None else "n/a"
        for k, v in certs.items():
            report[f"certificate.{k}"] = v
    else:
        p = degeneracy_order(g)[1]
        report["degeneracy"] = p
        fwd_max = max((len(lab.fwd) for lab in labels.labels), default=0)
        report["certificate.forward_le_degeneracy"] = "pass" if fwd_max <= p else "fail"
    _emit(report, args)
    return EXIT_OK


def _load_ordering(path):
    try:
        return Ordering.from_text(_read(path))
    except (ParseError, UnicodeDecodeError) as exc:
        raise InputError(f"{path}: {exc}") from None


def cmd_order(args, argv):
    g = _load_graph(args.input)
    tree = build_low_crossing_tree(rows_of(g), backend=args.backend)
    if args.tree_out:
        _write(args.tree_out, tree.to_text())
    _write(args.out, tree_to_order(tree).to_text())
    return EXIT_OK


def cmd_query(args, argv):
    # Deliberately reads only the label file.
    labels = _load_labels(args.labels)
    for x in (args.u, args.v):
        if not 0 <= x < labels.n:
            raise InputError(f"no label for vertex {x}")
    if args.u == args.v:
        raise ContractError("query needs two distinct vertices")
    print("true" if adjacent(labels.labels[args.u], labels.labels[args.v]) else "false")
    return EXIT_OK


def cmd_verify(args, argv):
    report = RunReport(argv)
    g = _load_graph(args.input, report)
    tree = None
    if args.labels:
        labels = _load_labels(args.labels, report)
    elif args.scheme == "interval":
        tree = build_low_crossing_tree(rows_of(g))
        labels = encode_intervals(g, tree_to_order(tree))
    else:
        labels = encode_degeneracy(g)
    if labels.n != g.n:
        raise ContractError(f"labels describe {labels.n} vertices, graph has {g.n}")
    result = verify_labeling(g, labels)
    report["scheme"] = labels.scheme
    report["n"] = g.n
    report["mismatches"] = len(result.mismatches)
    report["max_label_bits"] = result.cost.max
    report["mean_label_bits"] = result.cost.mean
    report["certificate.decode"] = "pass" if result.ok else "fail"
    if labels.scheme == "interval":
        certs, alts, tree_max = _interval_certificates(g, labels, tree)
        report["max_alternations"] = int(alts.max()) if alts.size else 0
        report["tree_crossing_max"] = tree_max if tree_max is not None else "n/a"
    else:
        order, p = degeneracy_order(g)
        fwd_max = max((len(lab.fwd) for lab in labels.labels), default=0)
        report["degeneracy"] = p
        if labels.ordering == order:
            certs = {"forward_le_degeneracy": "pass" if fwd_max <= p else "fail"}
        else:
            certs = {"forward_le_degeneracy": "skipped (ordering is not the peeling order)"}
    for k, v in certs.items():
        report[f"certificate.{k}"] = v
    if result.mismatches:
        report.add_table("mismatches", [dict(u=u, v=v, graph=a, labels=b) for u, v, a, b in result.mismatches[:20]])
    _emit(report, args)
    failed = any(str(v) == "fail" for k, v in report.fields.items() if k.startswith("certificate."))
    return EXIT_USAGE if failed else EXIT_OK


def cmd_analyze(args, argv):
    report = RunReport(argv)
    what = args.what
    if what == "universal":
        report.fields.update(_analyze_universal(args))
    else:
        if not args.input:
            raise ContractError(f"analyze {what} requires --in")
        g = _load_graph(args.input, report)
        report["n"] = g.n
        if what == "shatter":
            if args.t is None:
                raise ContractError("analyze shatter requires --t")
            mode = "sampled" if args.sampled else "exact"
            if mode == "sampled" and args.seed is None:
                raise ContractError("sampled shatter requires --seed")
            val = primal_shatter(rows_of(g), args.t, mode=mode, trials=args.trials, seed=args.seed)
            report["t"] = args.t
            report["mode"] = mode
            report["primal_shatter" if mode == "exact" else "primal_shatter_lower_bound"] = val
        elif what == "u-free":
            if args.k is None or args.d is None:
                raise ContractError("analyze u-free requires --k and --d")
            w = contains_u(g, args.k, args.d)
            report["U-free"] = w is None
            if w is not None:
                report["witness_A"] = " ".join(map(str, w[0]))
                report["witness_B"] = " ".join(map(str, w[1]))
        elif what == "kst":
            if args.s is None or args.t is None:
                raise ContractError("analyze kst requires --s and --t")
            w = contains_kst(g, args.s, args.t)
            report["Kst-free"] = w is None
            if w is not None:
                report["witness_S"] = " ".join(map(str, w[0]))
                report["witness_T"] = " ".join(map(str, w[1]))
        elif what == "vc":
            report["vc_dimension"] = vc_dimension(rows_of(g))
    _emit(report, args)
    if what == "universal" and not report["all_embed"]:
        return EXIT_USAGE
    return EXIT_OK


def _analyze_universal(args):
    n = args.n
    if n is None:
        raise ContractError("analyze universal requires --n")
    cap = args.max_intervals if args.max_intervals is not None else max(1, n // 2)
    if n > 5:
        raise GuardExceeded("labelled graphs to embed", 1 << (n * (n - 1) // 2), 1 << 10)
    u, index = build_universal(n, args.scheme, cap)
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    embedded = 0
    total = 1 << len(pairs)
    for mask in range(total):
        g = Graph.from_edges(n, [pairs[b] for b in range(len(pairs)) if mask >> b & 1])
        ls = encode_intervals(g, Ordering.identity(n)) if args.scheme == "interval" else encode_degeneracy(g)
        try:
            ok = verify_universal(u, index, g, ls)
        except ContractError:
            ok = False
        embedded += ok
    return {
        "universal_vertices": u.n,
        "universal_edges": u.num_edges,
        "graphs_checked": total,
        "graphs_embedded": embedded,
        "all_embed": embedded == total,
    }


def cmd_bench(args, argv):
    report = RunReport(argv)
    qs = [int(x) for x in args.qs.split(",") if x.strip()]
    if args.what == "scaling":
        rows = scaling_table(qs, d=args.d, family=args.family, backend=args.backend)
        flags = trend_flags(rows, args.factor)
        report["family"] = args.family
        report["d"] = args.d
        report["backend"] = args.backend or kernels.BACKEND
        report.add_table("scaling", rows)
        report["certificate.factor2"] = "pass" if all(r["factor2"] for r in rows) else "fail"
        report["trend_nonincreasing"] = flags["nonincreasing"]
        report[f"trend_within_factor_{flags['factor']}"] = flags["within_factor"]
        _emit(report, args)
        return EXIT_OK if report["certificate.factor2"] == "pass" else EXIT_USAGE
    rows = time_backends(qs, d=args.d, repeat=args.repeat)
    report["backends"] = ",".join(sorted(kernels.BACKENDS))
    report.add_table("kernels", rows)
    report["certificate.same_tree"] = "pass" if all(r["same_tree"] for r in rows) else "fail"
    _emit(report, args)
    return EXIT_OK if report["certificate.same_tree"] == "pass" else EXIT_USAGE


def build_parser():
    ap = argparse.ArgumentParser(prog="labelforge", description="Adjacency labeling toolkit")
    ap.add_argument("--version", action="version", version=f"labelforge {__version__}")
    sub = ap.add_subparsers(dest="cmd", required=True)

    def reporting(p):
        p.add_argument("--report", help="write the text report here instead of stdout")
        p.add_argument("--json", help="also write a JSON report to this path")

    p = sub.add_parser("gen", help="generate a graph in edge-list format")
    p.add_argument("kind", choices=["gnp", "path", "cycle", "clique", "star", "empty", "u", "norm"])
    p.add_argument("--n", type=int)
    p.add_argument("--p", help="edge probability (rational, e.g. 1/2 or 0.1)")
    p.add_argument("--seed", type=int)
    p.add_argument("--k", type=int)
    p.add_argument("--d", type=int)
    p.add_argument("--q", type=int)
    p.add_argument("-o", "--out")

    p = sub.add_parser("order", help="low-crossing vertex ordering of a graph")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("-o", "--out")
    p.add_argument("--tree-out")
    p.add_argument("--backend", choices=sorted(kernels.BACKENDS))

    p = sub.add_parser("label", help="compute adjacency labels")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--scheme", choices=["interval", "degeneracy"], default="interval")
    p.add_argument("--order", help="ordering file (interval scheme)")
    p.add_argument("-o", "--out")
    p.add_argument("--backend", choices=sorted(kernels.BACKENDS))
    reporting(p)

    p = sub.add_parser("query", help="decide adjacency from a label file")
    p.add_argument("--labels", required=True)
    p.add_argument("--u", type=int, required=True)
    p.add_argument("--v", type=int, required=True)

    p = sub.add_parser("verify", help="check labels decode the graph exactly")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--labels")
    p.add_argument("--scheme", choices=["interval", "degeneracy"], default="interval")
    reporting(p)

    p = sub.add_parser("analyze", help="shatter / pattern / universal-graph analyses")
    p.add_argument("what", choices=["shatter", "u-free", "kst", "vc", "universal"])
    p.add_argument("--in", dest="input")
    p.add_argument("--t", type=int)
    p.add_argument("--s", type=int)
    p.add_argument("--k", type=int)
    p.add_argument("--d", type=int)
    p.add_argument("--n", type=int)
    p.add_argument("--sampled", action="store_true")
    p.add_argument("--trials", type=int, default=1000)
    p.add_argument("--seed", type=int)
    p.add_argument("--scheme", choices=["interval", "degeneracy"], default="interval")
    p.add_argument("--max-intervals", type=int)
    reporting(p)

    p = sub.add_parser("bench", help="scaling tables and kernel timings")
    p.add_argument("what", choices=["scaling", "kernels"])
    p.add_argument("--family", default="norm", choices=["norm"])
    p.add_argument("--d", type=int, default=2)
    p.add_argument("--qs", default="5,7,11,13")
    p.add_argument("--factor", type=float, default=1.5)
    p.add_argument("--repeat", type=int, default=3)
    p.add_argument("--backend", choices=sorted(kernels.BACKENDS))
    reporting(p)
    return ap


COMMANDS = {
    "gen": cmd_gen,
    "order": cmd_order,
    "label": cmd_label,
    "query": cmd_query,
    "verify": cmd_verify,
    "analyze": cmd_analyze,
    "bench": cmd_bench,
}


def main(argv=None):
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    try:
        return COMMANDS[args.cmd](args, argv)
    except InputError as exc:
        print(f"labelforge: {exc}", file=sys.stderr)
        return EXIT_IO
    except GuardExceeded as exc:
        print(f"labelforge: refused: {exc}", file=sys.stderr)
        return EXIT_GUARD
    except (ContractError, ValueError) as exc:
        print(f"labelforge: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
