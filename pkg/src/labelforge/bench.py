"""Scaling runs over norm graphs and kernel backend timings."""

from __future__ import annotations

import time

import numpy as np

from . import kernels
from .corpus import build_norm_graph
from .errors import ContractError
from .labeling import encode_intervals
from .lowcross import alternation_counts, build_low_crossing_tree, crossing_profile, tree_to_order
from .setsystem import rows_of


def interval_pipeline(g, backend=None):
    """Tree, ordering, labels and per-row certificate data for one graph."""
    f = rows_of(g)
    tree = build_low_crossing_tree(f, backend=backend)
    order = tree_to_order(tree)
    prof = crossing_profile(tree, f)
    alts = alternation_counts(f, order, backend)
    labels = encode_intervals(g, order)
    return {
        "tree": tree,
        "ordering": order,
        "labels": labels,
        "crossing": prof.counts,
        "alternations": alts,
        "tree_crossing_max": prof.maximum,
        "max_alternations": int(alts.max()) if alts.size else 0,
        "factor2_ok": bool(np.all(alts <= 2 * prof.counts)),
    }


def scaling_table(qs, d=2, family="norm", backend=None):
    """One row per ``q``; ratios are against ``n ** (1 - 1/d)``."""
    if family != "norm":
        raise ContractError(f"unsupported family {family!r} (only 'norm')")
    rows = []
    for q in qs:
        g = build_norm_graph(q, d)
        run = interval_pipeline(g, backend)
        scale = g.n ** (1 - 1 / d)
        rows.append(
            {
                "q": q,
                "n": g.n,
                "edges": g.num_edges,
                "tree_crossing": run["tree_crossing_max"],
                "max_alt": run["max_alternations"],
                "max_bits": run["labels"].bit_cost().max,
                "alt_ratio": run["max_alternations"] / scale,
                "crossing_ratio": run["tree_crossing_max"] / scale,
                "factor2": run["factor2_ok"],
            }
        )
    return rows


def trend_flags(rows, factor=1.5):
    ratios = [r["alt_ratio"] for r in rows]
    if not ratios:
        return {"nonincreasing": True, "within_factor": True, "factor": factor}
    return {
        "nonincreasing": all(b <= a for a, b in zip(ratios, ratios[1:])),
        "within_factor": all(r <= factor * ratios[0] for r in ratios),
        "factor": factor,
    }


def time_backends(qs, d=2, repeat=3):
    """Best-of-``repeat`` tree build time per available backend; also checks
    that every backend returns the same tree."""
    out = []
    for q in qs:
        f = rows_of(build_norm_graph(q, d))
        row = {"q": q, "n": f.t}
        trees = {}
        for name in sorted(kernels.BACKENDS):
            best = float("inf")
            for _ in range(repeat):
                t0 = time.perf_counter()
                trees[name] = build_low_crossing_tree(f, backend=name)
                best = min(best, time.perf_counter() - t0)
            row[f"{name}_s"] = best
        row["same_tree"] = len(set(trees.values())) == 1
        if "cython" in trees:
            row["speedup"] = row["python_s"] / max(row["cython_s"], 1e-12)
        out.append(row)
    return out
