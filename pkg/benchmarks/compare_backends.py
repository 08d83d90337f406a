#!/usr/bin/env python3
"""Benchmark the compiled kernels against the pure-Python fallback.

Times each graph kernel on synthetic workloads and the full two-stage
designer on a large random instance, then prints a table with the speedup
of the compiled extension.  Run from a checkout with the package installed:

    python3 benchmarks/compare_backends.py [--scale N] [--repeat R]

The kernel inputs are identical across backends, and each comparison also
asserts the outputs agree, so the benchmark doubles as a smoke test.
"""

from __future__ import annotations

import argparse
import random
import subprocess
import sys
import time

from ctrltopo import BipartiteGraph, DiGraph
from ctrltopo import _pure

try:
    from ctrltopo import _speedups
except ImportError:
    _speedups = None


def time_call(fn, args, repeat):
    best = float("inf")
    result = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        result = fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best, result


def build_digraph(rng, n, avg_degree):
    edges = set()
    while len(edges) < n * avg_degree:
        edges.add((rng.randrange(n), rng.randrange(n)))
    weights = {e: float(rng.randint(0, 9)) for e in edges}
    return DiGraph(n, edges, weights)


def build_bipartite(rng, n, avg_degree):
    edges = set()
    while len(edges) < n * avg_degree:
        edges.add((rng.randrange(n), rng.randrange(n)))
    # guarantee a perfect matching exists: include the diagonal
    edges.update((i, i) for i in range(n))
    weights = {e: float(rng.randint(0, 9)) for e in edges}
    return BipartiteGraph(n, n, edges, weights)


def kernel_workloads(scale):
    rng = random.Random(20240)
    g = build_digraph(rng, 400 * scale, 6)
    b = build_bipartite(rng, 150 * scale, 5)
    ga = build_digraph(rng, 60 * scale, 4)
    esrc = [a for a, _ in ga.edges]
    edst = [bb for _, bb in ga.edges]
    return [
        ("scc_labels", "scc_labels",
         (g.vertex_count, g._indptr, g._heads)),
        ("reachable", "reachable",
         (g.vertex_count, g._indptr, g._heads, [0])),
        ("max_matching", "max_matching",
         (b.left_count, b.right_count, b._indptr, b._heads)),
        ("mwpm_lex", "mwpm_lex",
         (b.left_count, b.right_count, b._indptr, b._heads, b._w)),
        ("arborescence_lex", "arborescence_lex",
         (ga.vertex_count, 0, esrc, edst, list(ga.weights))),
    ]


def bench_kernels(scale, repeat):
    rows = []
    for label, attr, args in kernel_workloads(scale):
        t_pure, out_pure = time_call(getattr(_pure, attr), args, repeat)
        t_fast, out_fast = time_call(getattr(_speedups, attr), args, repeat)
        assert out_pure == out_fast, f"{label}: backend outputs differ"
        rows.append((label, t_pure, t_fast))
    return rows


def bench_designer(scale, repeat):
    """Time the full design pipeline per backend in fresh interpreters.

    The backend is fixed at import time, so each timing runs in a
    subprocess; the designed documents are compared for equality.
    """
    code = (
        "import sys, time, json\n"
        "from ctrltopo.generators import gen_random\n"
        "from ctrltopo.design import design\n"
        "from ctrltopo.formats import render_edges\n"
        "inst = gen_random({k}, state_range=(1, 3), density=0.4, seed=4096)\n"
        "best = float('inf')\n"
        "for _ in range({repeat}):\n"
        "    t0 = time.perf_counter()\n"
        "    res = design(inst)\n"
        "    best = min(best, time.perf_counter() - t0)\n"
        "print(json.dumps({{'t': best, 'cost': res.union_cost,\n"
        "                  'edges': render_edges(res.union_edges)}}))\n"
    ).format(k=60 * scale, repeat=repeat)
    out = {}
    import json as _json
    import os
    for label, extra in (("pure", {"CTRLTOPO_PURE": "1"}), ("compiled", {})):
        env = dict(os.environ, **extra)
        if not extra:
            env.pop("CTRLTOPO_PURE", None)
        proc = subprocess.run([sys.executable, "-c", code],
                              capture_output=True, text=True, env=env,
                              check=True)
        out[label] = _json.loads(proc.stdout)
    assert out["pure"]["edges"] == out["compiled"]["edges"], \
        "designer outputs differ between backends"
    return out["pure"]["t"], out["compiled"]["t"], out["pure"]["cost"]


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--scale", type=int, default=1,
                    help="multiplier for workload sizes (default 1)")
    ap.add_argument("--repeat", type=int, default=5,
                    help="timing repetitions, best-of (default 5)")
    args = ap.parse_args(argv)

    if _speedups is None:
        print("compiled extension is not available; nothing to compare",
              file=sys.stderr)
        return 1

    print(f"{'kernel':<22} {'pure (ms)':>12} {'compiled (ms)':>14} {'speedup':>9}")
    print("-" * 60)
    for label, t_pure, t_fast in bench_kernels(args.scale, args.repeat):
        ratio = t_pure / t_fast if t_fast > 0 else float("inf")
        print(f"{label:<22} {t_pure * 1e3:>12.3f} {t_fast * 1e3:>14.3f} "
              f"{ratio:>8.1f}x")

    t_pure, t_fast, cost = bench_designer(args.scale, max(1, args.repeat // 2))
    ratio = t_pure / t_fast if t_fast > 0 else float("inf")
    print("-" * 60)
    print(f"{'design (end-to-end)':<22} {t_pure * 1e3:>12.3f} "
          f"{t_fast * 1e3:>14.3f} {ratio:>8.1f}x")
    print(f"\n(end-to-end run designs a {60 * args.scale}-subsystem random "
          f"instance, union cost {cost}; identical outputs verified)")
    return 0


if __name__ == "__main__":
    sys.exit(main())
