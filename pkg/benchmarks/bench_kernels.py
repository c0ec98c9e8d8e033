"""Time the compiled kernels against the pure-Python fallback.

Run with ``python3 benchmarks/bench_kernels.py``.  Each case is checked for
identical results on both backends before it is timed.
"""

from __future__ import annotations

import argparse
import math
import timeit

from roundelim import _kernels
from roundelim._kernels import fallback
from roundelim.graphs import Graph, cycle_graph, distance_graph, gadget_graph, suspension


def mycielski(G: Graph) -> Graph:
    """Triangle-free step raising the chromatic number by one."""
    n = G.vertex_count
    edges = list(G.edges())
    edges += [(u + n, v) for u, v in G.edges()] + [(v + n, u) for u, v in G.edges()]
    edges += [(2 * n, v + n) for v in range(n)]
    return Graph.from_edges(2 * n + 1, edges)


def _cases():
    offdiag = [math.sqrt((i + 1) * (64 - i)) / 2 for i in range(31)]
    yield "tridiag_max_eig(d=32)", lambda k: k.tridiag_max_eig(offdiag), lambda r: round(r, 9)
    G = distance_graph(6, [1, 2])
    yield "max_clique(dist<=2, n=6)", lambda k: k.max_clique(list(G.adj), G.vertex_count), lambda r: r[0]
    H = distance_graph(6, [3, 4, 5, 6])
    yield "max_clique(dist>=3, n=6)", lambda k: k.max_clique(list(H.adj), H.vertex_count), lambda r: r[0]
    S = gadget_graph(cycle_graph(5))
    yield f"chromatic_number(gadget, {S.vertex_count} v)", \
        lambda k: k.chromatic_number(list(S.adj), S.vertex_count), lambda r: r[0]
    M = mycielski(mycielski(cycle_graph(5)))
    yield f"chromatic_number(Mycielski, {M.vertex_count} v)", \
        lambda k: k.chromatic_number(list(M.adj), M.vertex_count), lambda r: r[0]
    C = suspension(cycle_graph(7), 2)
    yield "chromatic_number(C7 + K2)", lambda k: k.chromatic_number(list(C.adj), C.vertex_count), lambda r: r[0]


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    compiled = _kernels.compiled
    print(f"compiled core available: {compiled is not None}")
    print(f"{'case':40s} {'python ms':>12s} {'compiled ms':>12s} {'speedup':>8s}")
    for name, run, key in _cases():
        ref = key(run(fallback))
        t_py = min(timeit.repeat(lambda: run(fallback), number=1, repeat=args.repeat)) * 1e3
        if compiled is None:
            print(f"{name:40s} {t_py:12.3f} {'-':>12s} {'-':>8s}")
            continue
        if key(run(compiled)) != ref:
            raise SystemExit(f"{name}: backends disagree")
        t_c = min(timeit.repeat(lambda: run(compiled), number=1, repeat=args.repeat)) * 1e3
        print(f"{name:40s} {t_py:12.3f} {t_c:12.3f} {t_py / t_c:8.1f}")


if __name__ == "__main__":
    main()
