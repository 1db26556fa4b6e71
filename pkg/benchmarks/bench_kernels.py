"""Benchmark the numba and numpy kernel paths against each other.

Runs the exact code search and the edge-pair sweep over a spread of
zero-divisor graphs under both backends, checks the answers match, and
prints a timing table.  Run as:

    python benchmarks/bench_kernels.py
"""

import os
import statistics
import time

os.environ.setdefault("ZDCODES_BACKEND", "auto")

from zdcodes import kernels, make_zn, zero_divisor_graph  # noqa: E402
from zdcodes.tpc import find_tpc  # noqa: E402
from zdcodes.zdg import tpc_pair_solver  # noqa: E402

CASES = [48, 96, 128, 144, 192, 200]
REPEATS = 5


def timed(fn, repeats=REPEATS):
    best = []
    out = None
    for _ in range(repeats):
        t0 = time.perf_counter()
        out = fn()
        best.append(time.perf_counter() - t0)
    return out, statistics.median(best)


def with_backend(name: str, fn):
    prev = os.environ.get("ZDCODES_BACKEND")
    os.environ["ZDCODES_BACKEND"] = name
    try:
        return fn()
    finally:
        if prev is None:
            del os.environ["ZDCODES_BACKEND"]
        else:
            os.environ["ZDCODES_BACKEND"] = prev


def main():
    if not kernels.HAS_NUMBA:
        print("numba is not importable; only the numpy path can be timed")
    print(f"{'instance':<16}{'vertices':>9}{'numpy (ms)':>12}{'numba (ms)':>12}{'speedup':>9}")
    for n in CASES:
        z = zero_divisor_graph(make_zn(n))
        g = z.graph
        # warm the JIT outside the timed region
        if kernels.HAS_NUMBA:
            with_backend("numba", lambda: find_tpc(g, bound=g.n))
        out_np, t_np = with_backend("numpy", lambda: timed(lambda: find_tpc(g, bound=g.n)))
        row = f"{'search Z' + str(n):<16}{g.n:>9}{t_np * 1e3:>12.2f}"
        if kernels.HAS_NUMBA:
            out_nb, t_nb = with_backend("numba", lambda: timed(lambda: find_tpc(g, bound=g.n)))
            assert out_np == out_nb, f"backend mismatch on Z{n}"
            row += f"{t_nb * 1e3:>12.2f}{t_np / t_nb:>9.1f}x"
        print(row)
    for n in CASES:
        z = zero_divisor_graph(make_zn(n))
        out_np, t_np = with_backend("numpy", lambda: timed(lambda: tpc_pair_solver(z, find_all=True)))
        row = f"{'pairs Z' + str(n):<16}{z.graph.n:>9}{t_np * 1e3:>12.2f}"
        if kernels.HAS_NUMBA:
            with_backend("numba", lambda: tpc_pair_solver(z, find_all=True))
            out_nb, t_nb = with_backend(
                "numba", lambda: timed(lambda: tpc_pair_solver(z, find_all=True))
            )
            assert out_np == out_nb
            row += f"{t_nb * 1e3:>12.2f}{t_np / t_nb:>9.1f}x"
        print(row)


if __name__ == "__main__":
    main()
