"""Time the compiled kernels against the pure-Python fallback.

    python3 benchmarks/bench_kernels.py [--repeat N] [--json]
"""

import argparse
import json
import sys
import timeit

import numpy as np

from spectrabound import _pykernels
from spectrabound.graphs import generate

try:
    from spectrabound import _kernels
except ImportError:
    _kernels = None


def _cases():
    rng = np.random.default_rng(0)
    out = []
    for n in (10, 50, 200):
        A = rng.uniform(0.0, 1.0, (n, n)) * (rng.random((n, n)) < 0.3)
        np.fill_diagonal(A, 0.0)
        A[np.arange(n), (np.arange(n) + 1) % n] = 1.0  # Hamiltonian cycle keeps it irreducible
        out.append((f"power_iterate n={n}", "power_iterate", (A, 1e-12, 200 * n + 10000)))
    for n in (30, 120):
        adj = generate("gnp", n, 4.0 / n, seed=n).adjacency()
        out.append((f"bfs_distances n={n}", "bfs_distances", (adj,)))
    for a, b in ((3, 4), (4, 4)):
        out.append((f"enumerate_bipartite {a}x{b}", "enumerate_bipartite", (a, b)))
    return out


def _best(fn, args, repeat):
    timer = timeit.Timer(lambda: fn(*args))
    number, _ = timer.autorange()
    return min(timer.repeat(repeat=repeat, number=number)) / number


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--json", action="store_true")
    args = ap.parse_args(argv)
    if _kernels is None:
        print("compiled extension not built; nothing to compare", file=sys.stderr)
        return 1

    rows = []
    for label, name, fargs in _cases():
        slow = _best(getattr(_pykernels, name), fargs, args.repeat)
        fast = _best(getattr(_kernels, name), fargs, args.repeat)
        rows.append({"case": label, "python_s": slow, "cython_s": fast, "speedup": slow / fast})

    if args.json:
        print(json.dumps(rows, indent=2))
    else:
        print(f"{'case':<28}{'python':>12}{'cython':>12}{'speedup':>10}")
        for r in rows:
            print(f"{r['case']:<28}{r['python_s']:>11.3g}s{r['cython_s']:>11.3g}s{r['speedup']:>9.1f}x")
    return 0


if __name__ == "__main__":
    sys.exit(main())
