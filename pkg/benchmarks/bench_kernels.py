"""Compare the compiled kernels with the pure-Python fallback.

    python benchmarks/bench_kernels.py [--repeat 5]

Each row times one kernel on the same inputs under both backends and
reports the best of ``--repeat`` runs.
"""

from __future__ import annotations

import argparse
import timeit

import numpy as np

from bicayley import _pure, kernels
from bicayley.graphs import named_graph
from bicayley.isomorph import _Searcher

try:
    from bicayley import _speedups
except ImportError:  # extension not built
    _speedups = None


def _csr(name):
    g = named_graph(name)
    return g, np.array(g.indptr, dtype=np.int32), np.array(g.indices, dtype=np.int32)


def _refine_case(mod, name):
    g, ptr, idx = _csr(name)
    root = _Searcher(g, None).root()

    def go():
        lab, cof, cend = root.lab.copy(), root.cell_of.copy(), root.cell_end.copy()
        # individualize vertex lab[0] and refine
        e = int(cend[0])
        cend[0] = 1
        cend[1] = e
        cof[lab[1:e]] = 1
        mod.refine(ptr, idx, lab, cof, cend, [0])
    return go


def _leaf_case(mod, name):
    g, ptr, idx = _csr(name)
    lab = np.arange(g.n, dtype=np.int32)
    return lambda: mod.leaf_key(ptr, idx, lab)


def _closure_case(mod, degree):
    cyc = np.roll(np.arange(degree, dtype=np.int32), -1)
    swap = np.arange(degree, dtype=np.int32)
    swap[[0, 1]] = [1, 0]
    gens = np.stack([cyc, swap])
    return lambda: mod.closure(gens, 10 ** 7)


def _arcs_case(mod, name, s):
    _, ptr, idx = _csr(name)
    return lambda: mod.count_s_arcs(ptr, idx, s)


CASES = [
    ("refine tutte_coxeter", lambda m: _refine_case(m, "tutte_coxeter")),
    ("refine desargues", lambda m: _refine_case(m, "desargues")),
    ("leaf_key tutte_coxeter", lambda m: _leaf_case(m, "tutte_coxeter")),
    ("closure S7", lambda m: _closure_case(m, 7)),
    ("count_s_arcs pappus s=8", lambda m: _arcs_case(m, "pappus", 8)),
]


def bench(fn, repeat: int) -> float:
    number = max(1, int(0.05 / max(timeit.timeit(fn, number=1), 1e-7)))
    return min(timeit.repeat(fn, number=number, repeat=repeat)) / number


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args(argv)
    print(f"active backend: {kernels.BACKEND}")
    if _speedups is None:
        print("compiled extension not built; only the pure backend is available")
    print(f"{'kernel':<26} {'python (ms)':>12} {'cython (ms)':>12} {'speedup':>8}")
    for label, make in CASES:
        t_py = bench(make(_pure), args.repeat) * 1e3
        if _speedups is None:
            print(f"{label:<26} {t_py:>12.3f} {'-':>12} {'-':>8}")
            continue
        t_cy = bench(make(_speedups), args.repeat) * 1e3
        print(f"{label:<26} {t_py:>12.3f} {t_cy:>12.3f} {t_py / t_cy:>7.1f}x")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
