"""Compare the compiled kernels with their pure-Python twins.

    python3 benchmarks/bench_kernels.py [--repeat N]
"""
import argparse
import timeit

import numpy as np

from ncsep._kernels import _py, compiled_backend
from ncsep.construct import build_ncc_graph
from ncsep.separators import C_LABEL, best_coordinate_cut, level_lift_separator


def _refine_case(m):
    g = build_ncc_graph(m, seed=1)
    sep = level_lift_separator(g)
    labels = sep.labels(g.n)
    order = np.random.default_rng(0).permutation(np.flatnonzero(labels == C_LABEL))
    lo = int(np.ceil(sep.c * g.n))
    hi = int((1 - sep.c) * g.n)
    return np.ascontiguousarray(g.adj), labels, order, lo, hi


def _time(fn, repeat):
    return min(timeit.repeat(fn, number=1, repeat=repeat))


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    if compiled_backend is None:
        print("compiled kernels are not built; only the Python timings are shown")
    backends = [("python", _py)] + ([("cython", compiled_backend)] if compiled_backend else [])

    print(f"{'kernel':<28}{'backend':<9}{'seconds':>10}{'speed-up':>10}")
    for m in (14, 18):
        base = None
        for name, mod in backends:
            t = _time(lambda: mod.harper_profile(m), args.repeat)
            base = base or t
            print(f"{'harper_profile m=' + str(m):<28}{name:<9}{t:>10.4f}{base / t:>9.1f}x")
    for m in (8, 11):
        case = _refine_case(m)
        base = None
        for name, mod in backends:
            adj, labels, order, lo, hi = case
            t = _time(lambda: mod.refine_pass(adj, labels.copy(), order, lo, hi), args.repeat)
            base = base or t
            print(f"{'refine_pass m=' + str(m) + f' |C|={len(order)}':<28}{name:<9}{t:>10.4f}{base / t:>9.1f}x")
    # the whole separate pipeline is dominated by numpy, not the kernels
    g = build_ncc_graph(12)
    t = _time(lambda: best_coordinate_cut(g), args.repeat)
    print(f"{'best_coordinate_cut m=12':<28}{'numpy':<9}{t:>10.4f}")


if __name__ == "__main__":
    main()
