"""Timing of the compiled kernels against their pure-Python twins.

Run with ``python3 benchmarks/bench_kernels.py``. Each kernel is timed on
the workload the solvers actually give it: Sturm bisection on an oracle
matrix, and the local Airy series step.
"""

from __future__ import annotations

import argparse
import timeit

import numpy as np

from boxwkb import Geometry, MeshSpec, Potential
from boxwkb._kernels import python_kernels
from boxwkb.oracle import _matrix


def _compiled():
    try:
        from boxwkb._kernels import _ckernels
    except ImportError:
        return None
    return _ckernels


def _bench(label, fn, repeat):
    best = min(timeit.repeat(fn, number=1, repeat=repeat))
    print(f"  {label:<8} {best * 1e3:10.3f} ms")
    return best


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--points", type=int, default=2048, help="oracle mesh size")
    parser.add_argument("--levels", type=int, default=4, help="eigenvalues per bisection run")
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args()

    compiled = _compiled()
    backends = [("python", python_kernels)]
    if compiled is None:
        print("compiled kernels are not built; timing the Python fallback only")
    else:
        backends.insert(0, ("cython", compiled))

    _, diag, off2, inv_h2 = _matrix(Potential(1.0, 4.0), Geometry.symmetric(1.0), MeshSpec(args.points))
    lo = float(diag.min()) - 2 * inv_h2
    hi = float(diag.max()) + 2 * inv_h2

    print(f"Sturm bisection, {args.points} points, {args.levels} levels")
    times = {}
    for name, mod in backends:
        times[name] = _bench(name, lambda: [mod.bisect_eigenvalue(diag, off2, k, lo, hi)
                                            for k in range(args.levels)], args.repeat)
    if len(times) == 2:
        print(f"  speed-up {times['python'] / times['cython']:.1f}x")

    xs = np.linspace(-9.5, 9.5, 2000)
    print(f"Airy local series, {xs.size} steps")
    times = {}
    for name, mod in backends:
        times[name] = _bench(name, lambda: [mod.airy_local(float(x), 0.3, -0.2, 0.6, 0.4, 0.24)
                                            for x in xs], args.repeat)
    if len(times) == 2:
        print(f"  speed-up {times['python'] / times['cython']:.1f}x")


if __name__ == "__main__":
    main()
