"""Compare the Cython and pure-Python Jacobi eigensolvers.

    python3 benchmarks/bench_jacobi.py [--dims 2,4,8,16] [--reps 200]

Each backend is imported directly, so both run in the same process.
"""
import argparse
import timeit

import numpy as np

from pslab import _jacobi_py
from pslab.hermitian import JACOBI_MAX_SWEEPS, JACOBI_TOL, random_hermitian

try:
    from pslab import _jacobi_ext
except ImportError:
    _jacobi_ext = None


def bench(mod, mats):
    def run():
        for m in mats:
            mod.jacobi_eigh(m, JACOBI_TOL, JACOBI_MAX_SWEEPS)

    return min(timeit.repeat(run, number=1, repeat=3)) / len(mats) * 1e6


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--dims", default="2,4,8,16")
    parser.add_argument("--reps", type=int, default=200)
    args = parser.parse_args()
    if _jacobi_ext is None:
        print("compiled extension not built; only the Python kernel is available")
    print(f"{'d':>4} {'python us':>12} {'cython us':>12} {'speedup':>9} {'max |dw|':>10}")
    for d in (int(x) for x in args.dims.split(",")):
        mats = [np.ascontiguousarray(random_hermitian(s, d), dtype=np.complex128) for s in range(args.reps)]
        t_py = bench(_jacobi_py, mats)
        if _jacobi_ext is None:
            print(f"{d:>4} {t_py:>12.1f}")
            continue
        t_cy = bench(_jacobi_ext, mats)
        dw = max(
            float(np.max(np.abs(np.sort(_jacobi_py.jacobi_eigh(m, JACOBI_TOL, JACOBI_MAX_SWEEPS)[0])
                                - np.sort(_jacobi_ext.jacobi_eigh(m, JACOBI_TOL, JACOBI_MAX_SWEEPS)[0]))))
            for m in mats[:20]
        )
        print(f"{d:>4} {t_py:>12.1f} {t_cy:>12.1f} {t_py / t_cy:>8.1f}x {dw:>10.1e}")


if __name__ == "__main__":
    main()
