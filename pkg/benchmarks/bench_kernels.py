#!/usr/bin/env python3
"""Benchmark the tridiagonal pencil kernels: compiled extension vs pure Python.

Times the two hot operations (single inertia count, full smallest-eigenvalue
bisection) on assembled forms of realistic sizes, plus one end-to-end
principal-eigenvalue solve per backend.

Usage: python benchmarks/bench_kernels.py [--sizes 500,2000,4000]
"""

import argparse
import os
import subprocess
import sys
import time

from drifteig import BangBangInterval, Boundary, ModelParams, make_discretization
from drifteig import _kernels_py
from drifteig.eigensolve import _pencil_bracket, assemble

try:
    from drifteig import _tridiag

    BACKENDS = [("pure", _kernels_py), ("compiled", _tridiag)]
except ImportError:
    print("compiled extension not built; benchmarking the pure backend only")
    BACKENDS = [("pure", _kernels_py)]


def _forms(n):
    p = ModelParams(0.2, 1.0, 0.4)
    w = BangBangInterval(0.2, 0.3, p).weight()
    disc = make_discretization(n, w)
    return assemble(w, p, Boundary.robin(1.0), disc)


def _time(fn, min_time=0.2):
    fn()  # warm up
    reps = 1
    while True:
        t0 = time.perf_counter()
        for _ in range(reps):
            fn()
        dt = time.perf_counter() - t0
        if dt >= min_time:
            return dt / reps
        reps = max(reps * 2, int(reps * min_time / max(dt, 1e-9)))


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--sizes", default="500,2000,4000")
    args = ap.parse_args()
    sizes = [int(s) for s in args.sizes.split(",")]

    print(f"{'n':>6} {'backend':>9} {'inertia_count':>16} {'smallest_eig':>15} {'speedup':>8}")
    for n in sizes:
        f = _forms(n)
        ad = f.kd - 5.0 * f.bd
        ae = f.ke - 5.0 * f.be
        lo, hi = _pencil_bracket(ad, ae, f.md, f.me)
        eig_times = {}
        for name, impl in BACKENDS:
            t_count = _time(lambda: impl.pencil_inertia(ad, ae, f.md, f.me, 1.0))
            t_eig = _time(
                lambda: impl.smallest_pencil_eigenvalue(
                    ad, ae, f.md, f.me, lo, hi, 1e-8, 1e-12, 200
                )
            )
            eig_times[name] = t_eig
            if name == "compiled":
                tag = f"{eig_times['pure'] / t_eig:6.1f}x"
            else:
                tag = "   ref"
            print(
                f"{n:>6} {name:>9} {t_count * 1e6:>13.1f} us {t_eig * 1e3:>12.3f} ms {tag:>8}"
            )

    code = (
        "import time; from drifteig import *;"
        "p = ModelParams(0.2, 1.0, 0.4);"
        "w = BangBangInterval(0.2, 0.3, p).weight();"
        "d = make_discretization(2000, w);"
        "principal_eigenvalue(w, p, Boundary.robin(1.0), d);"
        "t0 = time.perf_counter();"
        "[principal_eigenvalue(w, p, Boundary.robin(1.0), d) for _ in range(5)];"
        "print((time.perf_counter() - t0) / 5)"
    )
    print()
    for name, env_val in (("pure", "1"), ("compiled", "0")):
        if name == "compiled" and len(BACKENDS) == 1:
            continue
        env = dict(os.environ, DRIFTEIG_PURE=env_val)
        out = subprocess.run(
            [sys.executable, "-c", code], env=env, capture_output=True, text=True
        )
        print(f"principal_eigenvalue n=2000, {name:>9}: {float(out.stdout) * 1e3:8.2f} ms")


if __name__ == "__main__":
    main()
