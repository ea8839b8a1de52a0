"""Time the numba kernels against their pure-numpy fallbacks.

    python benchmarks/bench_kernels.py [--repeat 5]

Both backends are taken from ``afmspec.kernels.KERNELS`` in one process, so
numba must be importable and ``AFMSPEC_DISABLE_NUMBA`` unset.  A final
end-to-end row times one critical-height table in a subprocess per backend.
"""
import argparse
import math
import os
import subprocess
import sys
import timeit

import numpy as np

from afmspec import kernels
from afmspec.oracle import laguerre_nodes


def cases():
    dt = 1e-3
    t = np.arange(math.log(1e-6), math.log(60.0), dt)
    x = np.exp(t)
    pot = np.exp(2.0 * t - x)
    x2 = x * x
    gs = np.linspace(1.0, 90.0, 64)
    es = np.zeros(64)
    nodes = laguerre_nodes(400)
    zp = np.linspace(-1 / math.e, 20.0, 20000)
    zl = -np.geomspace(1e-10, 1 / math.e, 20000)
    return {
        "numerov_sweep (64 columns)": ("numerov_sweep", (pot, x2, 0.25, dt, gs, es, 1.0, math.exp(0.5 * dt))),
        "laguerre_kinetic (N=400)": ("laguerre_kinetic", (nodes,)),
        "lambertw W0 (20k points)": ("lambertw_array", (zp, False, 1e-15, 100)),
        "lambertw W-1 (20k points)": ("lambertw_array", (zl, True, 1e-15, 100)),
    }


def best_of(fn, args, repeat):
    fn(*args)  # warm-up / compile
    return min(timeit.repeat(lambda: fn(*args), number=1, repeat=repeat))


def end_to_end(disable):
    code = ("import time\nfrom afmspec.oracle import exact_critical_height\nt=time.perf_counter()\n"
            "[exact_critical_height(0.0, n, l) for n in range(4) for l in range(4)]\n"
            "print(time.perf_counter()-t)")
    env = dict(os.environ)
    env.pop("AFMSPEC_DISABLE_NUMBA", None)
    if disable:
        env["AFMSPEC_DISABLE_NUMBA"] = "1"
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
    return float(out.stdout.strip())


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--skip-end-to-end", action="store_true")
    args = ap.parse_args(argv)
    if "numba" not in kernels.KERNELS:
        sys.exit("numba backend unavailable; unset AFMSPEC_DISABLE_NUMBA and install numba")
    print(f"{'kernel':<30}{'numba [ms]':>12}{'numpy [ms]':>12}{'speed-up':>10}")
    for label, (name, fargs) in cases().items():
        tn = best_of(kernels.KERNELS["numba"][name], fargs, args.repeat)
        tp = best_of(kernels.KERNELS["numpy"][name], fargs, args.repeat)
        print(f"{label:<30}{1e3 * tn:>12.2f}{1e3 * tp:>12.2f}{tp / tn:>10.1f}")
    if not args.skip_end_to_end:
        end_to_end(False)  # populate the numba cache
        tn, tp = end_to_end(False), end_to_end(True)
        print(f"{'critical table 4x4 (end-to-end)':<30}{1e3 * tn:>12.0f}{1e3 * tp:>12.0f}{tp / tn:>10.1f}")


if __name__ == "__main__":
    main()
