"""Time the numba kernels against the numpy fallback.

    python benchmarks/bench_kernels.py --levels 8 10 --repeat 3
"""
import argparse
import time

import numpy as np

from czlab.families import family
from czlab.kernels import KERNEL_NAMES, _nb, _np
from czlab.rearrangement import window_keep
from czlab.singular import _hilbert_taps


def make_args(name, n, rng):
    a = rng.normal(size=n)
    if name == "interval_maximal":
        return (np.abs(a),)
    if name == "multilinear_interval_maximal":
        return (np.abs(rng.normal(size=(2, n))),)
    if name == "spread_max":
        st, ln = family("shifted", n)
        return rng.normal(size=st.size), st, ln, n
    if name == "family_oscillation":
        st, ln = family("shifted", n)
        keep = np.array([window_keep(s, 0.25)[0] for s in ln], dtype=np.int64)
        return a, st, ln, keep
    if name == "family_sharp":
        st, ln = family("dyadic", n)
        return a, st, ln, 0.5, 1e-10
    if name == "toeplitz_apply":
        return a, _hilbert_taps(n, 1), n - 1
    if name == "hilbert_maximal":
        return (a,)
    if name == "kernel_commutator":
        return np.cos(a), a, 1, 1
    if name == "interval_ap":
        return np.exp(a), 2.0
    if name == "interval_bmo":
        return (a,)
    raise KeyError(name)


def best_time(fn, args, repeat):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--levels", type=int, nargs="+", default=[8, 10])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--kernels", nargs="+", default=list(KERNEL_NAMES))
    args = ap.parse_args()
    rng = np.random.default_rng(0)
    print(f"{'kernel':30s} {'L':>3s} {'numpy [s]':>11s} {'numba [s]':>11s} {'speedup':>8s}")
    for name in args.kernels:
        # compile outside the timed region
        getattr(_nb, name)(*make_args(name, 8, rng))
        for L in args.levels:
            inp = make_args(name, 1 << L, rng)
            t_np = best_time(getattr(_np, name), inp, args.repeat)
            t_nb = best_time(getattr(_nb, name), inp, args.repeat)
            print(f"{name:30s} {L:3d} {t_np:11.4f} {t_nb:11.4f} {t_np / t_nb:8.1f}", flush=True)


if __name__ == "__main__":
    main()
