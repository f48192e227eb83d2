"""Time the compiled kernels against the numpy fallback.

    python benchmarks/bench_kernels.py [--repeat 5]

Prints one line per kernel with the best-of-N time for each backend and the
speed-up.  Exits quietly with a note if the extension is not built.
"""
import argparse
import timeit

import numpy as np

from pqstancu import _pykernels

try:
    from pqstancu import _ckernels
except ImportError:
    _ckernels = None


def cases():
    xs = np.linspace(0.0, 1.0, 201)
    rng = np.random.default_rng(0)
    vals = np.sin(np.pi * np.linspace(0.0, 2.0, 2049)) + 1e-3 * rng.normal(size=2049)
    return [
        ("basis_matrix N=201", "basis_matrix", (0.995, 201, xs, False)),
        ("basis_matrix N=800 log", "basis_matrix", (0.999, 800, xs, True)),
        ("modulus_profile k=512", "modulus_profile", (vals, 512)),
        ("second_difference k=512", "second_difference_profile", (vals, 512)),
        ("lipschitz_max a=0.5", "lipschitz_max", (vals, 2.0 / 2048, 0.5)),
    ]


def best_time(fn, args, repeat):
    number = 3
    return min(timeit.repeat(lambda: fn(*args), number=number, repeat=repeat)) / number


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    if _ckernels is None:
        print("compiled kernels not built; run `python setup.py build_ext --inplace` first")
        return
    print(f"{'kernel':<26} {'numpy [ms]':>11} {'cython [ms]':>12} {'speed-up':>9}")
    for label, name, fargs in cases():
        tp = best_time(getattr(_pykernels, name), fargs, args.repeat)
        tc = best_time(getattr(_ckernels, name), fargs, args.repeat)
        print(f"{label:<26} {tp * 1e3:11.3f} {tc * 1e3:12.3f} {tp / tc:8.1f}x")


if __name__ == "__main__":
    main()
