"""Compare the numba and numpy batch kernels (and the scalar exact path).

    python3 benchmarks/bench_kernels.py --n 20000

Both backends are warmed up first so compile time is not counted.  The
script also checks that the two backends agree to 1e-9.
"""
import argparse
import time
from fractions import Fraction

import numpy as np

from lattice13 import kernels
from lattice13.core import SymMat
from lattice13.embedding import embed


def random_entries(n, seed):
    rng = np.random.default_rng(seed)
    out = np.empty((0, 6))
    while out.shape[0] < n:
        e = np.concatenate([rng.uniform(1, 10, (n, 3)), rng.uniform(-3, 3, (n, 3))], axis=1)
        S = np.stack([e[:, [0, 3, 4]], e[:, [3, 1, 5]], e[:, [4, 5, 2]]], axis=1)
        pd = np.linalg.eigvalsh(S).min(axis=1) > 1e-3
        out = np.vstack([out, e[pd]])
    return out[:n]


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--n", type=int, default=20000)
    ap.add_argument("--exact-n", type=int, default=200, help="rows for the scalar exact path")
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    E = random_entries(args.n, args.seed)
    backends = kernels.available_backends()
    for b in backends:  # warm-up / compile
        kernels.fingerprint_batch(E[:10], "m", backend=b)
        kernels.fingerprint_batch(E[:10], "s", backend=b)
        kernels.linf_pairs(E[:10], 0.1, backend=b)

    print(f"{'task':<22}{'backend':<10}{'seconds':>10}{'rows/s':>14}")
    results = {}
    for kind in ("s", "m"):
        for b in backends:
            t = best_of(lambda: kernels.fingerprint_batch(E, kind, backend=b), args.repeat)
            results[kind, b] = kernels.fingerprint_batch(E, kind, backend=b)[0]
            print(f"{'iota_' + kind:<22}{b:<10}{t:>10.4f}{args.n / t:>14.0f}")
        sub = E[:args.exact_n]
        t = best_of(lambda: [embed(SymMat.from_entries([Fraction(float(x)) for x in row]), kind)
                             for row in sub], 1)
        print(f"{'iota_' + kind + ' (exact)':<22}{'python':<10}{t:>10.4f}{len(sub) / t:>14.0f}")

    X = results["m", backends[-1]]
    m = min(args.n, 5000)
    for b in backends:
        t = best_of(lambda: kernels.linf_pairs(X[:m], 0.05, backend=b), args.repeat)
        print(f"{'linf_pairs n=' + str(m):<22}{b:<10}{t:>10.4f}{m * (m - 1) / 2 / t:>14.0f}")

    if len(backends) == 2:
        for kind in ("s", "m"):
            diff = np.nanmax(np.abs(results[kind, "numba"] - results[kind, "numpy"]))
            print(f"max |numba - numpy| for iota_{kind}: {diff:.3e}")
            assert diff < 1e-9


if __name__ == "__main__":
    main()
