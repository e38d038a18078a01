"""Compare the compiled and pure-Python exact kernels.

    python3 benchmarks/bench_kernels.py [--repeat 5] [--size 24]

Times rref and matmul on random Gaussian-integer matrices, then a full
``verify`` of the catalog with each backend swapped in.
"""

import argparse
import random
import time

from symcheck import _kernels
from symcheck.report import RunConfig, build_report


def random_int_matrix(rng, n, m, bound=9):
    return [[rng.randint(-bound, bound) for _ in range(m)] for _ in range(n)]


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def bench_rref(mod, rng_seed, size, repeat):
    rng = random.Random(rng_seed)
    # rank-deficient on purpose so the back substitution does real work
    re = random_int_matrix(rng, size, size)
    im = random_int_matrix(rng, size, size)
    re[-1] = [a + b for a, b in zip(re[0], re[1])]
    im[-1] = [a + b for a, b in zip(im[0], im[1])]
    return best_of(lambda: mod.rref_int([r[:] for r in re], [r[:] for r in im], size), repeat)


def bench_matmul(mod, rng_seed, size, repeat):
    rng = random.Random(rng_seed)
    a = [random_int_matrix(rng, size, size, 10**6) for _ in range(2)]
    b = [random_int_matrix(rng, size, size, 10**6) for _ in range(2)]
    return best_of(lambda: mod.matmul_int(a[0], a[1], b[0], b[1]), repeat)


def bench_verify(mod, repeat):
    saved = _kernels.rref_int, _kernels.matmul_int
    _kernels.rref_int, _kernels.matmul_int = mod.rref_int, mod.matmul_int
    try:
        return best_of(lambda: build_report(RunConfig(samples=20)), repeat)
    finally:
        _kernels.rref_int, _kernels.matmul_int = saved


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=5)
    parser.add_argument("--size", type=int, default=24)
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--skip-verify", action="store_true")
    args = parser.parse_args()

    mods = _kernels.backends()
    if "cython" not in mods:
        print("compiled kernels not built; only the Python backend is available")
    rows = []
    for name, mod in sorted(mods.items()):
        r = bench_rref(mod, args.seed, args.size, args.repeat)
        m = bench_matmul(mod, args.seed, args.size, args.repeat)
        v = None if args.skip_verify else bench_verify(mod, max(1, args.repeat // 5))
        rows.append((name, r, m, v))

    print(f"{'backend':<8} {'rref':>10} {'matmul':>10} {'verify':>10}")
    for name, r, m, v in rows:
        vs = "-" if v is None else f"{v:.3f}s"
        print(f"{name:<8} {r * 1e3:>8.2f}ms {m * 1e3:>8.2f}ms {vs:>10}")
    if len(rows) == 2:
        (_, r0, m0, v0), (_, r1, m1, v1) = rows
        line = f"speedup (python / cython): rref {r1 / r0:.2f}x, matmul {m1 / m0:.2f}x"
        if v0 is not None:
            line += f", verify {v1 / v0:.2f}x"
        print(line)


if __name__ == "__main__":
    main()
