"""Compare the compiled kernels with the pure-Python fallback.

    python benchmarks/bench_kernels.py [--repeat N]
"""

import argparse
import importlib
import random
import timeit

from plethys import _kernels_py


def workloads(rng):
    values = [rng.randint(-10**6, 10**6) for _ in range(200)]
    coeffs = [rng.randint(-50, 50) for _ in range(40)]
    grid = [rng.randint(-100, 100) for _ in range(13 * 13)]
    terms = [[rng.randint(0, 3) for _ in range(8)] for _ in range(60)]
    flat = [e for t in terms for e in t]
    coefs = [rng.randint(-9, 9) for _ in terms]
    point = [rng.randint(0, 96) for _ in range(8)]
    return {
        "forward_differences(200)": lambda k: k.forward_differences(values),
        "newton_values(40 -> 200)": lambda k: k.newton_values(coeffs, 200),
        "eval_binomial(deg 40)": lambda k: [k.eval_binomial(coeffs, a) for a in range(-50, 50)],
        "binomial_row(a, 60)": lambda k: [k.binomial_row(a, 60) for a in range(-20, 20)],
        "grid_forward_differences(13x13)": lambda k: k.grid_forward_differences(grid, [13, 13]),
        "binomial_to_monomial(deg 40)": lambda k: k.binomial_to_monomial(coeffs),
        "poly_eval_mod(60 terms, 8 vars)": lambda k: [k.poly_eval_mod(flat, 8, coefs, point, 97) for _ in range(20)],
        "binomial_tuples_mod(0..4096, d=8)": lambda k: k.binomial_tuples_mod(0, 4096, 8, 2**7),
    }


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=5)
    args = parser.parse_args()
    try:
        compiled = importlib.import_module("plethys._kernels")
    except ImportError:
        print("compiled extension not built; run `pip install -e . --no-build-isolation` first")
        return 1
    rng = random.Random(0)
    print(f"{'kernel':36s} {'python ms':>10s} {'compiled ms':>12s} {'speedup':>8s}")
    for name, fn in workloads(rng).items():
        assert fn(compiled) == fn(_kernels_py), name
        times = {}
        for label, mod in (("py", _kernels_py), ("c", compiled)):
            number = 5
            best = min(timeit.repeat(lambda: fn(mod), number=number, repeat=args.repeat)) / number
            times[label] = best * 1e3
        print(f"{name:36s} {times['py']:10.3f} {times['c']:12.3f} {times['py'] / times['c']:7.1f}x")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
