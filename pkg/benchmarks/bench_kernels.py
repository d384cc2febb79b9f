"""Compare the compiled kernels with the pure-Python fallback.

    python benchmarks/bench_kernels.py [--repeat 5]

Times ``dpll`` on seeded random 3-CNF near the satisfiability threshold and
``tau`` on branching vectors of varying length, and prints the speedup.
"""

from __future__ import annotations

import argparse
import random
import timeit

from occursat import _kernels_py

try:
    from occursat import _kernels
except ImportError:
    _kernels = None


def flat(n: int, m: int, seed: int):
    rng = random.Random(seed)
    lits, starts = [], [0]
    for _ in range(m):
        for v in rng.sample(range(1, n + 1), 3):
            lits.append(v if rng.random() < 0.5 else -v)
        starts.append(len(lits))
    return n, lits, starts


def workloads():
    cnfs = [flat(n, round(4.26 * n), seed) for n in (20, 30, 40) for seed in range(5)]
    rng = random.Random(0)
    vectors = [[rng.randint(1, 15) for _ in range(rng.randint(2, 6))] for _ in range(500)]
    return {
        "dpll (15 instances, n=20..40)": lambda mod: [mod.dpll(*c) for c in cnfs],
        "tau (500 vectors)": lambda mod: [mod.tau(v) for v in vectors],
    }


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    if _kernels is None:
        raise SystemExit("compiled kernels not built; run pip install -e . first")
    print(f"{'kernel':32} {'python s':>10} {'compiled s':>11} {'speedup':>8}")
    for name, work in workloads().items():
        assert work(_kernels_py) == work(_kernels), name
        py = min(timeit.repeat(lambda: work(_kernels_py), number=1, repeat=args.repeat))
        cy = min(timeit.repeat(lambda: work(_kernels), number=1, repeat=args.repeat))
        print(f"{name:32} {py:10.4f} {cy:11.4f} {py / cy:7.1f}x")


if __name__ == "__main__":
    main()
