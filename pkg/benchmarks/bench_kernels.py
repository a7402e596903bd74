"""Time the compiled kernels against their pure-Python twins.

    python3 benchmarks/bench_kernels.py [--repeat N]
"""
import argparse
import random
import timeit

from ietlang import _purepy

try:
    from ietlang import _speedups
except ImportError:
    _speedups = None


def workloads(rng):
    word = [rng.randrange(3) for _ in range(200)]
    # sorted on both sides, so no crossing exists and every pair is compared
    xs = sorted(rng.randrange(6) for _ in range(40))
    ys = sorted(rng.randrange(6) for _ in range(40))
    starts, ends, shifts = [0, 309, 723], [309, 723, 1000], [691, -32, -723]
    cyl = [rng.randrange(3) for _ in range(30)]
    witness = [[2, 2, 1, 1, 2], [0, 2, 1, 1]]
    return {
        "bwt_codes": (lambda m: m.bwt_codes(word)),
        "clusters_codes": (lambda m: m.clusters_codes(word, [2, 1, 0])),
        "first_crossing": (lambda m: m.first_crossing(xs, ys)),
        "unit_cylinder": (lambda m: m.unit_cylinder(cyl, starts, ends, shifts)),
        "next_standard_witness": (lambda m: m.next_standard_witness(witness, [2, 1, 0], 24)),
    }


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    if _speedups is None:
        print("compiled extension not built; only the pure-Python timings are shown")
    print(f"{'kernel':24} {'python (ms)':>12} {'cython (ms)':>12} {'speedup':>8}")
    for name, call in workloads(random.Random(1)).items():
        if _speedups is not None:
            assert call(_purepy) == call(_speedups), name
        runs = 1 if name == "next_standard_witness" else 200

        def best(mod):
            return min(timeit.repeat(lambda: call(mod), number=runs, repeat=args.repeat)) / runs * 1e3

        py = best(_purepy)
        if _speedups is None:
            print(f"{name:24} {py:12.4f}")
            continue
        cy = best(_speedups)
        print(f"{name:24} {py:12.4f} {cy:12.4f} {py / cy:7.1f}x")


if __name__ == "__main__":
    main()
