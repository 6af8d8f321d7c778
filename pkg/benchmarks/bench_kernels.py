"""Time the numba kernels against their numpy twins.

    python3 benchmarks/bench_kernels.py [--repeat 3] [--greedy 150] [--primes 1009,5003]
"""

from __future__ import annotations

import argparse
import time

from pdsets import kernels, ruzsa_sidon


def best_of(fn, repeat):
    best = float("inf")
    result = None
    for _ in range(repeat):
        start = time.perf_counter()
        result = fn()
        best = min(best, time.perf_counter() - start)
    return best, result


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--greedy", type=int, default=150, help="greedy upto N")
    ap.add_argument("--primes", default="1009,5003", help="Ruzsa primes for the Sidon check")
    args = ap.parse_args(argv)

    # compile outside the timed region
    kernels.sidon_collision_numba(ruzsa_sidon(11).as_array())
    kernels.greedy_pairs_numba(3)

    rows = []
    for p in (int(v) for v in args.primes.split(",")):
        a = ruzsa_sidon(p).as_array()
        tn, rn = best_of(lambda: kernels.sidon_collision_numba(a), args.repeat)
        tp, rp = best_of(lambda: kernels.sidon_collision_numpy(a), args.repeat)
        assert (rn is None) == (rp is None)
        rows.append((f"sidon R_{p} ({len(a)} elems)", tn, tp))

    tn, (en, _) = best_of(lambda: kernels.greedy_pairs_numba(args.greedy), args.repeat)
    tp, (ep, _) = best_of(lambda: kernels.greedy_pairs_numpy(args.greedy), 1)
    assert list(en) == list(ep)
    rows.append((f"greedy N={args.greedy}", tn, tp))

    print(f"{'kernel':32s} {'numba s':>10s} {'numpy s':>10s} {'speedup':>8s}")
    for name, tn, tp in rows:
        print(f"{name:32s} {tn:10.4f} {tp:10.4f} {tp / tn:8.1f}")


if __name__ == "__main__":
    main()
