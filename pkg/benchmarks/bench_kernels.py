"""Numba vs pure-numpy timings for the enumeration kernels.

    python3 benchmarks/bench_kernels.py [--repeat 3]

Each case runs once per backend to warm up, then ``--repeat`` timed runs;
the script stops if the two backends ever return different answers.
"""
import argparse
import random
import time

from locdom import kernels
from locdom.generators import gnp, random_cnf
from locdom.oracles import brute_force_lds_opt, clause_masks


def lds_case(n, p, seed):
    # one below the optimum, so the kernel scans every subset of that size
    g = gnp(n, p, random.Random(seed))
    size = brute_force_lds_opt(g) - 1
    return (g.masks, list(range(n)), True, 0, range(n), size)


def time_call(fn, repeat):
    fn()  # warm-up, includes jit compilation
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t0)
    return out, best


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()

    cases = []
    for n in (12, 14, 16):
        nbr, sb, dom, base, cand, k = lds_case(n, 0.3, n)
        cases.append((f"lds n={n} k={k}", lambda b, a=(nbr, sb, dom, base, cand, k): kernels.first_locating_subset(*a, backend=b)))
    for nv in (16, 20):
        f = random_cnf(nv, variables=nv, min_clauses=3 * nv, max_clauses=3 * nv)
        pos, neg = clause_masks(f)
        cases.append((f"#sat vars={nv}", lambda b, a=(pos, neg, nv): kernels.count_satisfying(*a, backend=b)))

    print(f"{'case':<18}{'numba ms':>12}{'numpy ms':>12}{'speedup':>10}")
    for name, fn in cases:
        r_jit, t_jit = time_call(lambda: fn("numba"), args.repeat)
        r_vec, t_vec = time_call(lambda: fn("numpy"), args.repeat)
        if r_jit != r_vec:
            raise SystemExit(f"{name}: backends disagree ({r_jit} vs {r_vec})")
        print(f"{name:<18}{t_jit * 1e3:>12.2f}{t_vec * 1e3:>12.2f}{t_vec / t_jit:>10.1f}")


if __name__ == "__main__":
    main()
