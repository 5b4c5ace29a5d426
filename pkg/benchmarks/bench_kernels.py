#!/usr/bin/env python3
"""Benchmark the numba kernels against their numpy/pure-Python fallbacks.

Workloads mirror where the workbench actually spends time: exhaustive
assignment scans for satisfaction checks, the multiplication-table census,
and batch canonicalization. Run as

    python benchmarks/bench_kernels.py [--full] [--repeats N]

--full adds the order-4 census (the heaviest workload).
"""

import argparse
import time

from aisemiring import _kernels
from aisemiring.algebra import registry
from aisemiring.enumeration import enumerate_semilattices
from aisemiring.family import make_family
from aisemiring.satisfaction import _compiled
from aisemiring.terms import Term, content


def best_of(fn, repeats):
    times = []
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def scan_workload(n):
    S = registry("S4_124")
    fam = make_family(n)
    variables = sorted(content(fam.u) | content(fam.q))
    vi = {x: i for i, x in enumerate(variables)}
    cu = _compiled(fam.u, vi)
    cq = _compiled(Term([fam.q]), vi)
    total = S.order ** len(variables)

    def run(backend):
        return _kernels.first_violation(
            S.add, S.mul, cu, cq, len(variables), 0, 0, total, backend=backend
        )

    return f"inequality scan, {total:,} assignments", run


def census_workload(k):
    lattices = enumerate_semilattices(k)

    def run(backend):
        return sum(
            _kernels.census_mul_tables(add, backend=backend).shape[0]
            for add in lattices
        )

    return f"multiplication census, order {k}", run


def canonical_workload(k):
    lattices = enumerate_semilattices(k)
    batches = [
        (add, _kernels.census_mul_tables(add)) for add in lattices
    ]

    def run(backend):
        n = 0
        for add, muls in batches:
            n += len(_kernels.canonical_pairs(add, muls, backend=backend))
        return n

    return f"canonical forms, order {k}", run


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--full", action="store_true",
                        help="include the order-4 census workload")
    parser.add_argument("--repeats", type=int, default=3)
    args = parser.parse_args()

    if "numba" not in _kernels.available_backends():
        parser.error("numba is not importable; nothing to compare")
    _kernels.warmup("numba")

    workloads = [
        scan_workload(2),
        scan_workload(3),
        census_workload(3),
        canonical_workload(3),
    ]
    if args.full:
        workloads.append(census_workload(4))
        workloads.append(canonical_workload(4))

    name_width = max(len(name) for name, _ in workloads)
    print(f"{'workload':<{name_width}}  {'numba':>10}  {'numpy':>10}  speedup")
    for name, run in workloads:
        nb = best_of(lambda: run("numba"), args.repeats)
        np_ = best_of(lambda: run("numpy"), args.repeats)
        print(
            f"{name:<{name_width}}  {nb * 1e3:>8.2f}ms  {np_ * 1e3:>8.2f}ms  "
            f"{np_ / nb:>6.1f}x"
        )


if __name__ == "__main__":
    main()
