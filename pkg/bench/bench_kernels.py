"""Compare the compiled and pure-Python kernel backends.

Two measurements on the same seeded workload:

* kernel level: ``find_redexes``/``successors``/``has_redex``/``substitute``
  called directly on both backend modules;
* end to end: bounded reduction-graph exploration, run once per backend in
  a subprocess (``TRSDP_PURE_PYTHON=1`` selects the fallback).

Usage: python bench/bench_kernels.py [--systems N] [--repeat K]
"""

import argparse
import os
import random
import subprocess
import sys
import time

from trsdp.generate import random_rlo_trs, random_start_term, random_trace
from trsdp.kernels import available_backends


def workload(n_systems, seed=0):
    rng = random.Random(seed)
    cases = []
    for _ in range(n_systems):
        R = random_rlo_trs(rng, max_rules=5)
        terms = []
        for _ in range(5):
            s = random_start_term(rng, R, 4)
            terms.extend(random_trace(rng, R, s, 6).terms())
        cases.append((R, terms))
    return cases


def kernel_pass(mod, cases):
    n = 0
    for R, terms in cases:
        index, rhss = R.lhs_index, R.rhss
        for t in terms:
            n += len(mod.find_redexes(t, index))
            n += len(mod.find_redexes(t, index, True))
            n += len(mod.successors(t, index, rhss))
            n += mod.has_redex(t, index)
            for r in R:
                binds = {}
                if mod.match_into(r.lhs, t, binds):
                    mod.substitute(r.rhs, binds)
    return n


def bench_kernels(cases, repeat):
    results = {}
    for name, mod in available_backends().items():
        best = float("inf")
        for _ in range(repeat):
            t0 = time.perf_counter()
            checksum = kernel_pass(mod, cases)
            best = min(best, time.perf_counter() - t0)
        results[name] = (best, checksum)
    return results


_E2E = """
import hashlib, random, time
from trsdp import BACKEND, Fuel, is_terminating_bounded
from trsdp.generate import random_rlo_trs, random_start_term
rng = random.Random(1)
fuel = Fuel(300, 60)
t0 = time.perf_counter()
verdicts = []
for _ in range({n}):
    R = random_rlo_trs(rng)
    for _ in range(3):
        verdicts.append(is_terminating_bounded(random_start_term(rng, R, 3), R, fuel).verdict.value)
print(BACKEND, time.perf_counter() - t0, hashlib.sha1(','.join(verdicts).encode()).hexdigest()[:12])
"""


def bench_end_to_end(n_systems):
    out = {}
    for pure in ("0", "1"):
        env = dict(os.environ, TRSDP_PURE_PYTHON=pure)
        proc = subprocess.run([sys.executable, "-c", _E2E.format(n=n_systems)], env=env,
                              capture_output=True, text=True, check=True)
        name, secs, digest = proc.stdout.split()
        out[name] = (float(secs), digest)
    return out


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--systems", type=int, default=200)
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()

    cases = workload(args.systems)
    n_terms = sum(len(ts) for _, ts in cases)
    print(f"kernel workload: {args.systems} systems, {n_terms} terms (best of {args.repeat})")
    res = bench_kernels(cases, args.repeat)
    for name, (secs, checksum) in res.items():
        print(f"  {name:8s} {secs * 1000:9.1f} ms   checksum {checksum}")
    if len(res) == 2:
        sums = {c for _, c in res.values()}
        print(f"  speedup  {res['python'][0] / res['cython'][0]:.2f}x   results agree: {len(sums) == 1}")
    else:
        print("  compiled backend not built; only the fallback was measured")

    print(f"end to end: bounded termination checks on {args.systems} systems")
    e2e = bench_end_to_end(args.systems)
    for name, (secs, digest) in e2e.items():
        print(f"  {name:8s} {secs:9.2f} s")
    if len(e2e) == 2:
        print(f"  speedup  {e2e['python'][0] / e2e['cython'][0]:.2f}x   "
              f"results agree: {len({d for _, d in e2e.values()}) == 1}")


if __name__ == "__main__":
    main()
