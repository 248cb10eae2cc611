"""Benchmark the integer lattice kernels against the pure-Python fallback.

The compiled path is used automatically when numba is importable; setting
EULERDISC_NO_NUMBA=1 forces the fallback.  This script times both paths in
subprocesses so each one starts from a clean import.

Usage: python3 scripts/bench_kernels.py [--sizes 4,6,8] [--repeats 5]
"""

import argparse
import json
import os
import subprocess
import sys

WORKER = r"""
import json, os, random, sys, time

from eulerdisc import kernels

sizes = json.loads(sys.argv[1])
repeats = int(sys.argv[2])
rng = random.Random(0)
report = {"numba": kernels.USING_NUMBA, "det": {}, "normals": {}}

for n in sizes:
    mats = [
        [[rng.randint(-9, 9) for _ in range(n)] for _ in range(n)]
        for _ in range(200)
    ]
    kernels.batch_det(mats[:1])  # warm-up excludes one-time compilation cost
    start = time.perf_counter()
    for _ in range(repeats):
        kernels.batch_det(mats)
    report["det"][n] = (time.perf_counter() - start) / repeats

    point_sets = [
        [[rng.randint(0, 6) for _ in range(n)] for _ in range(n)]
        for _ in range(150)
    ]
    kernels.batch_normals(point_sets[:1])
    start = time.perf_counter()
    for _ in range(repeats):
        kernels.batch_normals(point_sets)
    report["normals"][n] = (time.perf_counter() - start) / repeats

print(json.dumps(report))
"""


def run_worker(sizes, repeats, no_numba):
    env = dict(os.environ)
    if no_numba:
        env["EULERDISC_NO_NUMBA"] = "1"
    else:
        env.pop("EULERDISC_NO_NUMBA", None)
    out = subprocess.run(
        [sys.executable, "-c", WORKER, json.dumps(sizes), str(repeats)],
        capture_output=True,
        text=True,
        env=env,
        check=True,
    )
    return json.loads(out.stdout)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--sizes", default="4,6,8")
    ap.add_argument("--repeats", type=int, default=5)
    args = ap.parse_args()
    sizes = [int(s) for s in args.sizes.split(",")]

    fast = run_worker(sizes, args.repeats, no_numba=False)
    slow = run_worker(sizes, args.repeats, no_numba=True)
    if not fast["numba"]:
        print("note: numba unavailable; both runs use the pure-Python path")

    print(f"{'kernel':<10}{'n':>4}{'compiled':>12}{'fallback':>12}{'speedup':>10}")
    for kind in ("det", "normals"):
        for n in sizes:
            a = fast[kind][str(n)]
            b = slow[kind][str(n)]
            ratio = b / a if a > 0 else float("inf")
            print(f"{kind:<10}{n:>4}{a:>12.4f}{b:>12.4f}{ratio:>9.1f}x")


if __name__ == "__main__":
    main()
