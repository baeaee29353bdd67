"""Compare the compiled and pure-Python modular eliminators.

Runs two workloads with each backend:
  * random sparse systems fed row by row, followed by span queries;
  * the distribution certificate search (the heaviest span computation in the tests).

Usage: python3 bench/benchmark.py [--rows N] [--cols N] [--repeat N] [--skip-search]
"""
from __future__ import annotations

import argparse
import json
import os
import random
import statistics
import subprocess
import sys
import time

WORKER = r"""
import json, random, sys, time
from jacobidiag import kernel
rows, cols, density, seed, search = json.loads(sys.argv[1])
rng = random.Random(seed)
p = kernel.DEFAULT_PRIME
system = []
for _ in range(rows):
    support = sorted(rng.sample(range(cols), density))
    system.append((support, [rng.randrange(1, p) for _ in support]))
queries = system[: rows // 4]
t0 = time.perf_counter()
E = kernel.ModEliminator(p, True)
for c, v in system:
    E.add(c, v)
hits = sum(E.express(c, v) is not None for c, v in queries)
sparse = time.perf_counter() - t0
out = {"backend": kernel.BACKEND, "sparse": sparse, "rank": E.rank, "hits": hits}
if search:
    from jacobidiag.blanchfield import cyclic_module
    from jacobidiag.canon import FormalSum
    from jacobidiag.maps import distribute, iota
    from jacobidiag.relations import Window
    from jacobidiag.shapes import h_shape
    from jacobidiag.span import in_span
    M = cyclic_module(); g = M.generator(0); tg = M.scale("t", g); d = "(t-1+t^-1)"
    D = h_shape(M, [g, tg, g, tg], {(2, 3): f"t^-1/{d}", (2, 4): f"1/{d}", (2, 5): f"t^-1/{d}+1",
                                    (3, 4): f"t/{d}", (3, 5): f"1/{d}", (4, 5): f"t^-1/{d}"})
    I = iota(D, 2)
    t0 = time.perf_counter()
    res = in_span(distribute(I) - FormalSum.of(I), {"Aut", "LV", "LD"}, Window(W=3, cap=5000))
    out["search"] = time.perf_counter() - t0
    out["status"] = res.status
print(json.dumps(out))
"""


def run(pure: bool, params) -> dict:
    env = dict(os.environ)
    env.pop("JACOBI_PURE_PYTHON", None)
    if pure:
        env["JACOBI_PURE_PYTHON"] = "1"
    res = subprocess.run([sys.executable, "-c", WORKER, json.dumps(params)], env=env,
                         capture_output=True, text=True, check=True)
    return json.loads(res.stdout)


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--rows", type=int, default=600)
    ap.add_argument("--cols", type=int, default=600)
    ap.add_argument("--density", type=int, default=4)
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--skip-search", action="store_true")
    args = ap.parse_args()

    results = {}
    for pure in (False, True):
        runs = [run(pure, [args.rows, args.cols, args.density, seed, not args.skip_search and seed == 0])
                for seed in range(args.repeat)]
        name = runs[0]["backend"]
        if name in results:
            print(f"only the {name} backend is available; build the extension to compare")
            return 1
        results[name] = runs
    print(f"sparse system: {args.rows} rows x {args.cols} columns, {args.density} nonzeros per row")
    base = statistics.median(r["sparse"] for r in results["compiled"])
    for name, runs in results.items():
        med = statistics.median(r["sparse"] for r in runs)
        line = f"  {name:9s} median {med:.3f}s  ({med / base:.1f}x compiled)  rank {runs[0]['rank']}"
        if "search" in runs[0]:
            line += f"  | distribution search {runs[0]['search']:.2f}s ({runs[0]['status']})"
        print(line)
    ranks = {runs[0]["rank"] for runs in results.values()}
    print("backends agree on rank" if len(ranks) == 1 else "RANK MISMATCH")
    return 0 if len(ranks) == 1 else 1


if __name__ == "__main__":
    sys.exit(main())
