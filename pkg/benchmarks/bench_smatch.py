#!/usr/bin/env python3
"""Time Smatch alignment with the compiled kernel against the pure-Python
fallback on identical randomized workloads.

Run without arguments to benchmark both backends (spawns itself once per
backend, since the kernel is chosen at import time):

    python3 benchmarks/bench_smatch.py
"""

import argparse
import os
import random
import subprocess
import sys
import time

_TYPES = ("transfer", "mix", "spin", "reagent", "location", "device", "setting")
_WORDS = ("add", "mix", "tube", "cells", "buffer", "spin", "plate", "vial")
_ROLES = ("ARG0", "ARG1", "site", "setting", "usage", "succ")


def make_triples(rng, n_nodes, n_rels):
    from pegkit.evaluate.smatch import TripleSet

    nodes = tuple(f"n{i}" for i in range(n_nodes))
    instance = {n: rng.choice(_TYPES) for n in nodes}
    surface = {n: rng.choice(_WORDS) for n in nodes}
    relations = set()
    while len(relations) < n_rels:
        u, v = rng.sample(nodes, 2)
        relations.add((u, rng.choice(_ROLES), v))
    return TripleSet(nodes, instance, surface, tuple(sorted(relations)))


def run(pairs, n_nodes, n_rels, restarts, seed):
    from pegkit.evaluate import KERNEL_BACKEND
    from pegkit.evaluate.smatch import align

    rng = random.Random(seed)
    workload = [(make_triples(rng, n_nodes, n_rels),
                 make_triples(rng, n_nodes, n_rels)) for _ in range(pairs)]
    start = time.perf_counter()
    total_matched = 0
    for gold, pred in workload:
        total_matched += align(gold, pred, restarts=restarts).matched
    elapsed = time.perf_counter() - start
    print(f"{KERNEL_BACKEND:>7}: {pairs} alignments of {n_nodes}-node graphs "
          f"({n_rels} relations, {restarts} restarts) in {elapsed:.3f}s "
          f"[checksum {total_matched}]")
    return elapsed


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--pairs", type=int, default=30)
    parser.add_argument("--nodes", type=int, default=25)
    parser.add_argument("--relations", type=int, default=40)
    parser.add_argument("--restarts", type=int, default=4)
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--backend", choices=("cython", "python"),
                        help="(internal) benchmark only this backend")
    args = parser.parse_args()

    if args.backend:
        from pegkit.evaluate import KERNEL_BACKEND

        if KERNEL_BACKEND != args.backend:
            print(f"backend {args.backend} unavailable (got {KERNEL_BACKEND})",
                  file=sys.stderr)
            sys.exit(1)
        run(args.pairs, args.nodes, args.relations, args.restarts, args.seed)
        return

    times = {}
    for backend in ("cython", "python"):
        env = dict(os.environ)
        env.pop("PEGKIT_NO_EXT", None)
        if backend == "python":
            env["PEGKIT_NO_EXT"] = "1"
        proc = subprocess.run(
            [sys.executable, __file__, "--backend", backend,
             "--pairs", str(args.pairs), "--nodes", str(args.nodes),
             "--relations", str(args.relations),
             "--restarts", str(args.restarts), "--seed", str(args.seed)],
            env=env, capture_output=True, text=True)
        sys.stdout.write(proc.stdout)
        if proc.returncode != 0:
            sys.stderr.write(proc.stderr)
            continue
        times[backend] = float(proc.stdout.rsplit("in ", 1)[1].split("s ")[0])
    if len(times) == 2:
        print(f"speedup: {times['python'] / times['cython']:.1f}x")


if __name__ == "__main__":
    main()
