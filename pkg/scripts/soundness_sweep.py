"""Compare analyze() bounds with the resolution oracle on random algebras.

Instances alternate between truncated quotients of small quivers (cycles and
loops allowed) and nil quotients of acyclic quivers.  A bound is unsound if it
excludes a finite oracle value, or claims a finite upper bound below the cutoff
when the resolution of the simples runs past it.

    python3 scripts/soundness_sweep.py --seed 2 --count 600 [--sharpen-flat]
"""
import argparse
import collections
import random
import time

from pierce_gldim.engine import AnalyzeConfig, analyze
from pierce_gldim.formats import from_algebra
from pierce_gldim.generators import random_nil_quotient, random_small_algebra
from pierce_gldim.modules import ResourceLimit, gldim_oracle


def main():
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--seed", type=int, default=2)
    p.add_argument("--count", type=int, default=600)
    p.add_argument("--cutoff", type=int, default=8)
    p.add_argument("--max-syzygy", type=int, default=150, help="give up on the oracle past this syzygy size")
    p.add_argument("--sharpen-flat", action="store_true")
    p.add_argument("--show", type=int, default=3, help="print this many counterexamples")
    args = p.parse_args()

    rng = random.Random(args.seed)
    config = AnalyzeConfig(sharpen_flat=args.sharpen_flat)
    stats = collections.Counter()
    bad = []
    start = time.perf_counter()
    for i in range(args.count):
        a = random_small_algebra(rng, 12) if i % 2 else random_nil_quotient(rng, 5, 7, 3)
        rep = analyze(a, config)
        try:
            res = gldim_oracle(a, args.cutoff, max_dim=args.max_syzygy)
            oracle = res.value if res.finite else "exceeds"
        except ResourceLimit:
            oracle = "too-large"
        if isinstance(oracle, int):
            ok = rep.overall.contains(oracle) and rep.verdict != "infinite"
        elif oracle == "exceeds":
            ok = rep.overall.upper is None or rep.overall.upper >= args.cutoff
        else:
            ok = True
        stats[(rep.branch, rep.verdict, "finite" if isinstance(oracle, int) else oracle)] += 1
        if not ok:
            bad.append((a, rep, oracle))
    secs = time.perf_counter() - start

    print(f"{args.count} instances, seed {args.seed}, sharpen_flat={args.sharpen_flat}, {secs:.1f}s")
    print(f"{'branch':<14} {'verdict':<9} {'oracle':<10} count")
    for (branch, verdict, oracle), n in sorted(stats.items()):
        print(f"{branch:<14} {verdict:<9} {oracle:<10} {n}")
    print(f"unsound bounds: {len(bad)}")
    for a, rep, oracle in bad[:args.show]:
        print(f"\noracle {oracle}, bound {rep.overall}")
        print(from_algebra(a).dumps())


if __name__ == "__main__":
    main()
