"""Bounds, oracle values and branches for every built-in example.

    python3 scripts/gallery_report.py [--cutoff 8] [--sharpen-flat]
"""
import argparse
import time

from pierce_gldim.engine import AnalyzeConfig, analyze
from pierce_gldim.generators import gallery, gallery_names
from pierce_gldim.graph import build_graph


def main():
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--cutoff", type=int, default=8)
    p.add_argument("--sharpen-flat", action="store_true")
    args = p.parse_args()
    header = f"{'name':<18} {'dim':>4} {'|E|':>4} {'edges':>5}  {'bound':<10} {'branch':<14} {'oracle':<18} ok    secs"
    print(header)
    print("-" * len(header))
    for name in gallery_names():
        a = gallery(name)
        start = time.perf_counter()
        rep = analyze(a, AnalyzeConfig(oracle_cutoff=args.cutoff, sharpen_flat=args.sharpen_flat))
        secs = time.perf_counter() - start
        o = rep.oracle
        shown = str(o["value"]) if o["verdict"] == "finite" else f"> {o['cutoff']} (period {o['period']})"
        print(f"{name:<18} {a.dim:>4} {len(a.vertices):>4} {len(build_graph(a).edges):>5}  "
              f"{str(rep.overall):<10} {rep.branch:<14} {shown:<18} {str(rep.consistent):<5} {secs:5.2f}")


if __name__ == "__main__":
    main()
