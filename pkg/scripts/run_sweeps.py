"""Parameter sweeps over dataset size, cluster count and dimension.

    python3 scripts/run_sweeps.py --folds 5 --outdir results

Writes one CSV per sweep and prints a short per-point summary
(mean detected k, mean ARI and mean time across folds).
"""

import argparse
from collections import defaultdict
from pathlib import Path

import numpy as np

from ksplits import bench

SWEEPS = {"sweep-n": "N", "sweep-c": "C", "sweep-dim": "dim"}


def summarise(rows, key):
    groups = defaultdict(list)
    for r in rows:
        groups[(getattr(r, key), r.algorithm)].append(r)
    for (value, algo), group in sorted(groups.items()):
        k = np.mean([r.detected_k for r in group])
        ari = np.mean([r.ari for r in group])
        t = np.mean([r.time_s for r in group])
        print(f"  {key}={value:<6} {algo:<20} k={k:6.2f} ari={ari:.4f} t={t:.4f}s")


def main():
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("--outdir", default="results")
    ap.add_argument("--folds", type=int, default=5)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--only", choices=sorted(SWEEPS), action="append")
    args = ap.parse_args()

    out = Path(args.outdir)
    out.mkdir(parents=True, exist_ok=True)
    for suite in args.only or SWEEPS:
        rows = bench.run_suite(suite, seed=args.seed, folds=args.folds)
        path = out / f"{suite}.csv"
        bench.write_csv(rows, path)
        print(f"{suite} -> {path}")
        summarise(rows, SWEEPS[suite])
        if suite == "sweep-n":
            ks = [r for r in rows if r.algorithm == "k-splits"]
            rho = bench.spearman([r.N for r in ks], [r.time_s for r in ks])
            print(f"  time vs N spearman: {rho:.3f}")


if __name__ == "__main__":
    main()
