"""Desk-scale comparison table: k-splits (raw and fine-tuned) against 10R k-means.

    python3 scripts/run_table1.py --output results/table1.csv [--data-dir DIR]

With --data-dir pointing at the public benchmark files (a1.txt, s1.txt,
dim032.txt, unbalance.txt and their ground-truth partitions) the original
data is used instead of the generated analogues.
"""

import argparse
import os
from pathlib import Path

from ksplits import bench


def main():
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("--output", default="results/table1.csv")
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--data-dir", default=os.environ.get("KSPLITS_DATA_DIR"))
    ap.add_argument("--repeats", type=int, default=10)
    args = ap.parse_args()

    rows = bench.table1_desk(args.seed, args.data_dir, args.repeats)
    Path(args.output).parent.mkdir(parents=True, exist_ok=True)
    bench.write_csv(rows, args.output)
    width = max(len(r.dataset) for r in rows)
    for r in rows:
        print(f"{r.dataset:<{width}}  {r.algorithm:<20} k={r.detected_k:<4} ari={r.ari:.4f}  t={r.time_s:.3f}s")
    print(f"wrote {args.output}")


if __name__ == "__main__":
    main()
