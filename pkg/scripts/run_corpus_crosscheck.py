"""Run the bar-resolution oracle against the simplicial route on the corpus.

    python3 scripts/run_corpus_crosscheck.py [--field q|fp:P] [--budget N] [--out report.json]
"""
import argparse
import json
import time

from lrbtools.core import lambda_chain_length, support_lattice
from lrbtools.corpus import corpus
from lrbtools.linalg import Field
from lrbtools.oracle import BAR_BUDGET, oracle_crosscheck


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--field", default="q")
    ap.add_argument("--budget", type=int, default=BAR_BUDGET)
    ap.add_argument("--max-degree", type=int, default=3)
    ap.add_argument("--out")
    args = ap.parse_args()
    F = Field.parse(args.field)

    rows, bad = [], 0
    print(f"{'monoid':<22}{'size':>6}{'pairs':>7}{'skip':>6}{'mism':>6}{'sec':>8}")
    for entry in corpus():
        B = entry.monoid
        deg = min(args.max_degree, lambda_chain_length(support_lattice(B)))
        t0 = time.perf_counter()
        rep = oracle_crosscheck(B, F, deg, args.budget)
        dt = time.perf_counter() - t0
        bad += len(rep.mismatches)
        print(f"{entry.name:<22}{B.size:>6}{len(rep.pairs):>7}{len(rep.skipped):>6}"
              f"{len(rep.mismatches):>6}{dt:>8.2f}")
        rows.append({"name": entry.name, "size": B.size, **rep.to_dict()})
    print(f"total mismatches: {bad}")
    if args.out:
        with open(args.out, "w") as fh:
            json.dump(rows, fh, indent=1)
    return 1 if bad else 0


if __name__ == "__main__":
    raise SystemExit(main())
