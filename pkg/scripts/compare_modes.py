#!/usr/bin/env python3
"""Sweep mu on several generated corpora and compare gdwm with the
transitive-closure-only baseline, Table 4 style.

For each corpus and mode the row with the best F1 (lowest mu, then fastest,
on ties) is kept; those rows are then macro-averaged across corpora.

    python scripts/compare_modes.py --corpora 5 --entities 250 --quality moderate
"""
import argparse
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "src"))

from gdwm.datagen import CorpusSpec, generate_corpus  # noqa: E402
from gdwm.ingest import RecordSet, make_record  # noqa: E402
from gdwm.metrics import macro_average  # noqa: E402
from gdwm.sweep import DEFAULT_MUS, best_rows, sweep  # noqa: E402


def main():
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("--corpora", type=int, default=5)
    ap.add_argument("--entities", type=int, default=250)
    ap.add_argument("--dup-mean", type=float, default=4.0)
    ap.add_argument("--dup-law", choices=("fixed", "geometric"), default="fixed")
    ap.add_argument("--quality", choices=("good", "moderate", "poor"), default="moderate")
    ap.add_argument("--layout", choices=("standard", "mixed"), default="standard")
    ap.add_argument("--seed", type=int, default=100)
    args = ap.parse_args()

    picked = {"gdwm": [], "tc": []}
    for k in range(args.corpora):
        spec = CorpusSpec(args.entities, args.dup_mean, args.dup_law, args.quality, args.layout, args.seed + k)
        records, truth = generate_corpus(spec)
        rs = RecordSet([make_record(i, b) for i, b in records])
        best = best_rows(sweep(rs, dict(truth), DEFAULT_MUS))
        for mode, row in best.items():
            picked[mode].append(row.report)
            r = row.report
            print(f"corpus {k} ({len(rs)} records) {mode:>4}: mu={row.mu:.1f} P={r.precision:.4f} "
                  f"R={r.recall:.4f} F1={r.f1:.4f} BA={r.balanced_accuracy:.4f} t={r.elapsed:.2f}s")

    print("\nmacro average over corpora")
    print(f"{'method':>6}  {'precision':>9}  {'recall':>7}  {'f1':>7}  {'bal_acc':>7}  {'seconds':>7}")
    for mode in ("tc", "gdwm"):
        avg = macro_average(picked[mode])
        print(f"{mode:>6}  {avg['precision']:9.4f}  {avg['recall']:7.4f}  {avg['f1']:7.4f}  "
              f"{avg['balanced_accuracy']:7.4f}  {avg['elapsed']:7.3f}")


if __name__ == "__main__":
    main()
