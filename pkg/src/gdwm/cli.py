"""Command-line entry point: ``gdwm {run,eval,gen,sweep}``.

Exit codes: 0 success, 1 bad input, 2 internal invariant breach.
"""
from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from .datagen import QUALITY_RATES, CorpusSpec, write_corpus
from .errors import InputError, InvariantError
from .ingest import merge_sources
from .matching import dump_pairs
from .metrics import evaluate, read_truth
from .pipeline import PipelineConfig, cluster_store, match_records, read_link_index, write_link_index
from .sweep import DEFAULT_MUS, sweep, to_csv, to_table

log = logging.getLogger("gdwm")


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _add_resolution_args(p):
    p.add_argument("--input", nargs="+", required=True, help="record files, lines '<id>,<body>'")
    p.add_argument("--beta", type=int, default=6, help="blocking frequency (default 6)")
    p.add_argument("--sigma", type=int, default=7, help="stop-word frequency (default 7)")
    p.add_argument("--louvain-init", choices=("singleton", "random"), default="singleton")
    p.add_argument("--seed", type=int, default=None)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="gdwm", description="Graph-based two-step entity resolution.")
    parser.add_argument("--threads", type=int, default=1)
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("run", help="resolve records into a link index")
    _add_resolution_args(p)
    p.add_argument("--out", required=True)
    p.add_argument("--mu", type=float, default=0.5)
    p.add_argument("--mode", choices=("gdwm", "tc", "tc-only"), default="gdwm")
    p.add_argument("--dump-pairs", metavar="PATH")

    p = sub.add_parser("eval", help="pairwise metrics of a link index against truth")
    p.add_argument("--links", required=True)
    p.add_argument("--truth", required=True)
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("gen", help="generate a synthetic corpus and its truth file")
    p.add_argument("--entities", type=int, required=True)
    p.add_argument("--dup-mean", type=float, default=3.0)
    p.add_argument("--dup-law", choices=("fixed", "geometric"), default="fixed")
    p.add_argument("--quality", choices=tuple(QUALITY_RATES), default="good")
    p.add_argument("--layout", choices=("standard", "mixed"), default="standard")
    p.add_argument("--error-rate", type=float, default=None, help="override the quality tier's per-field rate")
    p.add_argument("--household-rate", type=float, default=0.25)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out-records", required=True)
    p.add_argument("--out-truth", required=True)

    p = sub.add_parser("sweep", help="run and evaluate over a grid of mu values")
    _add_resolution_args(p)
    p.add_argument("--truth", required=True)
    p.add_argument("--mu", type=float, nargs="*", default=list(DEFAULT_MUS))
    p.add_argument("--modes", nargs="+", choices=("gdwm", "tc", "tc-only"), default=["gdwm", "tc"])
    p.add_argument("--csv", metavar="PATH", help="also write the table as CSV")
    return parser


def _config(args, **extra) -> PipelineConfig:
    return PipelineConfig(beta=args.beta, sigma=args.sigma, louvain_init=args.louvain_init,
                          seed=args.seed, threads=args.threads, **extra)


def cmd_run(args) -> None:
    cfg = _config(args, mu=args.mu, mode=args.mode)
    rs = merge_sources(args.input)
    store = match_records(rs, cfg)
    if args.dump_pairs:
        dump_pairs(store, args.dump_pairs)
    li = cluster_store(store, rs.ids, cfg)
    write_link_index(li, args.out)
    log.info("wrote %d entries in %d clusters to %s", len(li), len(li.clusters()), args.out)


def cmd_eval(args) -> None:
    li = read_link_index(args.links)
    report = evaluate(li.assignment(), read_truth(args.truth))
    if args.json:
        print(json.dumps(report.as_dict(), indent=2))
        return
    for key, value in report.as_dict().items():
        print(f"{key:>18}  {value:.6f}" if isinstance(value, float) else f"{key:>18}  {value}")


def cmd_gen(args) -> None:
    try:
        spec = CorpusSpec(args.entities, args.dup_mean, args.dup_law, args.quality, args.layout,
                          args.seed, args.error_rate, args.household_rate)
    except ValueError as exc:
        raise InputError(str(exc)) from exc
    n = write_corpus(spec, args.out_records, args.out_truth)
    log.info("wrote %d records for %d entities", n, args.entities)


def cmd_sweep(args) -> None:
    rs = merge_sources(args.input)
    rows = sweep(rs, read_truth(args.truth), args.mu, args.modes, _config(args))
    sys.stdout.write(to_table(rows))
    if args.csv:
        Path(args.csv).write_text(to_csv(rows), encoding="utf-8")


COMMANDS = {"run": cmd_run, "eval": cmd_eval, "gen": cmd_gen, "sweep": cmd_sweep}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        COMMANDS[args.command](args)
    except InputError as exc:
        print(f"gdwm: error: {exc}", file=sys.stderr)
        return 1
    except InvariantError as exc:
        print(f"gdwm: internal error: {exc}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
