"""Mu sweeps: one pipeline run per (mode, mu), evaluated against truth."""
from __future__ import annotations

import csv
import io
import time
from dataclasses import dataclass, replace
from typing import Mapping, Sequence

from .ingest import RecordSet
from .metrics import EvalReport, evaluate
from .pipeline import PipelineConfig, cluster_store, match_records

DEFAULT_MUS = tuple(round(0.1 * i, 1) for i in range(1, 10))


@dataclass
class SweepRow:
    mu: float
    mode: str
    report: EvalReport
    best: bool = False

    @property
    def seconds(self) -> float:
        return self.report.elapsed


def sweep(rs: RecordSet, truth: Mapping[str, str], mu_list: Sequence[float],
          mode_list: Sequence[str] = ("gdwm", "tc"), base: PipelineConfig = PipelineConfig()) -> list[SweepRow]:
    """Rows come out in (mode, mu) order, best row per mode flagged.

    Pair scoring does not depend on mu or mode, so it runs once; each row's
    elapsed time is that shared matching time plus its own clustering time.
    """
    if not mu_list or not mode_list:
        return []
    t0 = time.perf_counter()
    store = match_records(rs, base)
    match_seconds = time.perf_counter() - t0
    rows = []
    for mode in mode_list:
        for mu in mu_list:
            cfg = replace(base, mu=mu, mode=mode)
            t0 = time.perf_counter()
            li = cluster_store(store, rs.ids, cfg)
            elapsed = match_seconds + time.perf_counter() - t0
            rows.append(SweepRow(mu, cfg.mode, evaluate(li.assignment(), truth, elapsed)))
    mark_best(rows)
    return rows


def mark_best(rows: Sequence[SweepRow]) -> None:
    """Per mode: highest F1, then lowest mu, then lowest elapsed time."""
    by_mode: dict[str, list[SweepRow]] = {}
    for r in rows:
        r.best = False
        by_mode.setdefault(r.mode, []).append(r)
    for group in by_mode.values():
        min(group, key=lambda r: (-r.report.f1, r.mu, r.seconds)).best = True


def best_rows(rows: Sequence[SweepRow]) -> dict[str, SweepRow]:
    return {r.mode: r for r in rows if r.best}


_COLUMNS = ("mu", "mode", "precision", "recall", "f1", "balanced_accuracy", "seconds", "best")


def _cells(r: SweepRow) -> list[str]:
    rep = r.report
    return [f"{r.mu:.2f}", r.mode, f"{rep.precision:.4f}", f"{rep.recall:.4f}", f"{rep.f1:.4f}",
            f"{rep.balanced_accuracy:.4f}", f"{rep.elapsed:.3f}", "*" if r.best else ""]


def to_csv(rows: Sequence[SweepRow]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(_COLUMNS)
    w.writerows(_cells(r) for r in rows)
    return buf.getvalue()


def to_table(rows: Sequence[SweepRow]) -> str:
    body = [list(_COLUMNS)] + [_cells(r) for r in rows]
    widths = [max(len(line[i]) for line in body) for i in range(len(_COLUMNS))]
    return "\n".join("  ".join(c.rjust(w) for c, w in zip(line, widths)).rstrip() for line in body) + "\n"
