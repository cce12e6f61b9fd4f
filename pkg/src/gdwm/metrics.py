"""Pairwise evaluation of a clustering against ground truth."""
from __future__ import annotations

from collections import Counter
from dataclasses import asdict, dataclass
from pathlib import Path
from typing import Mapping, NamedTuple

from .errors import InputError


class PairCounts(NamedTuple):
    tp: int
    fp: int
    fn: int
    tn: int


@dataclass
class EvalReport:
    tp: int
    tn: int
    fp: int
    fn: int
    precision: float
    recall: float
    f1: float
    balanced_accuracy: float
    elapsed: float = 0.0

    def as_dict(self) -> dict:
        return asdict(self)


def _c2(n: int) -> int:
    return n * (n - 1) // 2


def _ratio(num: float, den: float) -> float:
    return num / den if den else 0.0


def pair_counts(predicted: Mapping[str, object], truth: Mapping[str, object]) -> PairCounts:
    """Count record pairs by (same predicted cluster, same truth cluster).

    Both arguments map record id -> cluster label and must cover the same ids.
    Uses the contingency table, so cost is linear in the number of records.
    """
    if predicted.keys() != truth.keys():
        diff = sorted(set(predicted) ^ set(truth))
        shown = ", ".join(diff[:10]) + (" ..." if len(diff) > 10 else "")
        raise InputError(f"predicted and truth id sets differ ({len(diff)} ids): {shown}")
    joint = Counter((predicted[r], truth[r]) for r in predicted)
    tp = sum(_c2(n) for n in joint.values())
    same_pred = sum(_c2(n) for n in Counter(predicted.values()).values())
    same_truth = sum(_c2(n) for n in Counter(truth.values()).values())
    fp = same_pred - tp
    fn = same_truth - tp
    tn = _c2(len(predicted)) - tp - fp - fn
    return PairCounts(tp, fp, fn, tn)


def compute_metrics(counts: PairCounts, elapsed: float = 0.0) -> EvalReport:
    tp, fp, fn, tn = counts
    p = _ratio(tp, tp + fp)
    r = _ratio(tp, tp + fn)
    f1 = _ratio(2 * p * r, p + r)
    # mean of sensitivity and specificity
    ba = 0.5 * (_ratio(tp, tp + fn) + _ratio(tn, tn + fp))
    return EvalReport(tp, tn, fp, fn, p, r, f1, ba, elapsed)


def evaluate(predicted: Mapping[str, object], truth: Mapping[str, object], elapsed: float = 0.0) -> EvalReport:
    return compute_metrics(pair_counts(predicted, truth), elapsed)


def read_truth(path: str | Path) -> dict[str, str]:
    out: dict[str, str] = {}
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc
    for lineno, line in enumerate(text.splitlines(), start=1):
        if not line.strip():
            continue
        rid, sep, label = line.partition(",")
        if not sep or not rid or not label:
            raise InputError(f"{path}:{lineno}: expected '<recordId>,<truthClusterLabel>'")
        if rid in out:
            raise InputError(f"{path}:{lineno}: duplicate record id {rid!r}")
        out[rid] = label.strip()
    return out


def macro_average(reports: list[EvalReport]) -> dict[str, float]:
    """Unweighted mean of each score across runs (not re-derived from summed counts)."""
    if not reports:
        return {}
    keys = ("precision", "recall", "f1", "balanced_accuracy", "elapsed")
    return {k: sum(getattr(r, k) for r in reports) / len(reports) for k in keys}
