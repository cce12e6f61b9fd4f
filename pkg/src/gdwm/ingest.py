"""Merging record files, normalizing reference text, and counting tokens."""
from __future__ import annotations

import re
from collections import Counter
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Sequence

from .errors import InputError

_NON_ALNUM = re.compile(r"[^A-Z0-9]+")


@dataclass(frozen=True)
class RecordRef:
    id: str
    body: str
    tokens: tuple[str, ...] = field(default=())


@dataclass
class RecordSet:
    records: list[RecordRef] = field(default_factory=list)

    def __post_init__(self):
        seen = set()
        for r in self.records:
            if not r.id:
                raise InputError("empty record id")
            if r.id in seen:
                raise InputError(f"duplicate id: {r.id}")
            seen.add(r.id)

    def __len__(self):
        return len(self.records)

    def __iter__(self):
        return iter(self.records)

    @property
    def ids(self) -> list[str]:
        return [r.id for r in self.records]


TokenStats = Counter
"""Map token -> number of occurrences across all records (multiset count)."""


def normalize_and_tokenize(body: str) -> list[str]:
    """Uppercase, turn every non-alphanumeric run into a space, split.

    >>> normalize_and_tokenize("Lloyd  Aaron-Dean")
    ['LLOYD', 'AARON', 'DEAN']
    """
    return _NON_ALNUM.sub(" ", body.upper()).split()


def make_record(rid: str, body: str) -> RecordRef:
    return RecordRef(rid, body, tuple(normalize_and_tokenize(body)))


def parse_lines(lines: Iterable[str], source: str = "<input>") -> list[RecordRef]:
    out = []
    for lineno, line in enumerate(lines, start=1):
        line = line.rstrip("\r\n")
        if not line.strip():
            continue
        rid, sep, body = line.partition(",")
        rid = rid.strip()
        if not sep or not rid:
            raise InputError(f"{source}:{lineno}: expected '<id>,<body>'")
        out.append(make_record(rid, body))
    return out


def merge_sources(paths: Sequence[str | Path]) -> RecordSet:
    """Read every file in order and concatenate their records.

    Duplicate ids across (or within) files raise ``InputError``.
    """
    records: list[RecordRef] = []
    seen: dict[str, str] = {}
    for path in paths:
        path = Path(path)
        try:
            text = path.read_text(encoding="utf-8")
        except OSError as exc:
            raise InputError(f"cannot read {path}: {exc}") from exc
        for rec in parse_lines(text.splitlines(), str(path)):
            if rec.id in seen:
                raise InputError(f"duplicate id {rec.id!r} in {path} (first seen in {seen[rec.id]})")
            seen[rec.id] = str(path)
            records.append(rec)
    return RecordSet(records)


def build_token_stats(rs: Iterable[RecordRef]) -> Counter:
    counts: Counter = Counter()
    for rec in rs:
        counts.update(rec.tokens)
    return counts
