"""Frequency-based blocking with a stop-word threshold (sigma) and a
blocking-token threshold (beta)."""
from __future__ import annotations

import logging
from collections import defaultdict
from dataclasses import dataclass
from typing import Mapping, Sequence

from .errors import InputError
from .ingest import RecordSet

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class BlockingConfig:
    beta: int = 6
    sigma: int = 7

    def __post_init__(self):
        if self.beta < 1 or self.sigma < 1:
            raise InputError(f"beta and sigma must be >= 1 (got beta={self.beta}, sigma={self.sigma})")
        if self.beta >= self.sigma:
            log.warning("beta=%d >= sigma=%d: every token kept by the stop-word filter can block",
                        self.beta, self.sigma)


@dataclass(frozen=True)
class Block:
    token: str
    members: tuple[tuple[str, tuple[str, ...]], ...]  # (record id, sigma-filtered tokens), sorted by id

    @property
    def ids(self) -> list[str]:
        return [rid for rid, _ in self.members]


def filter_stopwords(tokens: Sequence[str], stats: Mapping[str, int], sigma: int) -> list[str]:
    return [t for t in tokens if stats[t] < sigma]


def select_blocking_tokens(filtered_tokens: Sequence[str], stats: Mapping[str, int], beta: int) -> list[str]:
    # dict.fromkeys keeps first-occurrence order while collapsing repeats
    return list(dict.fromkeys(t for t in filtered_tokens if stats[t] <= beta))


def build_blocks(rs: RecordSet, stats: Mapping[str, int], cfg: BlockingConfig) -> list[Block]:
    grouped: dict[str, list[tuple[str, tuple[str, ...]]]] = defaultdict(list)
    for rec in rs:
        kept = tuple(filter_stopwords(rec.tokens, stats, cfg.sigma))
        for tok in select_blocking_tokens(kept, stats, cfg.beta):
            grouped[tok].append((rec.id, kept))
    return [Block(tok, tuple(sorted(grouped[tok]))) for tok in sorted(grouped)]


def unblocked_ids(rs: RecordSet, blocks: Sequence[Block]) -> list[str]:
    """Ids of records that own no blocking token (emitted later as singletons)."""
    blocked = {rid for b in blocks for rid, _ in b.members}
    return [r.id for r in rs if r.id not in blocked]
