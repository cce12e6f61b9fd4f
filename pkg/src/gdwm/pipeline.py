"""End-to-end resolution: ingest -> blocking -> matching -> closure ->
refinement -> canonical link index."""
from __future__ import annotations

import logging
import random
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Mapping, Optional, Sequence

from .blocking import BlockingConfig, build_blocks
from .closure import SoftCluster, prune_pairs, transitive_closure
from .errors import InputError, InvariantError
from .ingest import RecordSet, build_token_stats
from .matching import ScoredPairStore, match_blocks
from .refine import EntityCluster, refine_cluster, store_adjacency

log = logging.getLogger(__name__)

MODES = ("gdwm", "tc")
_MODE_ALIASES = {"gdwm": "gdwm", "tc": "tc", "tc-only": "tc"}


@dataclass(frozen=True)
class PipelineConfig:
    mu: float = 0.5
    beta: int = 6
    sigma: int = 7
    mode: str = "gdwm"
    louvain_init: str = "singleton"
    seed: Optional[int] = None
    threads: int = 1

    def __post_init__(self):
        if not 0.0 <= self.mu <= 1.0:
            raise InputError(f"mu must lie in [0, 1], got {self.mu}")
        if self.mode not in _MODE_ALIASES:
            raise InputError(f"unknown mode {self.mode!r}; expected one of gdwm, tc, tc-only")
        object.__setattr__(self, "mode", _MODE_ALIASES[self.mode])
        if self.louvain_init not in ("singleton", "random"):
            raise InputError(f"unknown louvain init {self.louvain_init!r}")
        if self.threads < 1:
            raise InputError("threads must be >= 1")

    @property
    def blocking(self) -> BlockingConfig:
        return BlockingConfig(self.beta, self.sigma)


@dataclass
class LinkIndex:
    entries: list[tuple[str, str]] = field(default_factory=list)

    def __post_init__(self):
        self.entries = sorted(self.entries)

    def clusters(self) -> dict[str, list[str]]:
        out: dict[str, list[str]] = {}
        for cid, rid in self.entries:
            out.setdefault(cid, []).append(rid)
        return out

    def assignment(self) -> dict[str, str]:
        return {rid: cid for cid, rid in self.entries}

    def __len__(self):
        return len(self.entries)


def match_records(rs: RecordSet, cfg: PipelineConfig) -> ScoredPairStore:
    stats = build_token_stats(rs)
    blocks = build_blocks(rs, stats, cfg.blocking)
    log.info("%d records, %d distinct tokens, %d blocks", len(rs), len(stats), len(blocks))
    store = match_blocks(blocks, threads=cfg.threads)
    log.info("%d scored pairs", len(store))
    return store


def cluster_store(store: Mapping[tuple[str, str], float], all_ids: Sequence[str],
                  cfg: PipelineConfig) -> LinkIndex:
    """Closure at mu, then (gdwm mode) per-soft-cluster refinement."""
    soft = transitive_closure(prune_pairs(store, cfg.mu))
    if cfg.mode == "tc":
        clusters = [EntityCluster(sc.id, sc.members) for sc in soft]
        return canonicalize(clusters, all_ids)
    adjacency = store_adjacency(store)

    def work(sc: SoftCluster) -> list[EntityCluster]:
        rng = None
        if cfg.louvain_init == "random":
            # derived per cluster so results do not depend on scheduling
            rng = random.Random(f"{cfg.seed or 0}:{sc.id}")
        return refine_cluster(sc, store, init=cfg.louvain_init, rng=rng, adjacency=adjacency)

    if cfg.threads > 1 and len(soft) > 1:
        with ThreadPoolExecutor(max_workers=cfg.threads) as pool:
            refined = list(pool.map(work, soft))
    else:
        refined = [work(sc) for sc in soft]
    return canonicalize([c for group in refined for c in group], all_ids)


def run_pipeline(rs: RecordSet, cfg: PipelineConfig = PipelineConfig()) -> LinkIndex:
    if not len(rs):
        return LinkIndex()
    store = match_records(rs, cfg)
    return cluster_store(store, rs.ids, cfg)


def canonicalize(clusters: Iterable[EntityCluster], all_ids: Sequence[str]) -> LinkIndex:
    universe = set(all_ids)
    owner: dict[str, str] = {}
    for c in clusters:
        cid = min(c.members)
        for rid in c.members:
            if rid in owner:
                raise InvariantError(f"record {rid!r} is in clusters {owner[rid]!r} and {cid!r}")
            if rid not in universe:
                raise InvariantError(f"clustered record {rid!r} is not an input record")
            owner[rid] = cid
    return LinkIndex([(owner.get(rid, rid), rid) for rid in all_ids])


def write_link_index(li: LinkIndex, path: str | Path) -> None:
    Path(path).write_text("".join(f"{c},{r}\n" for c, r in li.entries), encoding="utf-8")


def read_link_index(path: str | Path) -> LinkIndex:
    entries = []
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc
    for lineno, line in enumerate(text.splitlines(), start=1):
        if not line.strip():
            continue
        parts = line.split(",")
        if len(parts) != 2 or not parts[0] or not parts[1]:
            raise InputError(f"{path}:{lineno}: expected '<clusterId>,<recordId>'")
        entries.append((parts[0], parts[1]))
    return LinkIndex(entries)
