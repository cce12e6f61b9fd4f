"""Pairwise matching inside blocks with the scoring-matrix similarity."""
from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from functools import lru_cache
from pathlib import Path
from typing import Iterable, Sequence

from .blocking import Block

Pair = tuple[str, str]


def levenshtein(x: str, y: str) -> int:
    """Edit distance with unit-cost insert, delete and substitute."""
    if x == y:
        return 0
    if len(x) < len(y):
        x, y = y, x
    if not y:
        return len(x)
    prev = list(range(len(y) + 1))
    for i, cx in enumerate(x, start=1):
        cur = [i]
        for j, cy in enumerate(y, start=1):
            cur.append(min(prev[j] + 1, cur[j - 1] + 1, prev[j - 1] + (cx != cy)))
        prev = cur
    return prev[-1]


@lru_cache(maxsize=1 << 20)
def token_sim(x: str, y: str) -> float:
    """1 - levenshtein / longer length. Two empty tokens count as identical."""
    longest = max(len(x), len(y))
    if longest == 0:
        return 1.0
    return 1.0 - levenshtein(x, y) / longest


def score_pair(tokens_a: Sequence[str], tokens_b: Sequence[str]) -> float:
    """Mean of every row maximum and every column maximum of the token
    similarity matrix; 0 when either side has no tokens."""
    if not tokens_a or not tokens_b:
        return 0.0
    matrix = [[token_sim(a, b) for b in tokens_b] for a in tokens_a]
    row_best = sum(max(row) for row in matrix)
    col_best = sum(max(col) for col in zip(*matrix))
    return (row_best + col_best) / (len(tokens_a) + len(tokens_b))


def ordered(a: str, b: str) -> Pair:
    return (a, b) if a < b else (b, a)


class ScoredPairStore(dict):
    """Map (a, b) with a < b -> similarity score."""

    def get_score(self, a: str, b: str):
        return self.get(ordered(a, b))

    def ids(self) -> set[str]:
        return {rid for pair in self for rid in pair}


def candidate_pairs(blocks: Iterable[Block]) -> dict[Pair, tuple[tuple[str, ...], tuple[str, ...]]]:
    """Unique within-block pairs; the first block proposing a pair wins."""
    out: dict[Pair, tuple[tuple[str, ...], tuple[str, ...]]] = {}
    for block in blocks:
        members = block.members
        for i in range(len(members)):
            id_a, tok_a = members[i]
            for j in range(i + 1, len(members)):
                id_b, tok_b = members[j]
                if id_a == id_b:
                    continue
                key = ordered(id_a, id_b)
                if key not in out:
                    out[key] = (tok_a, tok_b) if key[0] == id_a else (tok_b, tok_a)
    return out


def match_blocks(blocks: Sequence[Block], mu_floor: float = 0.0, threads: int = 1) -> ScoredPairStore:
    cands = candidate_pairs(blocks)
    keys = sorted(cands)
    if threads > 1 and len(keys) > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            scores = list(pool.map(lambda k: score_pair(*cands[k]), keys, chunksize=256))
    else:
        scores = [score_pair(*cands[k]) for k in keys]
    store = ScoredPairStore()
    for key, s in zip(keys, scores):
        if s >= mu_floor:
            store[key] = s
    return store


def dump_pairs(store: ScoredPairStore, path: str | Path) -> None:
    lines = [f"{a},{b},{store[(a, b)]:.6f}\n" for a, b in sorted(store)]
    Path(path).write_text("".join(lines), encoding="utf-8")
