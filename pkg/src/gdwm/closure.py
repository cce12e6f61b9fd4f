"""Mu-pruning and transitive closure by smallest-id star propagation.

Each round, every node's star (itself plus its first-order neighbours) is
re-centred on the smallest label seen in the star, then labels are
short-cut through their own centre. Rounds stop at the first fixed point.
"""
from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from typing import Iterable, Mapping

from .errors import InvariantError

Pair = tuple[str, str]


@dataclass(frozen=True)
class SoftCluster:
    id: str
    members: tuple[str, ...]


def prune_pairs(store: Mapping[Pair, float], mu: float) -> list[Pair]:
    return sorted(pair for pair, s in store.items() if s >= mu)


def _stars(edges: Iterable[Pair]) -> dict[str, set[str]]:
    # group by smaller endpoint, then mirror so each node sees its full neighbourhood
    nbrs: dict[str, set[str]] = defaultdict(set)
    for a, b in edges:
        if a == b:
            continue
        nbrs[a].add(b)
        nbrs[b].add(a)
    return nbrs


def propagate_labels(edges: Iterable[Pair]) -> tuple[dict[str, str], int]:
    """Return (node -> smallest id in its component, rounds used)."""
    nbrs = _stars(edges)
    label = {v: v for v in nbrs}
    limit = len(label) + 1
    rounds = 0
    changed = True
    while changed:
        rounds += 1
        if rounds > limit:
            raise InvariantError(f"label propagation did not converge in {limit} rounds")
        changed = False
        new = {}
        for v, star in nbrs.items():
            best = label[v]
            for u in star:
                if label[u] < best:
                    best = label[u]
            new[v] = best
        # pointer jump: adopt the centre's label too
        for v in new:
            jumped = new[new[v]]
            if jumped < new[v]:
                new[v] = jumped
        for v in new:
            if new[v] != label[v]:
                changed = True
                break
        label = new
    return label, rounds


def transitive_closure(edges: Iterable[Pair]) -> list[SoftCluster]:
    label, _ = propagate_labels(edges)
    groups: dict[str, list[str]] = defaultdict(list)
    for v, c in label.items():
        groups[c].append(v)
    return [SoftCluster(c, tuple(sorted(groups[c]))) for c in sorted(groups)]
