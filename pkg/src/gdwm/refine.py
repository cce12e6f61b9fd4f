"""Second clustering step: split each soft cluster by modularity maximization.

Each soft cluster is rebuilt as a weighted graph from the full pair store
(scores below mu included), partitioned with a deterministic Louvain, and
kept split only when the resulting modularity is non-negative.
"""
from __future__ import annotations

import random
from collections import defaultdict
from dataclasses import dataclass, field
from typing import Mapping, Optional, Sequence

from .closure import SoftCluster

Pair = tuple[str, str]
Partition = dict  # node id -> cluster label

# gains within this margin of staying put are treated as ties (node stays)
GAIN_EPS = 1e-12


@dataclass(frozen=True)
class EntityCluster:
    id: str
    members: tuple[str, ...]


@dataclass
class WeightedRecordGraph:
    """Undirected weighted graph on record ids.

    ``loops`` holds diagonal adjacency entries A_ii; an aggregated node gets
    A_ii = 2 x (internal edge weight), so sum of all A_ij is 2W.
    """
    nodes: tuple[str, ...]
    edges: dict[Pair, float] = field(default_factory=dict)
    loops: dict[str, float] = field(default_factory=dict)

    def __post_init__(self):
        self.nodes = tuple(sorted(self.nodes))
        self.adjacency: dict[str, dict[str, float]] = {v: {} for v in self.nodes}
        for (a, b), w in self.edges.items():
            if a == b:
                raise ValueError(f"self-loop {a!r} must go through loops")
            self.adjacency[a][b] = w
            self.adjacency[b][a] = w

    @property
    def total_weight(self) -> float:
        return sum(self.edges.values()) + sum(self.loops.values()) / 2.0

    def degree(self, v: str) -> float:
        return sum(self.adjacency[v].values()) + self.loops.get(v, 0.0)


def store_adjacency(store: Mapping[Pair, float]) -> dict[str, dict[str, float]]:
    adj: dict[str, dict[str, float]] = defaultdict(dict)
    for (a, b), s in store.items():
        adj[a][b] = s
        adj[b][a] = s
    return adj


def build_cluster_graph(sc: SoftCluster, store: Mapping[Pair, float],
                        adjacency: Optional[Mapping[str, Mapping[str, float]]] = None) -> WeightedRecordGraph:
    """Every stored pair between two members becomes an edge, whatever its score."""
    if adjacency is None:
        adjacency = store_adjacency(store)
    members = set(sc.members)
    edges = {}
    for a in sc.members:
        for b, s in adjacency.get(a, {}).items():
            if a < b and b in members:
                edges[(a, b)] = s
    return WeightedRecordGraph(sc.members, edges)


def modularity(g: WeightedRecordGraph, p: Mapping[str, object]) -> float:
    two_w = 2.0 * g.total_weight
    if two_w <= 0:
        return 0.0
    inside: dict[object, float] = defaultdict(float)
    total: dict[object, float] = defaultdict(float)
    for v in g.nodes:
        total[p[v]] += g.degree(v)
        inside[p[v]] += g.loops.get(v, 0.0)
    for (a, b), w in g.edges.items():
        if p[a] == p[b]:
            inside[p[a]] += 2.0 * w
    return sum(inside[c] / two_w - (total[c] / two_w) ** 2 for c in total)


class _Level:
    """Integer-indexed graph used inside one Louvain level."""

    def __init__(self, n, adj, loops):
        self.n = n
        self.adj = adj        # list of {j: w}, j != i
        self.loops = loops    # list of A_ii
        self.k = [sum(adj[i].values()) + loops[i] for i in range(n)]
        self.two_w = sum(self.k)

    def aggregate(self, comm):
        # renumber communities by their smallest member index
        order = {}
        for i in range(self.n):
            order.setdefault(comm[i], len(order))
        m = len(order)
        adj = [defaultdict(float) for _ in range(m)]
        loops = [0.0] * m
        for i in range(self.n):
            ci = order[comm[i]]
            loops[ci] += self.loops[i]
            for j, w in self.adj[i].items():
                cj = order[comm[j]]
                if ci == cj:
                    loops[ci] += w  # seen from both ends, so 2w per internal edge
                else:
                    adj[ci][cj] += w
        return _Level(m, [dict(a) for a in adj], loops), [order[comm[i]] for i in range(self.n)]


def _move_nodes(level: _Level, comm: list, order: Sequence[int]) -> bool:
    """Local-moving phase. Mutates ``comm``; returns whether anything moved."""
    two_w = level.two_w
    if two_w <= 0:
        return False
    tot: dict[int, float] = defaultdict(float)
    for i in range(level.n):
        tot[comm[i]] += level.k[i]
    moved = False
    while True:
        moves = 0
        for i in order:
            ci, ki = comm[i], level.k[i]
            links: dict[int, float] = defaultdict(float)
            for j, w in level.adj[i].items():
                links[comm[j]] += w
            tot[ci] -= ki
            best, best_gain = ci, links.get(ci, 0.0) - tot[ci] * ki / two_w
            for c in sorted(links):
                if c == ci:
                    continue
                gain = links[c] - tot[c] * ki / two_w
                if gain > best_gain + GAIN_EPS:
                    best, best_gain = c, gain
            tot[best] += ki
            if best != ci:
                comm[i] = best
                moves += 1
        if not moves:
            return moved
        moved = True


def louvain(g: WeightedRecordGraph, init: str = "singleton", rng: Optional[random.Random] = None,
            history: Optional[list] = None) -> Partition:
    """Deterministic Louvain; returns node -> least member id of its cluster.

    ``init="random"`` shuffles the initial singleton labels and the visit
    order with ``rng``. If ``history`` is given, the modularity of the
    flattened partition is appended at every phase boundary.
    """
    nodes = g.nodes
    index = {v: i for i, v in enumerate(nodes)}
    adj = [{index[u]: w for u, w in g.adjacency[v].items()} for v in nodes]
    level = _Level(len(nodes), adj, [g.loops.get(v, 0.0) for v in nodes])
    owner = list(range(len(nodes)))  # original node -> node of current level

    def record():
        if history is not None:
            history.append(modularity(g, _flatten(nodes, owner)))

    if init == "random":
        rng = rng or random.Random(0)
        labels = list(range(level.n))
        rng.shuffle(labels)
    elif init == "singleton":
        labels = list(range(level.n))
    else:
        raise ValueError(f"unknown init {init!r}")
    record()
    while level.n:
        order = list(range(level.n))
        if init == "random":
            rng.shuffle(order)
        comm = list(labels)
        if not _move_nodes(level, comm, order):
            break
        level, mapping = level.aggregate(comm)
        owner = [mapping[o] for o in owner]
        record()
        labels = list(range(level.n))
    return _flatten(nodes, owner)


def _flatten(nodes, owner) -> Partition:
    least: dict[int, str] = {}
    for v, o in zip(nodes, owner):
        if o not in least or v < least[o]:
            least[o] = v
    return {v: least[o] for v, o in zip(nodes, owner)}


def refine_cluster(sc: SoftCluster, store: Mapping[Pair, float], init: str = "singleton",
                   rng: Optional[random.Random] = None,
                   adjacency: Optional[Mapping[str, Mapping[str, float]]] = None) -> list[EntityCluster]:
    g = build_cluster_graph(sc, store, adjacency)
    part = louvain(g, init=init, rng=rng)
    # nodes are all in g, so isolated members already carry their own label
    if modularity(g, part) < 0:
        return [EntityCluster(sc.members[0], tuple(sc.members))]
    groups: dict[str, list[str]] = defaultdict(list)
    for v in g.nodes:
        groups[part[v]].append(v)
    return [EntityCluster(lab, tuple(sorted(m))) for lab, m in sorted(groups.items())]
