#!/usr/bin/env python3
"""How often does the deterministic Louvain reach the best possible
modularity on small random weighted graphs?

Enumerates every set partition (Bell(8) = 4140 at most) per graph, so keep
--max-nodes at 9 or below. Uses the same graph family as the test suite:
n uniform in [2, max_nodes], edge density uniform in [0.3, 0.9], weights
uniform in [0.05, 1]. Optionally compares networkx's Louvain.
"""
import argparse
import itertools
import random
import sys
from collections import Counter
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "src"))

from gdwm.refine import WeightedRecordGraph, louvain, modularity  # noqa: E402


def random_graph(rng, max_nodes):
    n = rng.randint(2, max_nodes)
    nodes = [f"n{i}" for i in range(n)]
    p = rng.uniform(0.3, 0.9)
    weights = {}
    for a, b in itertools.combinations(nodes, 2):
        if rng.random() < p:
            weights[(a, b)] = round(rng.uniform(0.05, 1.0), 3)
    if not weights:
        weights[(nodes[0], nodes[1])] = 1.0
    return nodes, weights


def partitions(items):
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for part in partitions(rest):
        for i in range(len(part)):
            yield part[:i] + [[first] + part[i]] + part[i + 1:]
        yield [[first]] + part


def best_m(g):
    return max(modularity(g, {v: i for i, b in enumerate(p) for v in b}) for p in partitions(list(g.nodes)))


def main():
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("--graphs", type=int, default=200)
    ap.add_argument("--max-nodes", type=int, default=8)
    ap.add_argument("--first-seed", type=int, default=0)
    ap.add_argument("--networkx", action="store_true", help="also score networkx louvain_communities")
    args = ap.parse_args()

    hits, nx_hits = Counter(), Counter()
    sizes = Counter()
    for seed in range(args.first_seed, args.first_seed + args.graphs):
        nodes, weights = random_graph(random.Random(seed), args.max_nodes)
        g = WeightedRecordGraph(tuple(nodes), weights)
        best = best_m(g)
        n = len(nodes)
        sizes[n] += 1
        hits[n] += modularity(g, louvain(g)) >= best - 1e-9
        if args.networkx:
            import networkx as nx
            G = nx.Graph()
            G.add_nodes_from(nodes)
            G.add_weighted_edges_from((a, b, w) for (a, b), w in weights.items())
            comms = nx.community.louvain_communities(G, weight="weight", seed=seed, threshold=0)
            nx_hits[n] += modularity(g, {v: i for i, c in enumerate(comms) for v in c}) >= best - 1e-9

    print(f"{'nodes':>5}  {'graphs':>6}  {'gdwm':>6}" + (f"  {'networkx':>8}" if args.networkx else ""))
    for n in sorted(sizes):
        line = f"{n:>5}  {sizes[n]:>6}  {hits[n] / sizes[n]:6.3f}"
        if args.networkx:
            line += f"  {nx_hits[n] / sizes[n]:8.3f}"
        print(line)
    total = sum(sizes.values())
    line = f"{'all':>5}  {total:>6}  {sum(hits.values()) / total:6.3f}"
    if args.networkx:
        line += f"  {sum(nx_hits.values()) / total:8.3f}"
    print(line)


if __name__ == "__main__":
    main()
