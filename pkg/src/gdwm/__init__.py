"""Two-step graph clustering for unsupervised entity resolution.

Records are blocked on rare tokens, scored pairwise, grouped into soft
clusters by transitive closure at a similarity threshold mu, and each soft
cluster is then split by Louvain modularity maximization.
"""
from .blocking import Block, BlockingConfig, build_blocks
from .closure import SoftCluster, prune_pairs, transitive_closure
from .ingest import RecordRef, RecordSet, build_token_stats, merge_sources, normalize_and_tokenize
from .matching import ScoredPairStore, levenshtein, match_blocks, score_pair, token_sim
from .metrics import EvalReport, compute_metrics, evaluate, pair_counts
from .pipeline import LinkIndex, PipelineConfig, canonicalize, read_link_index, run_pipeline, write_link_index
from .refine import EntityCluster, WeightedRecordGraph, build_cluster_graph, louvain, modularity, refine_cluster

__version__ = "0.1.0"
