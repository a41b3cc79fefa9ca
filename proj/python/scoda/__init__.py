"""Streaming community detection (SCoDA) with evaluation metrics and experiments."""

from ._scoda import (
    DegreeStats,
    ErResult,
    FpeReport,
    Graph,
    IntraProbability,
    Partition,
    ScoreReport,
    SweepResult,
    VarianceResult,
    avg_f1,
    CommunityStats,
    EdgeStream,
    ScodaError,
    community_stats,
    detect,
    degree_stats,
    er_experiment,
    erdos_renyi,
    extract_communities,
    f1_pair,
    fpe_bound,
    fpe_experiment,
    intra_probability,
    load_graph,
    nmi,
    resolve_threshold,
    run,
    run_parallel,
    score,
    shuffle,
    sweep_d,
    variance_experiment,
    weighted_shuffle,
)

__all__ = [name for name in dir() if not name.startswith("_")]
