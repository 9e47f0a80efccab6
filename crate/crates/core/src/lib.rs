//! HellRank: Hellinger-distance centrality for bipartite networks.
//!
//! Each node is described by the degree histogram of its neighbors. Nodes
//! on one side are compared with the Hellinger distance between those
//! histograms, and a node scores high when it is, in aggregate, close to
//! every other node of its side.
//!
//! The crate also carries the usual bipartite baselines (degree, closeness,
//! betweenness, eigenvector, PageRank, Latapy and Opsahl clustering),
//! closed-form Hellinger statistics under an Erdős–Rényi null model, and
//! rank-agreement tools for comparing score tables.
//!
//! See the `examples/` directory for one runnable program per capability.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod baselines;
pub mod cli;
pub mod datasets;
pub mod degree_vector;
pub mod error;
pub mod graph;
pub mod export;
pub mod hellinger;
pub mod null_model;
pub mod rank_eval;
pub mod scores;

pub use baselines::{
    bipartite_betweenness, bipartite_closeness, bipartite_degree, eigenvector_centrality, latapy_cc, latapy_pair,
    max_bipartite_betweenness, opsahl_cc, opsahl_cc_for, pagerank, projected_centrality, EigenvectorCentrality,
    OpsahlCoefficient, PageRankConfig, ProjectedMetric,
};
pub use degree_vector::NeighborDegreeVector;
pub use error::{Error, Result};
pub use graph::{load_edge_list, BipartiteGraph, Delimiter, EdgeListOptions, GraphBuilder, NodeId, Side, UnipartiteGraph};
pub use hellinger::{
    distance_bounds, distance_matrix, distance_matrix_with, hellinger_distance, hellrank, hellrank_with,
    node_distance, normalize_scores, threshold_graph, weighted_node_distance, DistanceMatrix, DistanceMode,
    DistanceOptions, SideProfiles,
};
pub use scores::{BipartiteScores, CentralityScores};
pub use datasets::{load_builtin, BUILTIN_DATASETS};
pub use null_model::{
    erdos_renyi_bipartite, expected_distance_moments, expected_distance_moments_with_cutoff, monte_carlo_distance,
    poisson_hellinger_sq, similarity_threshold, DistanceMoments, NullModelParams,
};
pub use rank_eval::{kendall_tau, kendall_tau_with, spearman_rho, sweep_k, top_k_vector, RankVector, TauVariant};
