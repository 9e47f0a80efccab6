//! Hellinger distances between same-side nodes and the HellRank score.
//!
//! Every node is summarized by its neighbor-degree vector `L_x`. Two modes
//! compare those vectors:
//!
//! * [`DistanceMode::Raw`]: `d(x, y) = ‖√L_x − √L_y‖₂` on unnormalized
//!   counts. Degree differences show up in the distance and the bounds of
//!   [`distance_bounds`] hold.
//! * [`DistanceMode::Normalized`]: `d(x, y) = (1/√2)·‖√L̂_x − √L̂_y‖₂`, where
//!   `L̂` is `L` scaled to unit mass. Values lie in `[0, 1]`. An isolated
//!   node has the zero vector and sits at `1/√2` from every other node.
//!
//! HellRank is `n / Σ_z d(x, z)` over the `n` nodes of the side (self
//! included). Only row sums are needed, so scores are computed without
//! materializing the `n × n` matrix. Nodes with bit-identical vectors are
//! collapsed first; on collaboration-style data that removes most of the
//! quadratic work.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;

use crate::degree_vector::{sqrt_entries, sqrt_profile_distance, NeighborDegreeVector};
use crate::error::{Error, Result};
use crate::graph::{BipartiteGraph, NodeId, Side, UnipartiteGraph};
use crate::scores::CentralityScores;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum DistanceMode {
    Raw,
    #[default]
    Normalized,
}

impl fmt::Display for DistanceMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            DistanceMode::Raw => "raw",
            DistanceMode::Normalized => "normalized",
        })
    }
}

impl FromStr for DistanceMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "raw" => Ok(DistanceMode::Raw),
            "normalized" | "normalised" | "norm" => Ok(DistanceMode::Normalized),
            other => Err(Error::Usage(format!("unknown distance mode `{other}`"))),
        }
    }
}

/// Default cap on the side size for which a full matrix may be built.
pub const DEFAULT_MATRIX_CAP: usize = 20_000;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DistanceOptions {
    pub mode: DistanceMode,
    /// Use summed link weights (`W_x`) instead of neighbor counts (`L_x`).
    pub weighted: bool,
    /// Largest side for which [`distance_matrix_with`] will allocate; `None` lifts the cap.
    pub matrix_cap: Option<usize>,
}

impl Default for DistanceOptions {
    fn default() -> Self {
        Self {
            mode: DistanceMode::Normalized,
            weighted: false,
            matrix_cap: Some(DEFAULT_MATRIX_CAP),
        }
    }
}

impl DistanceOptions {
    pub fn new(mode: DistanceMode) -> Self {
        Self {
            mode,
            ..Self::default()
        }
    }

    pub fn weighted(mut self, weighted: bool) -> Self {
        self.weighted = weighted;
        self
    }

    pub fn matrix_cap(mut self, cap: Option<usize>) -> Self {
        self.matrix_cap = cap;
        self
    }
}

/// `D_H(P‖Q) = (1/√2)·√Σ(√p_i − √q_i)²` for dense nonnegative vectors.
pub fn hellinger_distance(p: &[f64], q: &[f64]) -> Result<f64> {
    if p.len() != q.len() {
        return Err(Error::Domain(format!(
            "vectors differ in length ({} vs {})",
            p.len(),
            q.len()
        )));
    }
    if let Some(bad) = p.iter().chain(q).find(|v| !(**v >= 0.0) || !v.is_finite()) {
        return Err(Error::Domain(format!("entries must be finite and nonnegative, got {bad}")));
    }
    let sum: f64 = p
        .iter()
        .zip(q)
        .map(|(a, b)| {
            let diff = a.sqrt() - b.sqrt();
            diff * diff
        })
        .sum();
    Ok(sum.sqrt() / std::f64::consts::SQRT_2)
}

/// Lower and upper bound on the raw-mode distance of two nodes with degrees
/// `k1` and `k2`: `(√max − √min, √(k1 + k2))`.
pub fn distance_bounds(k1: usize, k2: usize) -> Result<(f64, f64)> {
    if k1 == 0 || k2 == 0 {
        return Err(Error::Domain("degrees must be positive".into()));
    }
    let (hi, lo) = if k1 >= k2 { (k1, k2) } else { (k2, k1) };
    let lower = (hi as f64).sqrt() - (lo as f64).sqrt();
    let upper = ((hi + lo) as f64).sqrt();
    Ok((lower, upper))
}

fn profile_vector(graph: &BipartiteGraph, node: NodeId, weighted: bool) -> Result<NeighborDegreeVector> {
    if weighted {
        graph.weighted_neighbor_degree_vector(node)
    } else {
        Ok(graph.neighbor_degree_vector(node))
    }
}

fn mode_scale(mode: DistanceMode) -> f64 {
    match mode {
        DistanceMode::Raw => 1.0,
        DistanceMode::Normalized => std::f64::consts::FRAC_1_SQRT_2,
    }
}

fn sqrt_profile(vector: &NeighborDegreeVector, mode: DistanceMode) -> Vec<(usize, f64)> {
    match mode {
        DistanceMode::Raw => sqrt_entries(vector.entries()),
        DistanceMode::Normalized => sqrt_entries(vector.normalized().entries()),
    }
}

fn vector_distance(a: &NeighborDegreeVector, b: &NeighborDegreeVector, mode: DistanceMode) -> f64 {
    mode_scale(mode) * sqrt_profile_distance(&sqrt_profile(a, mode), &sqrt_profile(b, mode))
}

fn check_same_side(x: NodeId, y: NodeId) -> Result<()> {
    if x.side != y.side {
        return Err(Error::Usage(format!(
            "distances are defined between nodes of one side, got {} and {}",
            x.side, y.side
        )));
    }
    Ok(())
}

/// Distance between two nodes of the same side from their neighbor-degree vectors.
pub fn node_distance(graph: &BipartiteGraph, x: NodeId, y: NodeId, mode: DistanceMode) -> Result<f64> {
    check_same_side(x, y)?;
    Ok(vector_distance(
        &graph.neighbor_degree_vector(x),
        &graph.neighbor_degree_vector(y),
        mode,
    ))
}

/// [`node_distance`] on weight-summed vectors `W_x`.
pub fn weighted_node_distance(graph: &BipartiteGraph, x: NodeId, y: NodeId, mode: DistanceMode) -> Result<f64> {
    check_same_side(x, y)?;
    Ok(vector_distance(
        &graph.weighted_neighbor_degree_vector(x)?,
        &graph.weighted_neighbor_degree_vector(y)?,
        mode,
    ))
}

/// Square-rooted, mode-scaled vectors for one side with duplicates collapsed.
#[derive(Clone, Debug)]
pub struct SideProfiles {
    side: Side,
    mode: DistanceMode,
    scale: f64,
    profiles: Vec<Vec<(usize, f64)>>,
    multiplicity: Vec<usize>,
    node_profile: Vec<usize>,
}

impl SideProfiles {
    pub fn new(graph: &BipartiteGraph, side: Side, options: &DistanceOptions) -> Result<Self> {
        if options.weighted && !graph.is_weighted() {
            return Err(Error::Config("weighted distances need a weighted graph".into()));
        }
        let mut lookup: HashMap<Vec<(usize, u64)>, usize> = HashMap::new();
        let mut profiles = Vec::new();
        let mut multiplicity = Vec::new();
        let mut node_profile = Vec::with_capacity(graph.len(side));
        for node in graph.nodes(side) {
            let vector = profile_vector(graph, node, options.weighted)?;
            let profile = sqrt_profile(&vector, options.mode);
            let key: Vec<(usize, u64)> = profile.iter().map(|&(d, v)| (d, v.to_bits())).collect();
            let id = *lookup.entry(key).or_insert_with(|| {
                profiles.push(profile);
                multiplicity.push(0);
                profiles.len() - 1
            });
            multiplicity[id] += 1;
            node_profile.push(id);
        }
        Ok(Self {
            side,
            mode: options.mode,
            scale: mode_scale(options.mode),
            profiles,
            multiplicity,
            node_profile,
        })
    }

    pub fn side(&self) -> Side {
        self.side
    }

    pub fn mode(&self) -> DistanceMode {
        self.mode
    }

    pub fn node_count(&self) -> usize {
        self.node_profile.len()
    }

    /// Number of distinct vectors on the side.
    pub fn distinct_count(&self) -> usize {
        self.profiles.len()
    }

    /// Distance between nodes `i` and `j` (indices on the side).
    pub fn distance(&self, i: usize, j: usize) -> f64 {
        let (a, b) = (self.node_profile[i], self.node_profile[j]);
        if a == b {
            return 0.0;
        }
        self.scale * sqrt_profile_distance(&self.profiles[a], &self.profiles[b])
    }

    /// `Σ_z d(x, z)` for every node `x`, in node order.
    pub fn row_sums(&self) -> Vec<f64> {
        let per_profile: Vec<f64> = (0..self.profiles.len())
            .into_par_iter()
            .map(|a| {
                let mut sum = 0.0;
                for (b, other) in self.profiles.iter().enumerate() {
                    if a != b {
                        sum += self.multiplicity[b] as f64 * sqrt_profile_distance(&self.profiles[a], other);
                    }
                }
                self.scale * sum
            })
            .collect();
        self.node_profile.iter().map(|&p| per_profile[p]).collect()
    }
}

/// Symmetric distance matrix over one side; only the strict upper triangle is stored.
#[derive(Clone, Debug, PartialEq)]
pub struct DistanceMatrix {
    side: Side,
    mode: DistanceMode,
    labels: Vec<String>,
    upper: Vec<f64>,
}

impl DistanceMatrix {
    pub fn side(&self) -> Side {
        self.side
    }

    pub fn mode(&self) -> DistanceMode {
        self.mode
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    fn offset(&self, i: usize, j: usize) -> usize {
        let n = self.labels.len();
        // Row i starts after rows 0..i, each holding n - r - 1 entries.
        i * (2 * n - i - 1) / 2 + (j - i - 1)
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        match i.cmp(&j) {
            std::cmp::Ordering::Equal => 0.0,
            std::cmp::Ordering::Less => self.upper[self.offset(i, j)],
            std::cmp::Ordering::Greater => self.upper[self.offset(j, i)],
        }
    }

    pub fn get_by_label(&self, a: &str, b: &str) -> Option<f64> {
        let i = self.labels.iter().position(|l| l == a)?;
        let j = self.labels.iter().position(|l| l == b)?;
        Some(self.get(i, j))
    }

    pub fn row(&self, i: usize) -> Vec<f64> {
        (0..self.len()).map(|j| self.get(i, j)).collect()
    }

    pub fn max_value(&self) -> f64 {
        self.upper.iter().copied().fold(0.0, f64::max)
    }
}

/// Full pairwise matrix over `side` in the given mode.
pub fn distance_matrix(graph: &BipartiteGraph, side: Side, mode: DistanceMode) -> Result<DistanceMatrix> {
    distance_matrix_with(graph, side, &DistanceOptions::new(mode))
}

pub fn distance_matrix_with(graph: &BipartiteGraph, side: Side, options: &DistanceOptions) -> Result<DistanceMatrix> {
    let n = graph.len(side);
    if n == 0 {
        return Err(Error::Validation(format!("{side} side has no nodes")));
    }
    if let Some(cap) = options.matrix_cap {
        if n > cap {
            return Err(Error::MatrixTooLarge { side, nodes: n, cap });
        }
    }
    let profiles = SideProfiles::new(graph, side, options)?;
    let rows: Vec<Vec<f64>> = (0..n)
        .into_par_iter()
        .map(|i| ((i + 1)..n).map(|j| profiles.distance(i, j)).collect())
        .collect();
    Ok(DistanceMatrix {
        side,
        mode: options.mode,
        labels: graph.labels(side).to_vec(),
        upper: rows.concat(),
    })
}

/// HellRank of every node on `side`.
pub fn hellrank(graph: &BipartiteGraph, side: Side, mode: DistanceMode) -> Result<CentralityScores> {
    hellrank_with(graph, side, &DistanceOptions::new(mode))
}

pub fn hellrank_with(graph: &BipartiteGraph, side: Side, options: &DistanceOptions) -> Result<CentralityScores> {
    let n = graph.len(side);
    if n < 2 {
        return Err(Error::Validation(format!(
            "HellRank needs at least two nodes on the {side} side, found {n}"
        )));
    }
    let profiles = SideProfiles::new(graph, side, options)?;
    let sums = profiles.row_sums();
    let labels = graph.labels(side);
    if sums.iter().all(|&s| s == 0.0) {
        let mut scores = CentralityScores::from_labels(side, "hellrank", labels, vec![1.0; n]);
        scores.warn("all pairwise distances are zero; returning uniform scores".into());
        return Ok(scores);
    }
    let values = sums.iter().map(|&s| n as f64 / s).collect();
    Ok(CentralityScores::from_labels(side, "hellrank", labels, values))
}

/// Divides every score by the maximum, so the best node scores 1.
pub fn normalize_scores(scores: &CentralityScores) -> Result<CentralityScores> {
    let max = scores
        .max_value()
        .ok_or_else(|| Error::Domain("cannot normalize an empty score table".into()))?;
    if !(max > 0.0) || !max.is_finite() {
        return Err(Error::Domain(format!("maximum score must be positive, got {max}")));
    }
    Ok(scores.map_values(|v| v / max))
}

/// Graph over the matrix labels joining every pair closer than `threshold`.
/// Edge weights carry the distance.
pub fn threshold_graph(matrix: &DistanceMatrix, threshold: f64) -> UnipartiteGraph {
    let n = matrix.len();
    let mut edges = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            let d = matrix.get(i, j);
            if d < threshold {
                edges.push((i, j, Some(d)));
            }
        }
    }
    UnipartiteGraph::from_edges(matrix.labels().to_vec(), edges)
}
