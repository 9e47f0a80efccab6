//! Comparison centralities for two-mode networks.
//!
//! The bipartite variants (degree, closeness, betweenness) use the side-aware
//! normalizations of Borgatti and Everett; eigenvector and PageRank run on the
//! whole graph with every link taken in both directions. Projected variants
//! compute the ordinary one-mode measure on [`BipartiteGraph::project`].

use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graph::{BipartiteGraph, NodeId, Side};
use crate::scores::{BipartiteScores, CentralityScores};

/// Sources per work unit in the all-sources loops. Fixed so that the
/// floating-point reduction order does not depend on the thread count.
const SOURCE_CHUNK: usize = 64;

/// Whole-graph adjacency: left node `i` is `i`, right node `j` is `n1 + j`.
fn combined_adjacency(graph: &BipartiteGraph) -> Vec<Vec<usize>> {
    let n1 = graph.left_len();
    let mut adj = Vec::with_capacity(n1 + graph.right_len());
    for node in graph.nodes(Side::Left) {
        adj.push(graph.neighbors(node).iter().map(|&r| n1 + r).collect());
    }
    for node in graph.nodes(Side::Right) {
        adj.push(graph.neighbors(node).to_vec());
    }
    adj
}

fn split_sides(graph: &BipartiteGraph, metric: &str, values: Vec<f64>) -> BipartiteScores {
    let n1 = graph.left_len();
    let (left, right) = values.split_at(n1);
    BipartiteScores {
        left: CentralityScores::from_labels(Side::Left, metric, graph.labels(Side::Left), left.to_vec()),
        right: CentralityScores::from_labels(Side::Right, metric, graph.labels(Side::Right), right.to_vec()),
    }
}

fn bfs_distances(adj: &[Vec<usize>], source: usize) -> Vec<usize> {
    let mut dist = vec![usize::MAX; adj.len()];
    dist[source] = 0;
    let mut queue = VecDeque::from([source]);
    while let Some(v) = queue.pop_front() {
        for &w in &adj[v] {
            if dist[w] == usize::MAX {
                dist[w] = dist[v] + 1;
                queue.push_back(w);
            }
        }
    }
    dist
}

/// Shortest-path betweenness of an undirected unweighted graph, unnormalized,
/// each unordered endpoint pair counted once.
fn brandes(adj: &[Vec<usize>]) -> Vec<f64> {
    let n = adj.len();
    let chunks: Vec<Vec<f64>> = (0..n.div_ceil(SOURCE_CHUNK))
        .into_par_iter()
        .map(|chunk| {
            let mut acc = vec![0.0; n];
            let mut sigma = vec![0.0f64; n];
            let mut dist = vec![usize::MAX; n];
            let mut delta = vec![0.0f64; n];
            let mut order = Vec::with_capacity(n);
            let mut queue = VecDeque::new();
            let end = ((chunk + 1) * SOURCE_CHUNK).min(n);
            for s in chunk * SOURCE_CHUNK..end {
                sigma.fill(0.0);
                dist.fill(usize::MAX);
                delta.fill(0.0);
                order.clear();
                sigma[s] = 1.0;
                dist[s] = 0;
                queue.push_back(s);
                while let Some(v) = queue.pop_front() {
                    order.push(v);
                    for &w in &adj[v] {
                        if dist[w] == usize::MAX {
                            dist[w] = dist[v] + 1;
                            queue.push_back(w);
                        }
                        if dist[w] == dist[v] + 1 {
                            sigma[w] += sigma[v];
                        }
                    }
                }
                for &w in order.iter().rev() {
                    for &v in &adj[w] {
                        if dist[v] != usize::MAX && dist[v] + 1 == dist[w] {
                            delta[v] += sigma[v] / sigma[w] * (1.0 + delta[w]);
                        }
                    }
                    if w != s {
                        acc[w] += delta[w];
                    }
                }
            }
            acc
        })
        .collect();
    let mut total = vec![0.0; n];
    for acc in chunks {
        for (t, a) in total.iter_mut().zip(acc) {
            *t += a;
        }
    }
    for t in &mut total {
        *t /= 2.0;
    }
    total
}

/// Degree divided by the size of the opposite side.
pub fn bipartite_degree(graph: &BipartiteGraph) -> Result<BipartiteScores> {
    let (n1, n2) = (graph.left_len(), graph.right_len());
    if n1 == 0 || n2 == 0 {
        return Err(Error::Validation("bipartite degree needs both sides nonempty".into()));
    }
    let left = graph.degrees(Side::Left).into_iter().map(|d| d as f64 / n2 as f64);
    let right = graph.degrees(Side::Right).into_iter().map(|d| d as f64 / n1 as f64);
    Ok(split_sides(graph, "degree2", left.chain(right).collect()))
}

/// Closeness normalized by the smallest total distance a node of its side can have.
///
/// On a disconnected graph the total runs over the node's component, the
/// normalizer uses the component's side sizes, and the result is scaled by
/// the fraction of other nodes the component reaches.
pub fn bipartite_closeness(graph: &BipartiteGraph) -> BipartiteScores {
    let adj = combined_adjacency(graph);
    let n1 = graph.left_len();
    let n = adj.len();
    let rows: Vec<(f64, bool)> = (0..n)
        .into_par_iter()
        .map(|s| {
            let dist = bfs_distances(&adj, s);
            let (mut total, mut own, mut other) = (0usize, 0usize, 0usize);
            for (v, &d) in dist.iter().enumerate() {
                if d == usize::MAX || v == s {
                    continue;
                }
                total += d;
                if (v < n1) == (s < n1) {
                    own += 1;
                } else {
                    other += 1;
                }
            }
            let reachable = own + other;
            let connected = reachable + 1 == n;
            if total == 0 {
                return (0.0, connected);
            }
            let best = (other + 2 * own) as f64;
            let scale = reachable as f64 / (n - 1) as f64;
            (best / total as f64 * scale, connected)
        })
        .collect();
    let connected = rows.iter().all(|&(_, c)| c);
    let mut scores = split_sides(graph, "closeness2", rows.into_iter().map(|(v, _)| v).collect());
    if !connected {
        for side in [&mut scores.left, &mut scores.right] {
            side.warn("graph is disconnected; closeness restricted to each node's component".into());
        }
    }
    scores
}

/// Largest betweenness a node on a side with `own` nodes can reach when the
/// other side has `other` nodes.
pub fn max_bipartite_betweenness(own: usize, other: usize) -> f64 {
    if own == 0 || other == 0 {
        return 0.0;
    }
    let s = ((own - 1) / other) as f64;
    let t = ((own - 1) % other) as f64;
    let m = other as f64;
    0.5 * (m * m * (s + 1.0) * (s + 1.0) + m * (s + 1.0) * (2.0 * t - s - 1.0) - t * (2.0 * s - t + 3.0))
}

/// Shortest-path betweenness divided by the side's maximum possible value.
pub fn bipartite_betweenness(graph: &BipartiteGraph) -> BipartiteScores {
    let (n1, n2) = (graph.left_len(), graph.right_len());
    let raw = brandes(&combined_adjacency(graph));
    let bmax = [max_bipartite_betweenness(n1, n2), max_bipartite_betweenness(n2, n1)];
    let mut clamped = [0usize; 2];
    let values = raw
        .iter()
        .enumerate()
        .map(|(v, &b)| {
            let side = usize::from(v >= n1);
            if bmax[side] <= 0.0 {
                return 0.0;
            }
            let value = b / bmax[side];
            if value > 1.0 + 1e-9 {
                clamped[side] += 1;
            }
            value.min(1.0)
        })
        .collect();
    let mut scores = split_sides(graph, "betweenness2", values);
    for (side, count) in [(&mut scores.left, clamped[0]), (&mut scores.right, clamped[1])] {
        if count > 0 {
            side.warn(format!("{count} values exceeded the side maximum and were clamped to 1"));
        }
    }
    scores
}

#[derive(Clone, Debug)]
pub struct EigenvectorCentrality {
    /// Entries of the principal eigenvector scaled to unit maximum.
    pub scores: BipartiteScores,
    /// Principal eigenvalue of the adjacency matrix.
    pub eigenvalue: f64,
    pub iterations: usize,
}

/// Principal eigenvector of the adjacency matrix.
///
/// The spectrum of a bipartite adjacency matrix is symmetric (`±λ`), so plain
/// power iteration oscillates. Iterating on `A + I` shifts the spectrum to
/// `1 ± λ`, keeps the eigenvectors, and makes `1 + λ_max` strictly dominant.
pub fn eigenvector_centrality(
    graph: &BipartiteGraph,
    tolerance: f64,
    max_iterations: usize,
) -> Result<EigenvectorCentrality> {
    let adj = combined_adjacency(graph);
    let n = adj.len();
    if n == 0 {
        return Err(Error::Validation("graph has no nodes".into()));
    }
    let mut x = vec![1.0; n];
    let mut next = vec![0.0; n];
    let mut residual = f64::INFINITY;
    for iteration in 1..=max_iterations {
        for v in 0..n {
            next[v] = x[v] + adj[v].iter().map(|&w| x[w]).sum::<f64>();
        }
        let max = next.iter().copied().fold(0.0, f64::max);
        for v in &mut next {
            *v /= max;
        }
        residual = x.iter().zip(&next).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
        std::mem::swap(&mut x, &mut next);
        if residual < tolerance {
            let ax: Vec<f64> = (0..n).map(|v| adj[v].iter().map(|&w| x[w]).sum()).collect();
            let eigenvalue = ax.iter().zip(&x).map(|(a, b)| a * b).sum::<f64>() / x.iter().map(|v| v * v).sum::<f64>();
            return Ok(EigenvectorCentrality {
                scores: split_sides(graph, "eigenvector", x),
                eigenvalue,
                iterations: iteration,
            });
        }
    }
    Err(Error::Convergence {
        iterations: max_iterations,
        residual,
    })
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PageRankConfig {
    pub damping: f64,
    /// L1 change between iterations below which the iteration stops.
    pub tolerance: f64,
    pub max_iterations: usize,
}

impl Default for PageRankConfig {
    fn default() -> Self {
        Self {
            damping: 0.85,
            tolerance: 1e-10,
            max_iterations: 1000,
        }
    }
}

/// PageRank over all `n1 + n2` nodes, every link followed in both directions.
/// Scores over both sides sum to 1; degree-0 nodes spread their mass uniformly.
pub fn pagerank(graph: &BipartiteGraph, config: &PageRankConfig) -> Result<BipartiteScores> {
    if !(config.damping > 0.0 && config.damping < 1.0) {
        return Err(Error::Domain(format!("damping must lie in (0, 1), got {}", config.damping)));
    }
    if !(config.tolerance > 0.0) || config.max_iterations == 0 {
        return Err(Error::Domain("tolerance and max_iterations must be positive".into()));
    }
    let adj = combined_adjacency(graph);
    let n = adj.len();
    if n == 0 {
        return Err(Error::Validation("graph has no nodes".into()));
    }
    let d = config.damping;
    let nf = n as f64;
    let mut rank = vec![1.0 / nf; n];
    let mut next = vec![0.0; n];
    let mut residual = f64::INFINITY;
    for _ in 0..config.max_iterations {
        let dangling: f64 = (0..n).filter(|&v| adj[v].is_empty()).map(|v| rank[v]).sum();
        let base = (1.0 - d) / nf + d * dangling / nf;
        for v in 0..n {
            next[v] = base + d * adj[v].iter().map(|&w| rank[w] / adj[w].len() as f64).sum::<f64>();
        }
        residual = rank.iter().zip(&next).map(|(a, b)| (a - b).abs()).sum();
        std::mem::swap(&mut rank, &mut next);
        if residual < config.tolerance {
            let total: f64 = rank.iter().sum();
            return Ok(split_sides(graph, "pagerank", rank.into_iter().map(|r| r / total).collect()));
        }
    }
    Err(Error::Convergence {
        iterations: config.max_iterations,
        residual,
    })
}

fn intersection_len(a: &[usize], b: &[usize]) -> usize {
    let (mut i, mut j, mut count) = (0, 0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                count += 1;
                i += 1;
                j += 1;
            }
        }
    }
    count
}

/// Latapy pair coefficient `|N(u) ∩ N(v)| / |N(u) ∪ N(v)|` for two nodes of one side.
pub fn latapy_pair(graph: &BipartiteGraph, u: NodeId, v: NodeId) -> Result<f64> {
    if u.side != v.side {
        return Err(Error::Usage("Latapy coefficients compare nodes of one side".into()));
    }
    let (a, b) = (graph.neighbors(u), graph.neighbors(v));
    let shared = intersection_len(a, b);
    let union = a.len() + b.len() - shared;
    Ok(if union == 0 { 0.0 } else { shared as f64 / union as f64 })
}

/// Mean Latapy pair coefficient over each node's same-side 2-hop neighbors.
/// Nodes without 2-hop neighbors score 0.
pub fn latapy_cc(graph: &BipartiteGraph, side: Side) -> CentralityScores {
    let n = graph.len(side);
    let values = (0..n)
        .into_par_iter()
        .map(|u| {
            let node = NodeId::new(side, u);
            let mut shared: HashMap<usize, usize> = HashMap::new();
            for &y in graph.neighbors(node) {
                for &v in graph.neighbors(NodeId::new(side.opposite(), y)) {
                    if v != u {
                        *shared.entry(v).or_insert(0) += 1;
                    }
                }
            }
            if shared.is_empty() {
                return 0.0;
            }
            let du = graph.node_degree(node);
            let mut pairs: Vec<(usize, usize)> = shared.into_iter().collect();
            pairs.sort_unstable();
            let sum: f64 = pairs
                .iter()
                .map(|&(v, c)| {
                    let dv = graph.node_degree(NodeId::new(side, v));
                    c as f64 / (du + dv - c) as f64
                })
                .sum();
            sum / pairs.len() as f64
        })
        .collect();
    CentralityScores::from_labels(side, "latapy", graph.labels(side), values)
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct OpsahlCoefficient {
    /// `closed / four_paths`, or 0 when there are no 4-paths.
    pub value: f64,
    pub four_paths: u64,
    pub closed: u64,
}

impl OpsahlCoefficient {
    /// False when the graph has no 4-paths and `value` is a placeholder 0.
    pub fn is_defined(&self) -> bool {
        self.four_paths > 0
    }
}

/// Opsahl's two-mode global clustering with the left side as primary nodes.
pub fn opsahl_cc(graph: &BipartiteGraph) -> OpsahlCoefficient {
    opsahl_cc_for(graph, Side::Left)
}

/// Opsahl's coefficient with 4-path endpoints on `primary`.
///
/// A 4-path `a–x–b–y–c` has `a, b, c` on the primary side and distinct `x, y`
/// on the other; it is closed when `a` and `c` share a neighbor other than
/// `x` and `y`.
pub fn opsahl_cc_for(graph: &BipartiteGraph, primary: Side) -> OpsahlCoefficient {
    let secondary = primary.opposite();
    let nb = |side: Side, i: usize| graph.neighbors(NodeId::new(side, i));
    let (four_paths, closed) = (0..graph.len(primary))
        .into_par_iter()
        .map(|b| {
            let mut wedges = Vec::new();
            for &x in nb(primary, b) {
                for &a in nb(secondary, x) {
                    if a != b {
                        wedges.push((a, x));
                    }
                }
            }
            let mut shared_cache: HashMap<(usize, usize), usize> = HashMap::new();
            let (mut paths, mut closed) = (0u64, 0u64);
            for (i, &(a, x)) in wedges.iter().enumerate() {
                for &(c, y) in &wedges[i + 1..] {
                    if x == y || a == c {
                        continue;
                    }
                    paths += 1;
                    let key = (a.min(c), a.max(c));
                    let shared = *shared_cache
                        .entry(key)
                        .or_insert_with(|| intersection_len(nb(primary, a), nb(primary, c)));
                    let x_shared = usize::from(nb(primary, c).binary_search(&x).is_ok());
                    let y_shared = usize::from(nb(primary, a).binary_search(&y).is_ok());
                    if shared > x_shared + y_shared {
                        closed += 1;
                    }
                }
            }
            (paths, closed)
        })
        .reduce(|| (0, 0), |p, q| (p.0 + q.0, p.1 + q.1));
    if four_paths == 0 {
        log::warn!("no 4-paths in the graph; Opsahl coefficient reported as 0");
    }
    OpsahlCoefficient {
        value: if four_paths == 0 { 0.0 } else { closed as f64 / four_paths as f64 },
        four_paths,
        closed,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ProjectedMetric {
    Degree,
    Closeness,
    Betweenness,
}

impl ProjectedMetric {
    pub fn name(self) -> &'static str {
        match self {
            ProjectedMetric::Degree => "degree1",
            ProjectedMetric::Closeness => "closeness1",
            ProjectedMetric::Betweenness => "betweenness1",
        }
    }
}

impl fmt::Display for ProjectedMetric {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ProjectedMetric {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "degree" | "degree1" => Ok(ProjectedMetric::Degree),
            "closeness" | "closeness1" => Ok(ProjectedMetric::Closeness),
            "betweenness" | "betweenness1" => Ok(ProjectedMetric::Betweenness),
            other => Err(Error::Usage(format!("unknown projected metric `{other}`"))),
        }
    }
}

/// One-mode centrality on the projection of `side`.
pub fn projected_centrality(graph: &BipartiteGraph, side: Side, metric: ProjectedMetric) -> CentralityScores {
    let projection = graph.project(side);
    let adj = projection.adjacency();
    let n = adj.len();
    let labels = projection.labels();
    match metric {
        ProjectedMetric::Degree => {
            let values = adj
                .iter()
                .map(|row| if n > 1 { row.len() as f64 / (n - 1) as f64 } else { 0.0 })
                .collect();
            CentralityScores::from_labels(side, metric.name(), labels, values)
        }
        ProjectedMetric::Closeness => {
            let rows: Vec<(f64, bool)> = (0..n)
                .into_par_iter()
                .map(|s| {
                    let dist = bfs_distances(adj, s);
                    let reached: Vec<usize> = dist.iter().copied().filter(|&d| d != usize::MAX && d > 0).collect();
                    let total: usize = reached.iter().sum();
                    let connected = reached.len() + 1 == n;
                    if total == 0 {
                        return (0.0, connected);
                    }
                    let r = reached.len() as f64;
                    (r / total as f64 * (r / (n - 1) as f64), connected)
                })
                .collect();
            let connected = rows.iter().all(|&(_, c)| c);
            let mut scores =
                CentralityScores::from_labels(side, metric.name(), labels, rows.into_iter().map(|(v, _)| v).collect());
            if !connected {
                scores.warn("projection is disconnected; closeness restricted to each node's component".into());
            }
            scores
        }
        ProjectedMetric::Betweenness => {
            let raw = brandes(adj);
            let norm = if n > 2 { ((n - 1) * (n - 2)) as f64 / 2.0 } else { 0.0 };
            let values = raw.into_iter().map(|b| if norm > 0.0 { b / norm } else { 0.0 }).collect();
            CentralityScores::from_labels(side, metric.name(), labels, values)
        }
    }
}
