//! Two-mode graphs, edge-list ingestion and one-mode projection.
//!
//! Nodes live in two index spaces, one per [`Side`]. Labels are scoped per
//! side, so `"1"` on the left and `"1"` on the right are different nodes.
//! Node order is first-appearance order, which makes every downstream output
//! deterministic for a given input file.

use std::collections::HashMap;
use std::fmt;
use std::io::BufRead;
use std::str::FromStr;

use crate::degree_vector::NeighborDegreeVector;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Side {
    Left,
    Right,
}

impl Side {
    pub fn opposite(self) -> Side {
        match self {
            Side::Left => Side::Right,
            Side::Right => Side::Left,
        }
    }

    fn slot(self) -> usize {
        match self {
            Side::Left => 0,
            Side::Right => 1,
        }
    }
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Side::Left => "left",
            Side::Right => "right",
        })
    }
}

impl FromStr for Side {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "left" | "l" | "1" => Ok(Side::Left),
            "right" | "r" | "2" => Ok(Side::Right),
            other => Err(Error::Usage(format!("unknown side `{other}` (expected left or right)"))),
        }
    }
}

/// A node handle: side plus index within that side.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct NodeId {
    pub side: Side,
    pub index: usize,
}

impl NodeId {
    pub fn new(side: Side, index: usize) -> Self {
        Self { side, index }
    }
}

/// Immutable two-mode graph with optional positive link weights.
#[derive(Clone, Debug)]
pub struct BipartiteGraph {
    labels: [Vec<String>; 2],
    index: [HashMap<String, usize>; 2],
    adjacency: [Vec<Vec<usize>>; 2],
    weights: Option<[Vec<Vec<f64>>; 2]>,
    link_count: usize,
}

impl BipartiteGraph {
    pub fn builder() -> GraphBuilder {
        GraphBuilder::new(false)
    }

    pub fn weighted_builder() -> GraphBuilder {
        GraphBuilder::new(true)
    }

    /// Unweighted graph from `(left, right)` label pairs.
    pub fn from_links<'a, I>(links: I) -> Self
    where
        I: IntoIterator<Item = (&'a str, &'a str)>,
    {
        let mut builder = Self::builder();
        for (l, r) in links {
            builder
                .add_link(l, r, None)
                .expect("unweighted links cannot fail validation");
        }
        builder.build()
    }

    pub fn len(&self, side: Side) -> usize {
        self.labels[side.slot()].len()
    }

    pub fn left_len(&self) -> usize {
        self.len(Side::Left)
    }

    pub fn right_len(&self) -> usize {
        self.len(Side::Right)
    }

    pub fn link_count(&self) -> usize {
        self.link_count
    }

    pub fn is_weighted(&self) -> bool {
        self.weights.is_some()
    }

    pub fn labels(&self, side: Side) -> &[String] {
        &self.labels[side.slot()]
    }

    pub fn label(&self, node: NodeId) -> &str {
        &self.labels[node.side.slot()][node.index]
    }

    pub fn node(&self, side: Side, label: &str) -> Result<NodeId> {
        self.index[side.slot()]
            .get(label)
            .map(|&index| NodeId { side, index })
            .ok_or_else(|| Error::UnknownNode {
                side,
                label: label.to_string(),
            })
    }

    pub fn nodes(&self, side: Side) -> impl Iterator<Item = NodeId> + '_ {
        (0..self.len(side)).map(move |index| NodeId { side, index })
    }

    /// Sorted neighbor indices; they index into the opposite side.
    pub fn neighbors(&self, node: NodeId) -> &[usize] {
        &self.adjacency[node.side.slot()][node.index]
    }

    /// Weights aligned with [`neighbors`](Self::neighbors), if the graph is weighted.
    pub fn link_weights(&self, node: NodeId) -> Option<&[f64]> {
        self.weights
            .as_ref()
            .map(|w| w[node.side.slot()][node.index].as_slice())
    }

    pub fn node_degree(&self, node: NodeId) -> usize {
        self.neighbors(node).len()
    }

    /// `|N(label)|` for a node on `side`.
    pub fn degree(&self, side: Side, label: &str) -> Result<usize> {
        Ok(self.node_degree(self.node(side, label)?))
    }

    pub fn degrees(&self, side: Side) -> Vec<usize> {
        self.adjacency[side.slot()].iter().map(Vec::len).collect()
    }

    pub fn max_degree(&self) -> usize {
        self.adjacency
            .iter()
            .flat_map(|side| side.iter().map(Vec::len))
            .max()
            .unwrap_or(0)
    }

    /// Iterates links as `(left index, right index, weight)`; weight is 1 when unweighted.
    pub fn links(&self) -> impl Iterator<Item = (usize, usize, f64)> + '_ {
        self.adjacency[0].iter().enumerate().flat_map(move |(l, ns)| {
            ns.iter().enumerate().map(move |(pos, &r)| {
                let w = self.weights.as_ref().map_or(1.0, |w| w[0][l][pos]);
                (l, r, w)
            })
        })
    }

    /// Histogram of the degrees of `node`'s neighbors.
    pub fn neighbor_degree_vector(&self, node: NodeId) -> NeighborDegreeVector {
        let other = node.side.opposite().slot();
        let entries = self
            .neighbors(node)
            .iter()
            .map(|&n| (self.adjacency[other][n].len(), 1.0))
            .collect();
        NeighborDegreeVector::from_unchecked(entries)
    }

    /// Like [`neighbor_degree_vector`](Self::neighbor_degree_vector) but each
    /// neighbor contributes the weight of its link instead of 1.
    pub fn weighted_neighbor_degree_vector(&self, node: NodeId) -> Result<NeighborDegreeVector> {
        let weights = self
            .link_weights(node)
            .ok_or_else(|| Error::Config("graph has no link weights".into()))?;
        let other = node.side.opposite().slot();
        let entries = self
            .neighbors(node)
            .iter()
            .zip(weights)
            .map(|(&n, &w)| (self.adjacency[other][n].len(), w))
            .collect();
        Ok(NeighborDegreeVector::from_unchecked(entries))
    }

    /// One-mode projection: nodes of `side` joined when they share a neighbor.
    pub fn project(&self, side: Side) -> UnipartiteGraph {
        let n = self.len(side);
        let own = &self.adjacency[side.slot()];
        let other = &self.adjacency[side.opposite().slot()];
        let mut mark = vec![usize::MAX; n];
        let mut adjacency = Vec::with_capacity(n);
        for u in 0..n {
            let mut row = Vec::new();
            for &y in &own[u] {
                for &v in &other[y] {
                    if v != u && mark[v] != u {
                        mark[v] = u;
                        row.push(v);
                    }
                }
            }
            row.sort_unstable();
            adjacency.push(row);
        }
        UnipartiteGraph {
            labels: self.labels[side.slot()].clone(),
            adjacency,
            weights: None,
        }
    }

    fn canonical(&self) -> (Vec<&str>, Vec<&str>, Vec<(&str, &str, u64)>) {
        let mut left: Vec<&str> = self.labels[0].iter().map(String::as_str).collect();
        let mut right: Vec<&str> = self.labels[1].iter().map(String::as_str).collect();
        left.sort_unstable();
        right.sort_unstable();
        let mut links: Vec<(&str, &str, u64)> = self
            .links()
            .map(|(l, r, w)| {
                let w = if self.is_weighted() { w.to_bits() } else { 0 };
                (self.labels[0][l].as_str(), self.labels[1][r].as_str(), w)
            })
            .collect();
        links.sort_unstable();
        (left, right, links)
    }
}

/// Equality on labeled structure: node order is ignored.
impl PartialEq for BipartiteGraph {
    fn eq(&self, other: &Self) -> bool {
        self.is_weighted() == other.is_weighted() && self.canonical() == other.canonical()
    }
}

/// Incremental construction of a [`BipartiteGraph`].
#[derive(Debug, Default)]
pub struct GraphBuilder {
    weighted: bool,
    labels: [Vec<String>; 2],
    index: [HashMap<String, usize>; 2],
    links: HashMap<(usize, usize), f64>,
}

impl GraphBuilder {
    pub fn new(weighted: bool) -> Self {
        Self {
            weighted,
            ..Self::default()
        }
    }

    /// Adds a node if it is not present yet and returns its index.
    pub fn add_node(&mut self, side: Side, label: &str) -> usize {
        let slot = side.slot();
        if let Some(&i) = self.index[slot].get(label) {
            return i;
        }
        let i = self.labels[slot].len();
        self.labels[slot].push(label.to_string());
        self.index[slot].insert(label.to_string(), i);
        i
    }

    /// Adds a link; repeated links are collapsed and their weights summed.
    ///
    /// `weight` is required for weighted builders and ignored otherwise.
    pub fn add_link(&mut self, left: &str, right: &str, weight: Option<f64>) -> Result<()> {
        let w = match (self.weighted, weight) {
            (true, Some(w)) => {
                if !w.is_finite() || w <= 0.0 {
                    return Err(Error::Validation(format!(
                        "link {left}-{right} has weight {w}; weights must be positive"
                    )));
                }
                w
            }
            (true, None) => {
                return Err(Error::Validation(format!("link {left}-{right} is missing a weight")))
            }
            (false, _) => 1.0,
        };
        let l = self.add_node(Side::Left, left);
        let r = self.add_node(Side::Right, right);
        *self.links.entry((l, r)).or_insert(0.0) += w;
        Ok(())
    }

    /// Reads an edge list into this builder.
    pub fn read_edge_list<R: BufRead>(&mut self, reader: R, options: &EdgeListOptions) -> Result<()> {
        let expected = if options.has_weights { 3 } else { 2 };
        for (n, line) in reader.lines().enumerate() {
            let line_no = n + 1;
            let line = line?;
            let Some(fields) = options.data_fields(&line) else {
                continue;
            };
            if fields.len() != expected {
                return Err(Error::Parse {
                    line: line_no,
                    message: format!("expected {expected} fields, found {}", fields.len()),
                });
            }
            if fields.iter().any(|f| f.is_empty()) {
                return Err(Error::Parse {
                    line: line_no,
                    message: "empty node label".into(),
                });
            }
            let weight = if options.has_weights {
                let w: f64 = fields[2].parse().map_err(|_| Error::Parse {
                    line: line_no,
                    message: format!("weight `{}` is not a number", fields[2]),
                })?;
                Some(w)
            } else {
                None
            };
            self.add_link(fields[0], fields[1], weight).map_err(|e| match e {
                Error::Validation(msg) => Error::Validation(format!("line {line_no}: {msg}")),
                other => other,
            })?;
        }
        Ok(())
    }

    /// Reads a node list (`<side> <label>` per line), declaring nodes that may
    /// have no links.
    pub fn read_node_list<R: BufRead>(&mut self, reader: R, options: &EdgeListOptions) -> Result<()> {
        for (n, line) in reader.lines().enumerate() {
            let line = line?;
            let Some(fields) = options.data_fields(&line) else {
                continue;
            };
            if fields.len() != 2 || fields[1].is_empty() {
                return Err(Error::Parse {
                    line: n + 1,
                    message: "expected `<side> <label>`".into(),
                });
            }
            let side: Side = fields[0].parse().map_err(|_| Error::Parse {
                line: n + 1,
                message: format!("unknown side `{}`", fields[0]),
            })?;
            self.add_node(side, fields[1]);
        }
        Ok(())
    }

    pub fn build(self) -> BipartiteGraph {
        let n = [self.labels[0].len(), self.labels[1].len()];
        let mut links: Vec<((usize, usize), f64)> = self.links.into_iter().collect();
        links.sort_unstable_by_key(|&(key, _)| key);
        let mut adjacency = [vec![Vec::new(); n[0]], vec![Vec::new(); n[1]]];
        let mut weights = [vec![Vec::new(); n[0]], vec![Vec::new(); n[1]]];
        for &((l, r), w) in &links {
            adjacency[0][l].push(r);
            weights[0][l].push(w);
        }
        // Sorted by (l, r), so right-side rows come out sorted by l.
        for &((l, r), w) in &links {
            adjacency[1][r].push(l);
            weights[1][r].push(w);
        }
        BipartiteGraph {
            labels: self.labels,
            index: self.index,
            adjacency,
            weights: self.weighted.then_some(weights),
            link_count: links.len(),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Delimiter {
    /// Any run of whitespace.
    Whitespace,
    Char(char),
}

#[derive(Clone, Debug)]
pub struct EdgeListOptions {
    pub delimiter: Delimiter,
    pub has_weights: bool,
    pub comment_prefixes: Vec<String>,
}

impl Default for EdgeListOptions {
    fn default() -> Self {
        Self {
            delimiter: Delimiter::Whitespace,
            has_weights: false,
            comment_prefixes: vec!["%".into(), "#".into()],
        }
    }
}

impl EdgeListOptions {
    pub fn weighted() -> Self {
        Self {
            has_weights: true,
            ..Self::default()
        }
    }

    /// Splits a data line, or returns `None` for blank and comment lines.
    fn data_fields<'a>(&self, line: &'a str) -> Option<Vec<&'a str>> {
        let trimmed = line.trim();
        if trimmed.is_empty()
            || self
                .comment_prefixes
                .iter()
                .any(|p| !p.is_empty() && trimmed.starts_with(p.as_str()))
        {
            return None;
        }
        Some(match self.delimiter {
            Delimiter::Whitespace => trimmed.split_whitespace().collect(),
            Delimiter::Char(c) => trimmed.split(c).map(str::trim).collect(),
        })
    }
}

/// Parses an edge list: first column is the left side, second the right side.
pub fn load_edge_list<R: BufRead>(reader: R, options: &EdgeListOptions) -> Result<BipartiteGraph> {
    let mut builder = GraphBuilder::new(options.has_weights);
    builder.read_edge_list(reader, options)?;
    Ok(builder.build())
}

/// Undirected simple graph over one node set.
#[derive(Clone, Debug, PartialEq)]
pub struct UnipartiteGraph {
    labels: Vec<String>,
    adjacency: Vec<Vec<usize>>,
    weights: Option<Vec<Vec<f64>>>,
}

impl UnipartiteGraph {
    /// Builds a graph from index pairs. Self-loops are dropped and repeated
    /// edges keep the first weight seen.
    pub fn from_edges<I>(labels: Vec<String>, edges: I) -> Self
    where
        I: IntoIterator<Item = (usize, usize, Option<f64>)>,
    {
        let n = labels.len();
        let mut rows: Vec<Vec<(usize, f64)>> = vec![Vec::new(); n];
        let mut weighted = false;
        for (u, v, w) in edges {
            if u == v {
                continue;
            }
            weighted |= w.is_some();
            let w = w.unwrap_or(1.0);
            rows[u].push((v, w));
            rows[v].push((u, w));
        }
        let mut adjacency = Vec::with_capacity(n);
        let mut weights = Vec::with_capacity(n);
        for mut row in rows {
            row.sort_by_key(|&(v, _)| v);
            row.dedup_by_key(|&mut (v, _)| v);
            adjacency.push(row.iter().map(|&(v, _)| v).collect());
            weights.push(row.iter().map(|&(_, w)| w).collect());
        }
        Self {
            labels,
            adjacency,
            weights: weighted.then_some(weights),
        }
    }

    pub fn node_count(&self) -> usize {
        self.labels.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adjacency.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn neighbors(&self, u: usize) -> &[usize] {
        &self.adjacency[u]
    }

    pub(crate) fn adjacency(&self) -> &[Vec<usize>] {
        &self.adjacency
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adjacency[u].binary_search(&v).is_ok()
    }

    pub fn edge_weight(&self, u: usize, v: usize) -> Option<f64> {
        let pos = self.adjacency[u].binary_search(&v).ok()?;
        Some(self.weights.as_ref().map_or(1.0, |w| w[u][pos]))
    }

    pub fn is_weighted(&self) -> bool {
        self.weights.is_some()
    }

    /// Edges as `(u, v, weight)` with `u < v`, in index order.
    pub fn edges(&self) -> Vec<(usize, usize, f64)> {
        let mut out = Vec::new();
        for (u, row) in self.adjacency.iter().enumerate() {
            for (pos, &v) in row.iter().enumerate() {
                if u < v {
                    let w = self.weights.as_ref().map_or(1.0, |w| w[u][pos]);
                    out.push((u, v, w));
                }
            }
        }
        out
    }

    /// Connected components, each sorted, ordered by their smallest node.
    pub fn connected_components(&self) -> Vec<Vec<usize>> {
        let n = self.node_count();
        let mut seen = vec![false; n];
        let mut components = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            seen[start] = true;
            let mut stack = vec![start];
            let mut component = Vec::new();
            while let Some(u) = stack.pop() {
                component.push(u);
                for &v in &self.adjacency[u] {
                    if !seen[v] {
                        seen[v] = true;
                        stack.push(v);
                    }
                }
            }
            component.sort_unstable();
            components.push(component);
        }
        components
    }

    /// Induced subgraph with the named nodes removed. Unknown labels are ignored.
    pub fn without_nodes(&self, removed: &[&str]) -> UnipartiteGraph {
        let keep: Vec<usize> = (0..self.node_count())
            .filter(|&u| !removed.contains(&self.labels[u].as_str()))
            .collect();
        let mut remap = vec![usize::MAX; self.node_count()];
        for (new, &old) in keep.iter().enumerate() {
            remap[old] = new;
        }
        let labels = keep.iter().map(|&u| self.labels[u].clone()).collect();
        let edges = self
            .edges()
            .into_iter()
            .filter(|&(u, v, _)| remap[u] != usize::MAX && remap[v] != usize::MAX)
            .map(|(u, v, w)| (remap[u], remap[v], self.weights.as_ref().map(|_| w)));
        UnipartiteGraph::from_edges(labels, edges)
    }
}
