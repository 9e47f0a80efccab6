//! Per-node score tables shared by every centrality in the crate.

use std::cmp::Ordering;

use indexmap::IndexMap;

use crate::graph::Side;

/// Scores of one metric over the nodes of one side, in graph node order.
///
/// Any caveats raised while computing the scores (disconnected graph,
/// degenerate distance matrix, clamped values) are kept in `warnings` and
/// also emitted through `log`.
#[derive(Clone, Debug, PartialEq)]
pub struct CentralityScores {
    side: Side,
    metric: String,
    values: IndexMap<String, f64>,
    warnings: Vec<String>,
}

impl CentralityScores {
    pub fn new<I, S>(side: Side, metric: impl Into<String>, values: I) -> Self
    where
        I: IntoIterator<Item = (S, f64)>,
        S: Into<String>,
    {
        Self {
            side,
            metric: metric.into(),
            values: values.into_iter().map(|(l, v)| (l.into(), v)).collect(),
            warnings: Vec::new(),
        }
    }

    pub(crate) fn from_labels(side: Side, metric: &str, labels: &[String], values: Vec<f64>) -> Self {
        debug_assert_eq!(labels.len(), values.len());
        Self::new(side, metric, labels.iter().cloned().zip(values))
    }

    pub fn side(&self) -> Side {
        self.side
    }

    pub fn metric(&self) -> &str {
        &self.metric
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn get(&self, label: &str) -> Option<f64> {
        self.values.get(label).copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, f64)> + '_ {
        self.values.iter().map(|(l, &v)| (l.as_str(), v))
    }

    pub fn labels(&self) -> impl Iterator<Item = &str> + '_ {
        self.values.keys().map(String::as_str)
    }

    pub fn values(&self) -> Vec<f64> {
        self.values.values().copied().collect()
    }

    pub fn warnings(&self) -> &[String] {
        &self.warnings
    }

    pub(crate) fn warn(&mut self, message: String) {
        log::warn!("{}: {message}", self.metric);
        self.warnings.push(message);
    }

    /// Scores sorted by descending value, ties by ascending label.
    pub fn ranked(&self) -> Vec<(&str, f64)> {
        let mut out: Vec<(&str, f64)> = self.iter().collect();
        out.sort_by(|a, b| descending(a.1, b.1).then_with(|| a.0.cmp(b.0)));
        out
    }

    /// Labels of the `k` best-ranked nodes.
    pub fn top(&self, k: usize) -> Vec<&str> {
        self.ranked().into_iter().take(k).map(|(l, _)| l).collect()
    }

    /// Labels of the `k` lowest-ranked nodes, lowest first.
    pub fn bottom(&self, k: usize) -> Vec<&str> {
        self.ranked().into_iter().rev().take(k).map(|(l, _)| l).collect()
    }

    pub fn argmax(&self) -> Option<&str> {
        self.ranked().first().map(|&(l, _)| l)
    }

    pub fn max_value(&self) -> Option<f64> {
        self.values.values().copied().reduce(f64::max)
    }

    pub fn with_metric(mut self, metric: impl Into<String>) -> Self {
        self.metric = metric.into();
        self
    }

    pub(crate) fn map_values(&self, f: impl Fn(f64) -> f64) -> Self {
        Self {
            side: self.side,
            metric: self.metric.clone(),
            values: self.values.iter().map(|(l, &v)| (l.clone(), f(v))).collect(),
            warnings: self.warnings.clone(),
        }
    }
}

fn descending(a: f64, b: f64) -> Ordering {
    b.partial_cmp(&a).unwrap_or(Ordering::Equal)
}

/// Scores for both sides of a bipartite graph from one whole-graph computation.
#[derive(Clone, Debug, PartialEq)]
pub struct BipartiteScores {
    pub left: CentralityScores,
    pub right: CentralityScores,
}

impl BipartiteScores {
    pub fn side(&self, side: Side) -> &CentralityScores {
        match side {
            Side::Left => &self.left,
            Side::Right => &self.right,
        }
    }

    pub fn into_side(self, side: Side) -> CentralityScores {
        match side {
            Side::Left => self.left,
            Side::Right => self.right,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ranking_breaks_ties_by_label() {
        let s = CentralityScores::new(Side::Left, "m", [("b", 1.0), ("a", 1.0), ("c", 2.0), ("d", 0.5)]);
        assert_eq!(s.top(3), vec!["c", "a", "b"]);
        assert_eq!(s.bottom(2), vec!["d", "b"]);
        assert_eq!(s.argmax(), Some("c"));
        assert_eq!(s.labels().collect::<Vec<_>>(), vec!["b", "a", "c", "d"]);
    }
}
