//! Rank agreement between score tables: Kendall's τ, Spearman's ρ and top-k
//! indicator comparisons.

use std::collections::HashMap;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::scores::CentralityScores;

/// Values keyed by node label. Comparisons align the two vectors by label.
#[derive(Clone, Debug, PartialEq)]
pub struct RankVector {
    labels: Vec<String>,
    values: Vec<f64>,
}

impl RankVector {
    pub fn new(labels: Vec<String>, values: Vec<f64>) -> Result<Self> {
        if labels.len() != values.len() {
            return Err(Error::Validation(format!(
                "{} labels but {} values",
                labels.len(),
                values.len()
            )));
        }
        let mut seen = std::collections::HashSet::new();
        for label in &labels {
            if !seen.insert(label.as_str()) {
                return Err(Error::Validation(format!("duplicate label `{label}`")));
            }
        }
        Ok(Self { labels, values })
    }

    pub fn from_scores(scores: &CentralityScores) -> Self {
        Self {
            labels: scores.labels().map(str::to_owned).collect(),
            values: scores.values(),
        }
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn get(&self, label: &str) -> Option<f64> {
        self.labels.iter().position(|l| l == label).map(|i| self.values[i])
    }
}

/// `b`'s values reordered to `a`'s label order.
fn aligned(a: &RankVector, b: &RankVector) -> Result<Vec<f64>> {
    if a.len() != b.len() {
        return Err(Error::Usage(format!(
            "rank vectors cover different node sets ({} vs {} labels)",
            a.len(),
            b.len()
        )));
    }
    let index: HashMap<&str, usize> = b.labels.iter().enumerate().map(|(i, l)| (l.as_str(), i)).collect();
    a.labels
        .iter()
        .map(|l| {
            index
                .get(l.as_str())
                .map(|&i| b.values[i])
                .ok_or_else(|| Error::Usage(format!("label `{l}` missing from the second rank vector")))
        })
        .collect()
}

fn check_finite(values: &[f64]) -> Result<()> {
    if values.iter().any(|v| v.is_nan()) {
        return Err(Error::Domain("rank vectors must not contain NaN".into()));
    }
    Ok(())
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum TauVariant {
    /// `(C − D) / (n(n−1)/2)`; tied pairs count as neither.
    #[default]
    A,
    /// `(C − D) / √((n0 − ties_a)(n0 − ties_b))`.
    B,
}

/// Kendall τ-a.
pub fn kendall_tau(a: &RankVector, b: &RankVector) -> Result<f64> {
    kendall_tau_with(a, b, TauVariant::A)
}

pub fn kendall_tau_with(a: &RankVector, b: &RankVector, variant: TauVariant) -> Result<f64> {
    let y = aligned(a, b)?;
    let x = &a.values;
    check_finite(x)?;
    check_finite(&y)?;
    let n = x.len();
    if n < 2 {
        return Err(Error::Domain("Kendall tau needs at least two nodes".into()));
    }
    let stats = pair_statistics(x, &y);
    let n0 = (n * (n - 1) / 2) as i64;
    let diff = stats.concordant_minus_discordant(n0) as f64;
    match variant {
        TauVariant::A => Ok(diff / n0 as f64),
        TauVariant::B => {
            let denom = (((n0 - stats.ties_x) as f64) * ((n0 - stats.ties_y) as f64)).sqrt();
            if denom == 0.0 {
                return Err(Error::Domain("tau-b is undefined when one vector is constant".into()));
            }
            Ok(diff / denom)
        }
    }
}

struct PairStats {
    ties_x: i64,
    ties_y: i64,
    ties_xy: i64,
    swaps: i64,
}

impl PairStats {
    fn concordant_minus_discordant(&self, n0: i64) -> i64 {
        n0 - self.ties_x - self.ties_y + self.ties_xy - 2 * self.swaps
    }
}

fn tied_pairs<T: PartialEq>(sorted: &[T]) -> i64 {
    let mut total = 0i64;
    let mut run = 1i64;
    for i in 1..=sorted.len() {
        if i < sorted.len() && sorted[i] == sorted[i - 1] {
            run += 1;
        } else {
            total += run * (run - 1) / 2;
            run = 1;
        }
    }
    total
}

/// Knight's O(n log n) pair counting.
fn pair_statistics(x: &[f64], y: &[f64]) -> PairStats {
    let mut pairs: Vec<(f64, f64)> = x.iter().copied().zip(y.iter().copied()).collect();
    pairs.sort_by(|p, q| p.0.total_cmp(&q.0).then(p.1.total_cmp(&q.1)));
    let ties_x = tied_pairs(&pairs.iter().map(|p| p.0).collect::<Vec<_>>());
    let ties_xy = tied_pairs(&pairs);
    let mut ys: Vec<f64> = pairs.iter().map(|p| p.1).collect();
    let mut buffer = ys.clone();
    let swaps = merge_count(&mut ys, &mut buffer);
    let ties_y = tied_pairs(&ys);
    PairStats {
        ties_x,
        ties_y,
        ties_xy,
        swaps,
    }
}

/// Sorts `v` ascending and returns the number of strictly inverted pairs.
fn merge_count(v: &mut [f64], buffer: &mut [f64]) -> i64 {
    let n = v.len();
    if n < 2 {
        return 0;
    }
    let mid = n / 2;
    let mut swaps = {
        let (left, right) = v.split_at_mut(mid);
        let (bl, br) = buffer.split_at_mut(mid);
        merge_count(left, bl) + merge_count(right, br)
    };
    let (mut i, mut j, mut k) = (0, mid, 0);
    while i < mid && j < n {
        if v[j] < v[i] {
            buffer[k] = v[j];
            swaps += (mid - i) as i64;
            j += 1;
        } else {
            buffer[k] = v[i];
            i += 1;
        }
        k += 1;
    }
    buffer[k..k + mid - i].copy_from_slice(&v[i..mid]);
    k += mid - i;
    buffer[k..k + n - j].copy_from_slice(&v[j..n]);
    v.copy_from_slice(&buffer[..n]);
    swaps
}

/// Pearson correlation of the two value vectors, applied as given (no ranking).
pub fn spearman_rho(a: &RankVector, b: &RankVector) -> Result<f64> {
    let y = aligned(a, b)?;
    let x = &a.values;
    check_finite(x)?;
    check_finite(&y)?;
    let n = x.len() as f64;
    if x.is_empty() {
        return Err(Error::Domain("correlation of empty vectors is undefined".into()));
    }
    let mx = x.iter().sum::<f64>() / n;
    let my = y.iter().sum::<f64>() / n;
    let (mut sxy, mut sxx, mut syy) = (0.0, 0.0, 0.0);
    for (xi, yi) in x.iter().zip(&y) {
        let (dx, dy) = (xi - mx, yi - my);
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
    }
    if sxx == 0.0 || syy == 0.0 {
        return Err(Error::Domain("correlation is undefined for a constant vector".into()));
    }
    Ok((sxy / (sxx * syy).sqrt()).clamp(-1.0, 1.0))
}

/// 1 for the `k` best-ranked nodes, 0 elsewhere; cutoff ties go to the smaller label.
pub fn top_k_vector(scores: &CentralityScores, k: usize) -> Result<RankVector> {
    let n = scores.len();
    if k == 0 || k > n {
        return Err(Error::Usage(format!("k must lie in 1..={n}, got {k}")));
    }
    let top: std::collections::HashSet<&str> = scores.top(k).into_iter().collect();
    let labels: Vec<String> = scores.labels().map(str::to_owned).collect();
    let values = labels.iter().map(|l| if top.contains(l.as_str()) { 1.0 } else { 0.0 }).collect();
    Ok(RankVector { labels, values })
}

/// Spearman ρ of the top-k indicators for `k = 1..=k_max`; `None` where undefined.
pub fn sweep_k(a: &CentralityScores, b: &CentralityScores, k_max: usize) -> Result<Vec<(usize, Option<f64>)>> {
    aligned(&RankVector::from_scores(a), &RankVector::from_scores(b))?;
    let n = a.len();
    if k_max == 0 || k_max + 1 > n {
        return Err(Error::Usage(format!(
            "k_max must lie in 1..={}, got {k_max}",
            n.saturating_sub(1)
        )));
    }
    (1..=k_max)
        .into_par_iter()
        .map(|k| {
            let rho = match spearman_rho(&top_k_vector(a, k)?, &top_k_vector(b, k)?) {
                Ok(r) => Some(r),
                Err(Error::Domain(_)) => None,
                Err(e) => return Err(e),
            };
            Ok((k, rho))
        })
        .collect()
}
