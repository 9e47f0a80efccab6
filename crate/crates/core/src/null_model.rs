//! Hellinger-distance statistics under the Erdős–Rényi bipartite model.
//!
//! In `G(n1, n2, p)` a left node's degree is approximately Poisson with rate
//! `n2·p`, and so is the degree of each of its neighbors. Treating the
//! neighbor-degree vector of a degree-`k` node as `k` times that Poisson law
//! gives closed forms for the expected Raw-mode distance to a random node on
//! the same side.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::degree_vector::{sqrt_profile_distance, NeighborDegreeVector};
use crate::error::{Error, Result};
use crate::graph::BipartiteGraph;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct NullModelParams {
    pub n1: usize,
    pub n2: usize,
    pub p: f64,
    /// Degree of the reference node.
    pub k: usize,
}

impl NullModelParams {
    pub fn new(n1: usize, n2: usize, p: f64, k: usize) -> Result<Self> {
        let params = Self { n1, n2, p, k };
        params.validate()?;
        Ok(params)
    }

    pub fn validate(&self) -> Result<()> {
        if self.n1 == 0 || self.n2 == 0 {
            return Err(Error::Domain("n1 and n2 must be at least 1".into()));
        }
        if !(0.0..=1.0).contains(&self.p) {
            return Err(Error::Domain(format!("p must lie in [0, 1], got {}", self.p)));
        }
        if self.k == 0 {
            return Err(Error::Domain("reference degree k must be at least 1".into()));
        }
        Ok(())
    }

    /// Poisson rate of a left node's degree.
    pub fn degree_rate(&self) -> f64 {
        self.n2 as f64 * self.p
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DistanceMoments {
    pub mean: f64,
    pub second_moment: f64,
    pub variance: f64,
}

impl DistanceMoments {
    fn from_sums(mean: f64, second_moment: f64) -> Self {
        Self {
            mean,
            second_moment,
            variance: (second_moment - mean * mean).max(0.0),
        }
    }

    pub fn std_dev(&self) -> f64 {
        self.variance.sqrt()
    }
}

/// Squared Hellinger distance between `k1·Pois(λ1)` and `k2·Pois(λ2)`:
/// `(k1 + k2)/2 − √(k1·k2)·exp(−(√λ1 − √λ2)²/2)`.
pub fn poisson_hellinger_sq(k1: f64, lambda1: f64, k2: f64, lambda2: f64) -> Result<f64> {
    for (name, v) in [("k1", k1), ("lambda1", lambda1), ("k2", k2), ("lambda2", lambda2)] {
        if !(v > 0.0) || !v.is_finite() {
            return Err(Error::Domain(format!("{name} must be positive and finite, got {v}")));
        }
    }
    let gap = lambda1.sqrt() - lambda2.sqrt();
    let bc = (-0.5 * gap * gap).exp();
    Ok(((k1 + k2) / 2.0 - (k1 * k2).sqrt() * bc).max(0.0))
}

/// Moments of the Raw distance from a degree-`k` node, summing the Poisson
/// series over degrees `1..=n2`.
pub fn expected_distance_moments(params: &NullModelParams) -> Result<DistanceMoments> {
    expected_distance_moments_with_cutoff(params, params.n2)
}

/// As [`expected_distance_moments`] with the series cut at `cutoff` instead of `n2`.
pub fn expected_distance_moments_with_cutoff(params: &NullModelParams, cutoff: usize) -> Result<DistanceMoments> {
    params.validate()?;
    let k = params.k as f64;
    let lambda = params.degree_rate();
    if lambda == 0.0 {
        log::warn!("p = 0: every node is isolated and all distances equal sqrt(k)");
        return Ok(DistanceMoments::from_sums(k.sqrt(), k));
    }
    let ln_lambda = lambda.ln();
    let mut ln_factorial = 0.0;
    let (mut m1, mut m2) = (0.0, 0.0);
    for i in 1..=cutoff {
        let fi = i as f64;
        ln_factorial += fi.ln();
        let pmf = (fi * ln_lambda - lambda - ln_factorial).exp();
        let sq = (k + fi - 2.0 * (k * fi).sqrt()).max(0.0);
        m1 += pmf * sq.sqrt();
        m2 += pmf * sq;
    }
    Ok(DistanceMoments::from_sums(m1, m2))
}

/// `max(0, E[d] − sigmas·sd(d))`.
pub fn similarity_threshold(params: &NullModelParams, sigmas: f64) -> Result<f64> {
    if !(sigmas >= 0.0) {
        return Err(Error::Domain(format!("sigmas must be nonnegative, got {sigmas}")));
    }
    let m = expected_distance_moments(params)?;
    Ok((m.mean - sigmas * m.std_dev()).max(0.0))
}

/// Left adjacency of one `G(n1, n2, p)` draw.
fn sample_left_adjacency(n1: usize, n2: usize, p: f64, rng: &mut impl Rng) -> Vec<Vec<usize>> {
    (0..n1)
        .map(|_| (0..n2).filter(|_| rng.random::<f64>() < p).collect())
        .collect()
}

/// Random bipartite graph with every one of the `n1·n2` links present
/// independently with probability `p`. Left labels are `u0..`, right `v0..`.
pub fn erdos_renyi_bipartite(n1: usize, n2: usize, p: f64, rng: &mut impl Rng) -> Result<BipartiteGraph> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::Domain(format!("p must lie in [0, 1], got {p}")));
    }
    let adjacency = sample_left_adjacency(n1, n2, p, rng);
    let mut builder = BipartiteGraph::builder();
    for i in 0..n1 {
        builder.add_node(crate::graph::Side::Left, &format!("u{i}"));
    }
    for j in 0..n2 {
        builder.add_node(crate::graph::Side::Right, &format!("v{j}"));
    }
    for (i, row) in adjacency.iter().enumerate() {
        for &j in row {
            builder.add_link(&format!("u{i}"), &format!("v{j}"), None)?;
        }
    }
    Ok(builder.build())
}

/// Graph draws per parallel batch.
const MC_BATCH: usize = 32;

/// Raw distances from the first degree-`k` left node of draw `stream` to the
/// other left nodes, or `None` when the draw has no such node.
fn draw_distances(params: &NullModelParams, seed: u64, stream: u64) -> Option<Vec<f64>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    let adjacency = sample_left_adjacency(params.n1, params.n2, params.p, &mut rng);
    let anchor = adjacency.iter().position(|row| row.len() == params.k)?;
    let mut right_degree = vec![0usize; params.n2];
    for row in &adjacency {
        for &j in row {
            right_degree[j] += 1;
        }
    }
    let profiles: Vec<Vec<(usize, f64)>> = adjacency
        .iter()
        .map(|row| {
            let ndv = NeighborDegreeVector::from_unchecked(row.iter().map(|&j| (right_degree[j], 1.0)).collect());
            ndv.entries().iter().map(|&(d, m)| (d, m.sqrt())).collect()
        })
        .collect();
    Some(
        (0..params.n1)
            .filter(|&z| z != anchor)
            .map(|z| sqrt_profile_distance(&profiles[anchor], &profiles[z]))
            .collect(),
    )
}

/// Empirical moments of the Raw distance from a degree-`k` node, over exactly
/// `samples` distances.
///
/// Each graph draw uses its own ChaCha8 stream of `seed`. Draws without a
/// degree-`k` left node are rejected; an accepted draw contributes the
/// distances from its first degree-`k` node to every other left node.
pub fn monte_carlo_distance(params: &NullModelParams, samples: usize, seed: u64) -> Result<DistanceMoments> {
    params.validate()?;
    if samples == 0 {
        return Err(Error::Domain("samples must be at least 1".into()));
    }
    if params.n1 < 2 {
        return Err(Error::Domain("Monte Carlo needs n1 >= 2 to form distances".into()));
    }
    if params.k > params.n2 {
        return Err(Error::Sampling(format!(
            "no left node can have degree {} with n2 = {}; lower k",
            params.k, params.n2
        )));
    }
    let per_draw = params.n1 - 1;
    let budget = 10_000 + 100 * samples.div_ceil(per_draw);
    let (mut sum, mut sum_sq, mut count) = (0.0, 0.0, 0usize);
    let mut next_stream = 0usize;
    while count < samples {
        if next_stream >= budget {
            return Err(Error::Sampling(format!(
                "no degree-{} left node after {budget} graph draws; adjust k or p",
                params.k
            )));
        }
        let batch: Vec<Option<Vec<f64>>> = (next_stream..next_stream + MC_BATCH)
            .into_par_iter()
            .map(|s| draw_distances(params, seed, s as u64))
            .collect();
        next_stream += MC_BATCH;
        for d in batch.into_iter().flatten().flatten() {
            if count == samples {
                break;
            }
            sum += d;
            sum_sq += d * d;
            count += 1;
        }
    }
    let n = count as f64;
    Ok(DistanceMoments::from_sums(sum / n, sum_sq / n))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn series_oracle(k1: f64, l1: f64, k2: f64, l2: f64) -> f64 {
        let mut sum = 0.0;
        let (mut ln_fact, mut i) = (0.0, 0usize);
        while i <= 200 {
            if i > 0 {
                ln_fact += (i as f64).ln();
            }
            let p = (i as f64 * l1.ln() - l1 - ln_fact).exp();
            let q = (i as f64 * l2.ln() - l2 - ln_fact).exp();
            let diff = (k1 * p).sqrt() - (k2 * q).sqrt();
            sum += diff * diff;
            i += 1;
        }
        sum / 2.0
    }

    #[test]
    fn closed_form_examples() {
        assert_eq!(poisson_hellinger_sq(1.0, 3.0, 1.0, 3.0).unwrap(), 0.0);
        let same_rate = poisson_hellinger_sq(2.0, 4.0, 8.0, 4.0).unwrap();
        assert!((same_rate - (5.0 - 4.0)).abs() < 1e-12);
        let got = poisson_hellinger_sq(3.0, 2.0, 5.0, 4.0).unwrap();
        assert!((got - series_oracle(3.0, 2.0, 5.0, 4.0)).abs() < 1e-8);
        assert!(poisson_hellinger_sq(0.0, 1.0, 1.0, 1.0).is_err());
        assert!(poisson_hellinger_sq(1.0, -1.0, 1.0, 1.0).is_err());
    }

    #[test]
    fn unit_masses_reduce_to_poisson_hellinger() {
        let (l1, l2): (f64, f64) = (1.5, 6.0);
        let expected = 1.0 - (-0.5 * (l1.sqrt() - l2.sqrt()).powi(2)).exp();
        assert!((poisson_hellinger_sq(1.0, l1, 1.0, l2).unwrap() - expected).abs() < 1e-15);
    }

    #[test]
    fn moments_examples() {
        let single = expected_distance_moments(&NullModelParams::new(5, 1, 0.5, 1).unwrap()).unwrap();
        assert_eq!(single.mean, 0.0);
        assert_eq!(single.second_moment, 0.0);
        let params = NullModelParams::new(50, 50, 0.1, 5).unwrap();
        let m = expected_distance_moments(&params).unwrap();
        assert!(m.variance >= 0.0);
        assert!((m.variance - (m.second_moment - m.mean * m.mean)).abs() < 1e-12);
        // two terms by hand: λ = 1, k = 1, n2 = 2
        let two = expected_distance_moments(&NullModelParams::new(3, 2, 0.5, 1).unwrap()).unwrap();
        let pmf2 = (-1.0f64).exp() / 2.0;
        let sq2 = 3.0 - 2.0 * 2.0f64.sqrt();
        assert!((two.mean - pmf2 * sq2.sqrt()).abs() < 1e-15);
        assert!((two.second_moment - pmf2 * sq2).abs() < 1e-15);
    }

    #[test]
    fn large_rate_does_not_overflow() {
        let m = expected_distance_moments(&NullModelParams::new(10, 5000, 0.9, 4000).unwrap()).unwrap();
        assert!(m.mean.is_finite() && m.second_moment.is_finite());
        assert!(m.mean > 0.0);
    }

    #[test]
    fn zero_probability_is_degenerate() {
        let m = expected_distance_moments(&NullModelParams::new(10, 10, 0.0, 4).unwrap()).unwrap();
        assert_eq!((m.mean, m.second_moment, m.variance), (2.0, 4.0, 0.0));
    }

    #[test]
    fn threshold_examples() {
        let params = NullModelParams::new(50, 50, 0.1, 5).unwrap();
        let m = expected_distance_moments(&params).unwrap();
        assert_eq!(similarity_threshold(&params, 0.0).unwrap(), m.mean);
        assert_eq!(similarity_threshold(&params, 1e9).unwrap(), 0.0);
        assert_eq!(similarity_threshold(&params, 1.0).unwrap(), (m.mean - m.std_dev()).max(0.0));
        assert!(similarity_threshold(&params, -1.0).is_err());
    }

    #[test]
    fn params_validation() {
        assert!(NullModelParams::new(0, 5, 0.1, 1).is_err());
        assert!(NullModelParams::new(5, 5, 1.5, 1).is_err());
        assert!(NullModelParams::new(5, 5, 0.5, 0).is_err());
    }

    #[test]
    fn monte_carlo_complete_graph_is_all_zero() {
        let params = NullModelParams::new(6, 4, 1.0, 4).unwrap();
        let m = monte_carlo_distance(&params, 100, 7).unwrap();
        assert_eq!((m.mean, m.second_moment, m.variance), (0.0, 0.0, 0.0));
    }

    #[test]
    fn monte_carlo_is_deterministic() {
        let params = NullModelParams::new(20, 20, 0.2, 4).unwrap();
        let a = monte_carlo_distance(&params, 5000, 42).unwrap();
        let b = monte_carlo_distance(&params, 5000, 42).unwrap();
        assert_eq!(a, b);
        let c = monte_carlo_distance(&params, 5000, 43).unwrap();
        assert_ne!(a, c);
    }

    #[test]
    fn monte_carlo_failures() {
        let impossible = NullModelParams::new(5, 5, 0.0, 3).unwrap();
        assert!(matches!(monte_carlo_distance(&impossible, 10, 1), Err(Error::Sampling(_))));
        let too_big = NullModelParams::new(5, 3, 0.5, 4).unwrap();
        assert!(matches!(monte_carlo_distance(&too_big, 10, 1), Err(Error::Sampling(_))));
        let single = NullModelParams::new(1, 5, 0.5, 2).unwrap();
        assert!(monte_carlo_distance(&single, 10, 1).is_err());
    }

    #[test]
    fn generator_keeps_isolated_nodes() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let g = erdos_renyi_bipartite(7, 9, 0.0, &mut rng).unwrap();
        assert_eq!((g.left_len(), g.right_len(), g.link_count()), (7, 9, 0));
        let full = erdos_renyi_bipartite(3, 4, 1.0, &mut rng).unwrap();
        assert_eq!(full.link_count(), 12);
    }
}
