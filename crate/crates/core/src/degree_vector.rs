//! Sparse neighbor-degree histograms.
//!
//! For a node `x`, entry `i` holds the number of neighbors of `x` whose degree
//! is `i` (or, in the weighted variant, the summed link weight towards those
//! neighbors). Storage is a degree-sorted list of nonzero entries, so the
//! dense length-Δ form never has to be allocated.

use crate::error::{Error, Result};

#[derive(Clone, Debug, Default, PartialEq)]
pub struct NeighborDegreeVector {
    entries: Vec<(usize, f64)>,
    total: f64,
}

impl NeighborDegreeVector {
    /// Builds a vector from `(degree, mass)` pairs in any order.
    ///
    /// Repeated degrees are summed and zero masses dropped. Degrees must be at
    /// least 1 and masses finite and nonnegative.
    pub fn from_masses<I>(masses: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, f64)>,
    {
        let mut entries: Vec<(usize, f64)> = Vec::new();
        for (degree, mass) in masses {
            if degree == 0 {
                return Err(Error::Domain("neighbor degrees start at 1".into()));
            }
            if !mass.is_finite() || mass < 0.0 {
                return Err(Error::Domain(format!(
                    "mass for degree {degree} must be finite and nonnegative, got {mass}"
                )));
            }
            entries.push((degree, mass));
        }
        Ok(Self::from_unchecked(entries))
    }

    pub(crate) fn from_unchecked(mut entries: Vec<(usize, f64)>) -> Self {
        entries.sort_by_key(|&(degree, _)| degree);
        let mut merged: Vec<(usize, f64)> = Vec::with_capacity(entries.len());
        for (degree, mass) in entries {
            match merged.last_mut() {
                Some((d, m)) if *d == degree => *m += mass,
                _ => merged.push((degree, mass)),
            }
        }
        merged.retain(|&(_, mass)| mass > 0.0);
        let total = merged.iter().map(|&(_, m)| m).sum();
        Self {
            entries: merged,
            total,
        }
    }

    /// Nonzero `(degree, mass)` entries in ascending degree order.
    pub fn entries(&self) -> &[(usize, f64)] {
        &self.entries
    }

    pub fn get(&self, degree: usize) -> f64 {
        self.entries
            .binary_search_by_key(&degree, |&(d, _)| d)
            .map(|pos| self.entries[pos].1)
            .unwrap_or(0.0)
    }

    pub fn total_mass(&self) -> f64 {
        self.total
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Number of nonzero entries.
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn max_degree(&self) -> usize {
        self.entries.last().map_or(0, |&(d, _)| d)
    }

    /// Dense form `(l_1, ..., l_len)`; entries above `len` are dropped.
    pub fn to_dense(&self, len: usize) -> Vec<f64> {
        let mut dense = vec![0.0; len];
        for &(degree, mass) in &self.entries {
            if degree <= len {
                dense[degree - 1] = mass;
            }
        }
        dense
    }

    /// Rescales to unit total mass. The zero vector stays zero.
    pub fn normalized(&self) -> Self {
        if self.total == 0.0 {
            return Self::default();
        }
        let entries = self
            .entries
            .iter()
            .map(|&(d, m)| (d, m / self.total))
            .collect();
        Self::from_unchecked(entries)
    }

    /// `(1/√2)·‖√self − √other‖₂` over the union of supports.
    pub fn hellinger(&self, other: &Self) -> f64 {
        let a = sqrt_entries(&self.entries);
        let b = sqrt_entries(&other.entries);
        sqrt_profile_distance(&a, &b) / std::f64::consts::SQRT_2
    }
}

pub(crate) fn sqrt_entries(entries: &[(usize, f64)]) -> Vec<(usize, f64)> {
    entries.iter().map(|&(d, m)| (d, m.sqrt())).collect()
}

/// Euclidean distance between two degree-sorted sparse vectors.
pub(crate) fn sqrt_profile_distance(a: &[(usize, f64)], b: &[(usize, f64)]) -> f64 {
    let (mut i, mut j) = (0, 0);
    let mut sum = 0.0;
    while i < a.len() && j < b.len() {
        let (da, va) = a[i];
        let (db, vb) = b[j];
        if da == db {
            let diff = va - vb;
            sum += diff * diff;
            i += 1;
            j += 1;
        } else if da < db {
            sum += va * va;
            i += 1;
        } else {
            sum += vb * vb;
            j += 1;
        }
    }
    for &(_, v) in &a[i..] {
        sum += v * v;
    }
    for &(_, v) in &b[j..] {
        sum += v * v;
    }
    sum.sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn merges_and_drops_zero_masses() {
        let v = NeighborDegreeVector::from_masses([(3, 1.0), (2, 2.0), (3, 1.0), (5, 0.0)]).unwrap();
        assert_eq!(v.entries(), &[(2, 2.0), (3, 2.0)]);
        assert_eq!(v.total_mass(), 4.0);
        assert_eq!(v.get(5), 0.0);
        assert_eq!(v.max_degree(), 3);
        assert_eq!(v.to_dense(4), vec![0.0, 2.0, 2.0, 0.0]);
    }

    #[test]
    fn rejects_bad_entries() {
        assert!(NeighborDegreeVector::from_masses([(0, 1.0)]).is_err());
        assert!(NeighborDegreeVector::from_masses([(1, -1.0)]).is_err());
        assert!(NeighborDegreeVector::from_masses([(1, f64::NAN)]).is_err());
    }

    #[test]
    fn normalizing_zero_vector_gives_zero() {
        let zero = NeighborDegreeVector::default();
        assert!(zero.normalized().is_empty());
        let v = NeighborDegreeVector::from_masses([(2, 2.0), (3, 1.0)]).unwrap();
        let n = v.normalized();
        assert!((n.total_mass() - 1.0).abs() < 1e-12);
        assert!((n.get(2) - 2.0 / 3.0).abs() < 1e-12);
    }

    #[test]
    fn sparse_hellinger_of_disjoint_supports_is_one() {
        let a = NeighborDegreeVector::from_masses([(1, 1.0)]).unwrap();
        let b = NeighborDegreeVector::from_masses([(2, 1.0)]).unwrap();
        assert!((a.hellinger(&b) - 1.0).abs() < 1e-12);
        assert_eq!(a.hellinger(&a), 0.0);
    }
}
