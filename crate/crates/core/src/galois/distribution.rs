use std::collections::{BTreeMap, HashSet};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::group::PermGroup;
use super::perm::{Permutation, partition_key};
use crate::arith::primes_in;
use crate::error::{Error, Result};
use crate::ff::cycle_type;
use crate::ff::reduce;
use crate::poly::IntPolynomial;

/// Counts of cycle types on `points` points. For a group the counts are
/// class sizes and `total` is the order; for Frobenius samples they are hits
/// and `skipped` counts primes where the reduction was not squarefree.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CycleTypeDistribution {
    pub points: usize,
    pub total: u64,
    pub skipped: u64,
    pub counts: BTreeMap<String, u64>,
    pub frequencies: BTreeMap<String, f64>,
}

impl CycleTypeDistribution {
    pub fn from_counts(points: usize, counts: BTreeMap<String, u64>, skipped: u64) -> Self {
        let total: u64 = counts.values().sum();
        let frequencies = counts
            .iter()
            .map(|(k, &c)| (k.clone(), c as f64 / total.max(1) as f64))
            .collect();
        Self {
            points,
            total,
            skipped,
            counts,
            frequencies,
        }
    }

    /// Exact frequency of a partition.
    pub fn exact(&self, key: &str) -> BigRational {
        let c = self.counts.get(key).copied().unwrap_or(0);
        if self.total == 0 {
            return BigRational::zero();
        }
        BigRational::new(BigInt::from(c), BigInt::from(self.total))
    }
}

fn tally<'a>(points: usize, perms: impl Iterator<Item = &'a Permutation>) -> BTreeMap<String, u64> {
    let mut counts = BTreeMap::new();
    for g in perms {
        debug_assert_eq!(g.degree(), points);
        *counts.entry(partition_key(&g.cycle_type())).or_insert(0) += 1;
    }
    counts
}

pub fn exact_cycle_distribution(group: &PermGroup) -> Result<CycleTypeDistribution> {
    let elements = group
        .elements()
        .ok_or_else(|| Error::InvalidParameters("group has not been enumerated".into()))?;
    Ok(CycleTypeDistribution::from_counts(group.degree(), tally(group.degree(), elements.iter()), 0))
}

/// Conjugacy classes as `(representative, size)`, found by closing each
/// element under conjugation by the generators.
pub fn conjugacy_classes(group: &PermGroup) -> Result<Vec<(Permutation, usize)>> {
    let elements = group
        .elements()
        .ok_or_else(|| Error::InvalidParameters("group has not been enumerated".into()))?;
    let mut assigned: HashSet<&Permutation> = HashSet::new();
    let index: HashSet<&Permutation> = elements.iter().collect();
    let mut classes = Vec::new();
    for g in elements {
        if assigned.contains(g) {
            continue;
        }
        let mut class = vec![g.clone()];
        let mut members: HashSet<Permutation> = HashSet::from([g.clone()]);
        let mut i = 0;
        while i < class.len() {
            for s in group.generators() {
                let c = class[i].conjugate_by(s);
                if members.insert(c.clone()) {
                    class.push(c);
                }
            }
            i += 1;
        }
        for c in &class {
            let c = index
                .get(c)
                .ok_or_else(|| Error::Inconsistent("conjugate outside the group".into()))?;
            assigned.insert(c);
        }
        classes.push((g.clone(), class.len()));
    }
    Ok(classes)
}

/// Cycle distribution from class representatives weighted by class size.
pub fn class_cycle_distribution(group: &PermGroup) -> Result<CycleTypeDistribution> {
    let mut counts = BTreeMap::new();
    for (rep, size) in conjugacy_classes(group)? {
        *counts.entry(partition_key(&rep.cycle_type())).or_insert(0) += size as u64;
    }
    Ok(CycleTypeDistribution::from_counts(group.degree(), counts, 0))
}

/// Factorization pattern of `f mod p` over the primes in `[lo, hi]` not
/// dividing the leading coefficient.
pub fn frobenius_distribution(f: &IntPolynomial, lo: u64, hi: u64) -> Result<CycleTypeDistribution> {
    let points = f.degree().ok_or(Error::Zero { op: "frobenius_distribution" })?;
    let lc = f.leading().unwrap().clone();
    let primes: Vec<u64> = primes_in(lo, hi)
        .into_iter()
        .filter(|&p| reduce(&lc, p) != 0)
        .collect();
    let (counts, skipped) = primes
        .par_chunks(256)
        .map(|block| -> Result<(BTreeMap<String, u64>, u64)> {
            let mut counts = BTreeMap::new();
            let mut skipped = 0;
            for &p in block {
                match cycle_type(f, p)? {
                    Some(parts) => *counts.entry(partition_key(&parts)).or_insert(0) += 1,
                    None => skipped += 1,
                }
            }
            Ok((counts, skipped))
        })
        .try_reduce(
            || (BTreeMap::new(), 0),
            |(mut a, sa), (b, sb)| {
                for (k, v) in b {
                    *a.entry(k).or_insert(0) += v;
                }
                Ok((a, sa + sb))
            },
        )?;
    Ok(CycleTypeDistribution::from_counts(points, counts, skipped))
}

fn check_points(a: &CycleTypeDistribution, b: &CycleTypeDistribution) -> Result<()> {
    if a.points != b.points {
        return Err(Error::Mismatch(format!("distributions on {} and {} points", a.points, b.points)));
    }
    Ok(())
}

/// `½ Σ |a(λ) − b(λ)|` over all partitions.
pub fn total_variation(a: &CycleTypeDistribution, b: &CycleTypeDistribution) -> Result<f64> {
    Ok(total_variation_exact(a, b)?.to_f64().unwrap_or(f64::NAN))
}

pub fn total_variation_exact(a: &CycleTypeDistribution, b: &CycleTypeDistribution) -> Result<BigRational> {
    check_points(a, b)?;
    let keys: std::collections::BTreeSet<&String> = a.counts.keys().chain(b.counts.keys()).collect();
    let sum: BigRational = keys.into_iter().map(|k| (a.exact(k) - b.exact(k)).abs()).sum();
    Ok(sum / BigRational::from_integer(BigInt::from(2)))
}
