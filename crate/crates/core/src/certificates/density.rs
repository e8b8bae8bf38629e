use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::arith::primes_up_to;
use crate::dynamics::orbit_mod_p;
use crate::error::{Error, Result};
use crate::poly::IntPolynomial;

/// Primes up to `bound` and how many divide some `φⁿ(a₀)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DensityRow {
    pub bound: u64,
    pub primes: usize,
    pub members: usize,
    pub proportion: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DensityTable {
    #[serde(with = "crate::serde_util::rational_str")]
    pub a0: BigRational,
    pub rows: Vec<DensityRow>,
    /// Primes dividing the denominator of `a₀`, never members.
    pub skipped: usize,
}

/// Fails unless the orbit of `a0` provably escapes: once `|x|` exceeds
/// `1 + Σ|cᵢ|` for a monic map of degree ≥ 2, `|φ(x)| > |x|` forever.
fn check_escapes(map: &IntPolynomial, a0: &BigRational) -> Result<()> {
    let d = map.degree().unwrap_or(0);
    if d < 2 || !map.is_monic() {
        return Err(Error::InvalidParameters("density needs a monic map of degree >= 2".into()));
    }
    let radius: BigInt = map.coeffs()[..d].iter().map(|c| c.abs()).sum::<BigInt>() + 1;
    let radius = BigRational::from_integer(radius);
    let mut x = a0.clone();
    for _ in 0..64 {
        if x.abs() > radius {
            return Ok(());
        }
        x = map.eval_rational(&x);
    }
    Err(Error::InvalidParameters(format!("orbit of {a0} does not escape; it may be finite")))
}

/// Proportion of primes `p ≤ X′` dividing some iterate `φⁿ(a₀)`, `n ≥ 0`,
/// for each checkpoint `X′ ≤ bound`.
pub fn density_experiment(map: &IntPolynomial, a0: &BigRational, bound: u64, checkpoints: &[u64]) -> Result<DensityTable> {
    if bound < 2 || bound >= 1 << 32 {
        return Err(Error::InvalidParameters(format!("prime bound {bound} out of range")));
    }
    check_escapes(map, a0)?;
    let primes = primes_up_to(bound);
    let membership: Vec<Option<bool>> = primes
        .par_iter()
        .map(|&p| orbit_mod_p(map, a0, p).map(|o| o.map(|o| o.hits_zero)))
        .collect::<Result<_>>()?;
    let mut marks: Vec<u64> = checkpoints.iter().copied().filter(|&c| c <= bound).collect();
    marks.push(bound);
    marks.sort_unstable();
    marks.dedup();
    let mut rows = Vec::new();
    for mark in marks {
        let count = primes.partition_point(|&p| p <= mark);
        let members = membership[..count].iter().filter(|m| **m == Some(true)).count();
        rows.push(DensityRow {
            bound: mark,
            primes: count,
            members,
            proportion: members.to_f64().unwrap() / count.max(1) as f64,
        });
    }
    Ok(DensityTable {
        a0: a0.clone(),
        rows,
        skipped: membership.iter().filter(|m| m.is_none()).count(),
    })
}
