//! Budgeted integer factorization: trial division followed by Brent's
//! variant of Pollard rho.

use std::collections::BTreeMap;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::primes::{self, Primality, gcd_u64, mul_mod};
use crate::error::{Error, Result};

/// Effort limits for [`factor`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactorBudget {
    /// Trial division runs over all primes up to this bound.
    pub trial_bound: u64,
    /// Maximum rho iterations spent on each composite part.
    pub rho_iterations: u64,
    /// Miller-Rabin rounds for inputs above 2^64.
    pub mr_rounds: u32,
    pub seed: u64,
}

impl Default for FactorBudget {
    fn default() -> Self {
        Self {
            trial_bound: 1 << 16,
            rho_iterations: 1 << 20,
            mr_rounds: primes::DEFAULT_MR_ROUNDS,
            seed: 0x5eed,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CofactorStatus {
    One,
    ProbablePrime,
    CompositeUnfactored,
}

/// A (possibly partial) prime factorization.
///
/// `value = sign · ∏ pᵢ^eᵢ · cofactor` with `cofactor ≥ 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FactorMap {
    pub negative: bool,
    /// Strictly increasing primes with positive exponents.
    pub factors: Vec<(BigInt, u32)>,
    pub cofactor: BigInt,
    pub cofactor_status: CofactorStatus,
    /// Set when some listed prime is only a probable prime.
    pub probable: bool,
}

impl FactorMap {
    pub fn one() -> Self {
        Self {
            negative: false,
            factors: Vec::new(),
            cofactor: BigInt::one(),
            cofactor_status: CofactorStatus::One,
            probable: false,
        }
    }

    pub fn is_complete(&self) -> bool {
        self.cofactor_status != CofactorStatus::CompositeUnfactored
    }

    pub fn exponent_of(&self, p: &BigInt) -> u32 {
        self.factors
            .iter()
            .find(|(q, _)| q == p)
            .map(|&(_, e)| e)
            .unwrap_or(0)
    }

    /// Reassemble the factored value.
    pub fn value(&self) -> BigInt {
        let mut acc = self.cofactor.clone();
        for (p, e) in &self.factors {
            acc *= num_traits::pow(p.clone(), *e as usize);
        }
        if self.negative { -acc } else { acc }
    }

    /// Smallest listed prime with odd exponent.
    pub fn odd_exponent_prime(&self) -> Option<&BigInt> {
        self.factors.iter().find(|(_, e)| e % 2 == 1).map(|(p, _)| p)
    }

    pub(crate) fn from_counts(
        negative: bool,
        counts: BTreeMap<BigInt, u32>,
        cofactor: BigInt,
        cofactor_status: CofactorStatus,
        probable: bool,
    ) -> Self {
        Self {
            negative,
            factors: counts.into_iter().collect(),
            cofactor,
            cofactor_status,
            probable,
        }
    }
}

/// Factor `n` within `budget`. Parts that resist splitting are multiplied
/// into the cofactor and reported as unfactored.
pub fn factor(n: &BigInt, budget: &FactorBudget) -> Result<FactorMap> {
    if n.is_zero() {
        return Err(Error::Zero { op: "factor" });
    }
    let negative = n.sign() == Sign::Minus;
    let mut rest = n.abs();
    let mut counts: BTreeMap<BigInt, u32> = BTreeMap::new();

    for p in primes::primes_up_to(budget.trial_bound) {
        if rest.is_one() {
            break;
        }
        let pb = BigInt::from(p);
        if &pb * &pb > rest {
            break;
        }
        let mut e = 0u32;
        while (&rest % p).is_zero() {
            rest /= p;
            e += 1;
        }
        if e > 0 {
            counts.insert(pb, e);
        }
    }

    let mut cofactor = BigInt::one();
    let mut probable = false;
    let mut stack = vec![rest];
    let mut salt = 0u64;
    while let Some(x) = stack.pop() {
        if x.is_one() {
            continue;
        }
        match primes::primality(&x, budget.mr_rounds, budget.seed) {
            Primality::Prime => {
                *counts.entry(x).or_insert(0) += 1;
                continue;
            }
            Primality::ProbablePrime => {
                probable = true;
                *counts.entry(x).or_insert(0) += 1;
                continue;
            }
            Primality::Composite => {}
        }
        if let Some(r) = exact_root_split(&x) {
            // x = r^k: push k copies of r.
            let mut y = x.clone();
            while (&y % &r).is_zero() {
                y /= &r;
                stack.push(r.clone());
            }
            continue;
        }
        salt += 1;
        let split = match x.to_u64() {
            Some(small) => brent_u64(small, budget.rho_iterations, budget.seed ^ salt)
                .map(BigInt::from),
            None => brent_big(&x, budget.rho_iterations, budget.seed ^ salt),
        };
        match split {
            Some(f) => {
                let other = &x / &f;
                stack.push(f);
                stack.push(other);
            }
            None => cofactor *= x,
        }
    }
    let status = if cofactor.is_one() {
        CofactorStatus::One
    } else {
        CofactorStatus::CompositeUnfactored
    };
    Ok(FactorMap::from_counts(
        negative, counts, cofactor, status, probable,
    ))
}

/// Detect perfect squares and cubes, which defeat rho's cycle structure.
fn exact_root_split(x: &BigInt) -> Option<BigInt> {
    for k in [2u32, 3] {
        let r = x.nth_root(k);
        if r > BigInt::one() && num_traits::pow(r.clone(), k as usize) == *x {
            return Some(r);
        }
    }
    None
}

fn brent_u64(n: u64, max_iter: u64, seed: u64) -> Option<u64> {
    if n % 2 == 0 {
        return Some(2);
    }
    let mut c = 1 + seed % (n - 1);
    for _attempt in 0..8 {
        let f = |x: u64| (mul_mod(x, x, n) + c) % n;
        let (mut y, mut r, mut q) = (seed % n, 1u64, 1u64);
        let (mut x, mut ys) = (0u64, 0u64);
        let mut g = 1u64;
        let mut spent = 0u64;
        const BATCH: u64 = 128;
        while g == 1 {
            x = y;
            for _ in 0..r {
                y = f(y);
            }
            let mut k = 0;
            while k < r && g == 1 {
                ys = y;
                for _ in 0..BATCH.min(r - k) {
                    y = f(y);
                    q = mul_mod(q, x.abs_diff(y), n);
                }
                g = gcd_u64(q, n);
                k += BATCH;
            }
            spent += r;
            r *= 2;
            if spent > max_iter {
                return None;
            }
        }
        if g == n {
            loop {
                ys = f(ys);
                g = gcd_u64(x.abs_diff(ys), n);
                if g > 1 {
                    break;
                }
            }
        }
        if g != n {
            return Some(g);
        }
        c = c % (n - 1) + 1;
    }
    None
}

fn brent_big(n: &BigInt, max_iter: u64, seed: u64) -> Option<BigInt> {
    if n.is_even() {
        return Some(BigInt::from(2));
    }
    let mut c = BigInt::from(1 + seed % 1000);
    for _attempt in 0..4 {
        let f = |x: &BigInt| (x * x + &c) % n;
        let mut y = BigInt::from(seed % 1_000_003) % n;
        let (mut r, mut q) = (1u64, BigInt::one());
        let (mut x, mut ys) = (BigInt::zero(), BigInt::zero());
        let mut g = BigInt::one();
        let mut spent = 0u64;
        const BATCH: u64 = 128;
        while g.is_one() {
            x = y.clone();
            for _ in 0..r {
                y = f(&y);
            }
            let mut k = 0;
            while k < r && g.is_one() {
                ys = y.clone();
                for _ in 0..BATCH.min(r - k) {
                    y = f(&y);
                    q = (q * (&x - &y).abs()) % n;
                }
                g = q.gcd(n);
                k += BATCH;
            }
            spent += r;
            r *= 2;
            if spent > max_iter {
                return None;
            }
        }
        if &g == n {
            loop {
                ys = f(&ys);
                g = (&x - &ys).abs().gcd(n);
                if !g.is_one() {
                    break;
                }
            }
        }
        if &g != n {
            return Some(g);
        }
        c += 1;
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn pairs(m: &FactorMap) -> Vec<(i64, u32)> {
        m.factors
            .iter()
            .map(|(p, e)| (p.to_i64().unwrap(), *e))
            .collect()
    }

    #[test]
    fn small_examples() {
        let b = FactorBudget::default();
        let m = factor(&BigInt::from(21626), &b).unwrap();
        assert_eq!(pairs(&m), vec![(2, 1), (11, 1), (983, 1)]);
        let m = factor(&BigInt::from(4212), &b).unwrap();
        assert_eq!(pairs(&m), vec![(2, 2), (3, 4), (13, 1)]);
        let m = factor(&BigInt::from(251), &b).unwrap();
        assert_eq!(pairs(&m), vec![(251, 1)]);
        assert!(m.is_complete());
    }

    #[test]
    fn zero_rejected() {
        assert!(matches!(
            factor(&BigInt::zero(), &FactorBudget::default()),
            Err(Error::Zero { .. })
        ));
    }

    #[test]
    fn negative_and_unit() {
        let m = factor(&BigInt::from(-12), &FactorBudget::default()).unwrap();
        assert!(m.negative);
        assert_eq!(m.value(), BigInt::from(-12));
        let m = factor(&BigInt::from(-1), &FactorBudget::default()).unwrap();
        assert!(m.factors.is_empty());
        assert_eq!(m.value(), BigInt::from(-1));
    }

    #[test]
    fn rho_splits_semiprimes() {
        let b = FactorBudget {
            trial_bound: 100,
            ..FactorBudget::default()
        };
        // Two 31-bit primes and two 40-bit primes.
        let n = BigInt::from(2_147_483_647u64) * BigInt::from(2_147_483_629u64);
        let m = factor(&n, &b).unwrap();
        assert_eq!(m.factors.len(), 2);
        assert_eq!(m.value(), n);
        let n = BigInt::from(1_099_511_627_791u64)
            * BigInt::from(1_099_511_627_689u64)
            * BigInt::from(1_000_003u64);
        let m = factor(&n, &b).unwrap();
        assert_eq!(m.factors.len(), 3);
        assert!(m.is_complete());
        assert_eq!(m.value(), n);
    }

    #[test]
    fn exhausted_budget_reports_cofactor() {
        let b = FactorBudget {
            trial_bound: 10,
            rho_iterations: 4,
            ..FactorBudget::default()
        };
        let p = (BigInt::one() << 61) - 1;
        let q = (BigInt::one() << 89) - 1;
        let n = &p * &q;
        let m = factor(&n, &b).unwrap();
        assert_eq!(m.value(), n);
        if !m.is_complete() {
            assert_eq!(m.cofactor, n);
        }
    }

    #[test]
    fn prime_powers() {
        let n = num_traits::pow(BigInt::from(1_000_003u64), 3) * 7;
        let b = FactorBudget {
            trial_bound: 100,
            ..FactorBudget::default()
        };
        let m = factor(&n, &b).unwrap();
        assert_eq!(pairs(&m), vec![(7, 1), (1_000_003, 3)]);
    }

    proptest! {
        #[test]
        fn product_invariant(n in 1i64..10_000_000_000i64) {
            let m = factor(&BigInt::from(n), &FactorBudget::default()).unwrap();
            prop_assert_eq!(m.value(), BigInt::from(n));
            prop_assert!(m.is_complete());
            let ps: Vec<&BigInt> = m.factors.iter().map(|(p, _)| p).collect();
            prop_assert!(ps.windows(2).all(|w| w[0] < w[1]));
            for p in ps {
                prop_assert!(primes::is_prime(p));
            }
        }
    }
}
