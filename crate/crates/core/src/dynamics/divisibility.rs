//! Rigid divisibility, Möbius primitive parts and the non-primitive prime
//! dichotomy.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::{Orbit, VojtaFamily};
use crate::arith::{FactorBudget, divisors, factor, mobius, primes_up_to};
use crate::error::{Error, Result};
use crate::poly::IntPolynomial;

/// A failed instance of one of the two rigid-divisibility conditions.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RigidViolation {
    pub prime: u64,
    /// 1: `v(b_n) > 0 ⇒ v(b_mn) = v(b_n)`; 2: `v(b_gcd(m,n)) ≥ min(v(b_m), v(b_n))`.
    pub condition: u8,
    pub n: usize,
    pub m: usize,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RigidDivisibilityReport {
    pub label: String,
    pub depth: usize,
    pub prime_bound: u64,
    /// Primes up to the bound that divide some tested term.
    pub primes_seen: Vec<u64>,
    pub violations: Vec<RigidViolation>,
}

impl RigidDivisibilityReport {
    pub fn is_rigid(&self) -> bool {
        self.violations.is_empty()
    }
}

/// `v_p(n)` for a small prime, `None` meaning infinite (n = 0).
fn small_valuation(n: &BigInt, p: u64) -> Option<u32> {
    if n.is_zero() {
        return None;
    }
    let mut e = 0;
    let mut x = n.clone();
    loop {
        let (q, r) = x.div_rem(&BigInt::from(p));
        if !r.is_zero() {
            return Some(e);
        }
        x = q;
        e += 1;
    }
}

fn show(v: Option<u32>) -> String {
    v.map_or_else(|| "inf".to_string(), |e| e.to_string())
}

/// Checks both conditions on `terms = [b_1, …, b_N]` for every prime up to
/// `prime_bound` dividing some term.
pub fn check_rigid_divisibility(label: &str, terms: &[BigInt], prime_bound: u64) -> RigidDivisibilityReport {
    let depth = terms.len();
    let mut primes_seen = Vec::new();
    let mut violations = Vec::new();
    for p in primes_up_to(prime_bound) {
        let vals: Vec<Option<u32>> = terms.iter().map(|b| small_valuation(b, p)).collect();
        if vals.iter().all(|v| *v == Some(0)) {
            continue;
        }
        primes_seen.push(p);
        // Index arithmetic is 1-based: vals[i - 1] = v_p(b_i).
        let v = |i: usize| vals[i - 1];
        for n in 1..=depth {
            if v(n) == Some(0) {
                continue;
            }
            for mn in (2 * n..=depth).step_by(n) {
                if v(mn) != v(n) {
                    violations.push(RigidViolation {
                        prime: p,
                        condition: 1,
                        n,
                        m: mn / n,
                        detail: format!("v(b_{n}) = {}, v(b_{mn}) = {}", show(v(n)), show(v(mn))),
                    });
                }
            }
        }
        for n in 1..=depth {
            for m in n + 1..=depth {
                // None (infinite) compares above every finite value.
                let lo = match (v(n), v(m)) {
                    (None, x) | (x, None) => x,
                    (Some(a), Some(b)) => Some(a.min(b)),
                };
                let g = n.gcd(&m);
                let ok = match (v(g), lo) {
                    (None, _) => true,
                    (Some(_), None) => false,
                    (Some(a), Some(b)) => a >= b,
                };
                if !ok {
                    violations.push(RigidViolation {
                        prime: p,
                        condition: 2,
                        n,
                        m,
                        detail: format!(
                            "v(b_{g}) = {} below min(v(b_{n}), v(b_{m})) = {}",
                            show(v(g)),
                            show(lo)
                        ),
                    });
                }
            }
        }
    }
    RigidDivisibilityReport {
        label: label.to_string(),
        depth,
        prime_bound,
        primes_seen,
        violations,
    }
}

fn zero_orbit_terms(family: &VojtaFamily, depth: u32) -> Result<Vec<BigInt>> {
    let mut orbit = Orbit::new(family.polynomial(), BigRational::zero());
    (1..=depth).map(|n| orbit.integer_value(n)).collect()
}

/// Rigid divisibility of `φ(0), φ²(0), …, φ^N(0)` for a Vojta map.
pub fn verify_rigid_divisibility(family: &VojtaFamily, depth: u32, prime_bound: u64) -> Result<RigidDivisibilityReport> {
    let terms = zero_orbit_terms(family, depth)?;
    let label = format!("vojta(d={}, c={})", family.d(), family.c());
    Ok(check_rigid_divisibility(&label, &terms, prime_bound))
}

/// `∏_{m | n} b_m^μ(n/m)` for `terms = [b_1, …]`.
pub fn mobius_product(terms: &[BigInt], n: usize) -> Result<BigRational> {
    if n == 0 || n > terms.len() {
        return Err(Error::InvalidParameters(format!("index {n} outside 1..={}", terms.len())));
    }
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for m in divisors(n as u64) {
        let b = &terms[m as usize - 1];
        if b.is_zero() {
            return Err(Error::Zero { op: "mobius_product" });
        }
        match mobius(n as u64 / m)? {
            1 => num *= b,
            -1 => den *= b,
            _ => {}
        }
    }
    Ok(BigRational::new(num, den))
}

/// Primitive part of `φⁿ(0)` by Möbius inversion, asserted integral.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrimitivePart {
    pub n: u32,
    /// Absolute value of the Möbius product.
    #[serde(with = "crate::serde_util::bigint_str")]
    pub value: BigInt,
    pub negative: bool,
}

impl PrimitivePart {
    pub fn signed(&self) -> BigInt {
        if self.negative { -&self.value } else { self.value.clone() }
    }
}

pub fn primitive_part(family: &VojtaFamily, n: u32) -> Result<PrimitivePart> {
    let terms = zero_orbit_terms(family, n)?;
    let q = mobius_product(&terms, n as usize)?;
    if !q.denom().is_one() {
        return Err(Error::NonIntegral { index: n as usize });
    }
    Ok(PrimitivePart {
        n,
        value: q.numer().abs(),
        negative: q.numer().is_negative(),
    })
}

/// Outcome of checking the dichotomy for the non-primitive primes of
/// `φⁿ(b)`: each must divide `φ^m(b)` or `φ^m(0)` for some `m ≤ ⌊n/2⌋`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PpdCheck {
    pub n: u32,
    /// Non-primitive primes found, each with the index `m` that explains it.
    pub explained: Vec<(String, u32)>,
    /// Non-primitive primes without an explanation.
    pub unexplained: Vec<String>,
    /// Set when some gcd could not be fully factored within budget.
    pub inconclusive: bool,
}

impl PpdCheck {
    pub fn holds(&self) -> bool {
        self.unexplained.is_empty() && !self.inconclusive
    }
}

pub fn ppd_refinement_check(map: &IntPolynomial, b: &BigInt, n: u32, budget: &FactorBudget) -> Result<PpdCheck> {
    let mut check = PpdCheck {
        n,
        explained: Vec::new(),
        unexplained: Vec::new(),
        inconclusive: false,
    };
    if n <= 1 {
        return Ok(check);
    }
    let mut from_b = Orbit::new(map.clone(), BigRational::from_integer(b.clone()));
    let mut from_0 = Orbit::new(map.clone(), BigRational::zero());
    let target = from_b.integer_value(n)?;
    let mut primes = std::collections::BTreeSet::new();
    for m in 1..n {
        let g = target.gcd(&from_b.integer_value(m)?);
        if g.is_zero() || g.is_one() {
            continue;
        }
        let fm = factor(&g, budget)?;
        check.inconclusive |= !fm.is_complete();
        primes.extend(fm.factors.into_iter().map(|(q, _)| q));
    }
    for q in primes {
        let mut witness = None;
        for m in 1..=n / 2 {
            if (from_b.integer_value(m)? % &q).is_zero() || (from_0.integer_value(m)? % &q).is_zero() {
                witness = Some(m);
                break;
            }
        }
        match witness {
            Some(m) => check.explained.push((q.to_string(), m)),
            None => check.unexplained.push(q.to_string()),
        }
    }
    Ok(check)
}
