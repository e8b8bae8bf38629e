use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::VojtaFamily;
use crate::arith::primes::mul_mod;
use crate::arith::{Height, height};
use crate::error::{Error, Result};
use crate::ff::{check_modulus, inv_mod, reduce};
use crate::poly::IntPolynomial;

/// Orbit values may grow to this many decimal digits.
pub const DEFAULT_DIGIT_BUDGET: usize = 100_000;

/// Memoized forward orbit `x₀, φ(x₀), φ²(x₀), …` with exact values.
#[derive(Debug, Clone)]
pub struct Orbit {
    map: IntPolynomial,
    values: Vec<BigRational>,
    digit_budget: usize,
}

impl Orbit {
    pub fn new(map: IntPolynomial, start: BigRational) -> Self {
        Self {
            map,
            values: vec![start],
            digit_budget: DEFAULT_DIGIT_BUDGET,
        }
    }

    pub fn with_budget(mut self, digits: usize) -> Self {
        self.digit_budget = digits;
        self
    }

    pub fn map(&self) -> &IntPolynomial {
        &self.map
    }

    pub fn computed(&self) -> usize {
        self.values.len() - 1
    }

    fn size_bits(q: &BigRational) -> u64 {
        q.numer().bits() + q.denom().bits()
    }

    /// Extends the memo through level `n`, refusing to start a step whose
    /// result would exceed the digit budget.
    pub fn ensure(&mut self, n: u32) -> Result<()> {
        let d = self.map.degree().unwrap_or(0).max(1) as u64;
        let limit_bits = (self.digit_budget as f64 * std::f64::consts::LOG2_10) as u64;
        while self.values.len() <= n as usize {
            let last = self.values.last().unwrap();
            let coeff_bits = self.map.coeffs().iter().map(|c| c.bits()).max().unwrap_or(0);
            if Self::size_bits(last).saturating_mul(d) > limit_bits.saturating_add(coeff_bits + 64) {
                return Err(Error::Capacity {
                    what: "orbit decimal digits",
                    limit: self.digit_budget,
                    reached: self.values.len() - 1,
                });
            }
            let next = self.map.eval_rational(last);
            self.values.push(next);
        }
        Ok(())
    }

    pub fn value(&mut self, n: u32) -> Result<&BigRational> {
        self.ensure(n)?;
        Ok(&self.values[n as usize])
    }

    /// `φ^n(x₀)` as an integer; errors if it is not integral.
    pub fn integer_value(&mut self, n: u32) -> Result<BigInt> {
        let v = self.value(n)?;
        if !v.denom().is_one() {
            return Err(Error::NonIntegral { index: n as usize });
        }
        Ok(v.numer().clone())
    }

    /// Values at levels `0..=n`.
    pub fn prefix(&mut self, n: u32) -> Result<&[BigRational]> {
        self.ensure(n)?;
        Ok(&self.values[..=n as usize])
    }
}

/// `[x₀, φ(x₀), …, φⁿ(x₀)]`.
pub fn orbit_values(map: &IntPolynomial, start: &BigRational, n: u32) -> Result<Vec<BigRational>> {
    let mut orbit = Orbit::new(map.clone(), start.clone());
    Ok(orbit.prefix(n)?.to_vec())
}

/// An integer polynomial reduced modulo a prime, for fast orbit sweeps.
#[derive(Debug, Clone)]
pub struct FpMap {
    p: u64,
    coeffs: Vec<u64>,
}

impl FpMap {
    pub fn new(map: &IntPolynomial, p: u64) -> Result<Self> {
        check_modulus(p)?;
        Ok(Self {
            p,
            coeffs: map.coeffs().iter().map(|c| reduce(c, p)).collect(),
        })
    }

    #[inline]
    pub fn apply(&self, x: u64) -> u64 {
        self.coeffs
            .iter()
            .rev()
            .fold(0, |acc, &c| (mul_mod(acc, x, self.p) + c) % self.p)
    }
}

/// Shape of an orbit in `F_p`: `tail` pre-periodic steps then a cycle of
/// length `period`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModOrbit {
    pub hits_zero: bool,
    pub tail: u64,
    pub period: u64,
}

/// Orbit of `a0` modulo `p` with Brent cycle detection; `None` when `p`
/// divides the denominator of `a0`.
pub fn orbit_mod_p(map: &IntPolynomial, a0: &BigRational, p: u64) -> Result<Option<ModOrbit>> {
    let f = FpMap::new(map, p)?;
    let den = reduce(a0.denom(), p);
    if den == 0 {
        return Ok(None);
    }
    let x0 = mul_mod(reduce(a0.numer(), p), inv_mod(den, p), p);
    Ok(Some(orbit_shape(&f, x0)))
}

pub(crate) fn orbit_shape(f: &FpMap, x0: u64) -> ModOrbit {
    let (mut power, mut lam) = (1u64, 1u64);
    let mut tortoise = x0;
    let mut hare = f.apply(x0);
    while tortoise != hare {
        if power == lam {
            tortoise = hare;
            power *= 2;
            lam = 0;
        }
        hare = f.apply(hare);
        lam += 1;
    }
    let (mut tortoise, mut hare) = (x0, x0);
    for _ in 0..lam {
        hare = f.apply(hare);
    }
    let mut mu = 0u64;
    while tortoise != hare {
        tortoise = f.apply(tortoise);
        hare = f.apply(hare);
        mu += 1;
    }
    let mut x = x0;
    let mut hits_zero = false;
    for _ in 0..mu + lam {
        if x == 0 {
            hits_zero = true;
            break;
        }
        x = f.apply(x);
    }
    ModOrbit {
        hits_zero,
        tail: mu,
        period: lam,
    }
}

/// Exact comparands of the two height inequalities at level `n`:
/// `H(φ^(n+1)(0)) ≥ c·H(φⁿ(0))^(d−1)` and
/// `H(φ^(n+1)(0)) ≥ (c(d−1))^((d−1)^(n−3))`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HeightGrowthRow {
    pub n: u32,
    #[serde(with = "crate::serde_util::bigint_str")]
    pub height_next: BigInt,
    #[serde(with = "crate::serde_util::bigint_str")]
    pub step_bound: BigInt,
    #[serde(with = "crate::serde_util::bigint_str")]
    pub lower_bound: BigInt,
    pub holds: bool,
}

pub fn height_growth_check(family: &VojtaFamily, n_max: u32) -> Result<Vec<HeightGrowthRow>> {
    if n_max < 3 {
        return Err(Error::InvalidParameters("height growth needs n_max >= 3".into()));
    }
    let mut orbit = Orbit::new(family.polynomial(), BigRational::zero());
    orbit.ensure(n_max + 1)?;
    let (c, d) = (BigInt::from(family.c()), family.d() as usize);
    let h = |q: &BigRational| -> BigInt {
        let Height { multiplicative, .. } = height(q);
        multiplicative
    };
    let mut rows = Vec::new();
    for n in 3..=n_max {
        let height_next = h(orbit.value(n + 1)?);
        let step_bound = &c * num_traits::pow(h(orbit.value(n)?), d - 1);
        let exponent = (d - 1).pow(n - 3);
        let lower_bound = num_traits::pow(&c * (d - 1), exponent);
        let holds = height_next >= step_bound && height_next >= lower_bound;
        rows.push(HeightGrowthRow {
            n,
            height_next,
            step_bound,
            lower_bound,
            holds,
        });
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynamics::OdoniPrimeFamily;
    use crate::poly::int_poly;
    use proptest::prelude::*;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }

    #[test]
    fn orbit_examples() {
        let f = int_poly(&[-6, 0, 6, 1]);
        assert_eq!(orbit_values(&f, &q(-4), 2).unwrap(), vec![q(-4), q(26), q(21626)]);
        assert_eq!(orbit_values(&f, &q(0), 3).unwrap(), vec![q(0), q(-6), q(-6), q(-6)]);
        let v = VojtaFamily::new(3, 1).unwrap().polynomial();
        assert_eq!(orbit_values(&v, &q(0), 3).unwrap(), vec![q(0), q(2), q(-2), q(-18)]);
    }

    #[test]
    fn budget_is_enforced() {
        let f = OdoniPrimeFamily::new(3, 2).unwrap().polynomial();
        let mut orbit = Orbit::new(f, q(-4)).with_budget(100);
        let err = orbit.ensure(10).unwrap_err();
        assert!(matches!(err, Error::Capacity { reached, .. } if reached >= 3 && reached < 10));
        assert!(orbit.ensure(3).is_ok());
    }

    #[test]
    fn mod_p_orbits() {
        let f = int_poly(&[-6, 0, 6, 1]);
        let o = orbit_mod_p(&f, &q(2), 13).unwrap().unwrap();
        assert!(o.hits_zero);
        let o = orbit_mod_p(&f, &q(2), 5).unwrap().unwrap();
        assert_eq!(o, ModOrbit { hits_zero: false, tail: 1, period: 1 });
        assert!(orbit_mod_p(&f, &q(26), 13).unwrap().unwrap().hits_zero);
        let half = BigRational::new(BigInt::from(1), BigInt::from(2));
        assert_eq!(orbit_mod_p(&f, &half, 2).unwrap(), None);
    }

    #[test]
    fn height_growth_examples() {
        for (d, c, n_max) in [(3, 1, 6), (3, 2, 5), (4, 1, 4)] {
            let rows = height_growth_check(&VojtaFamily::new(d, c).unwrap(), n_max).unwrap();
            assert_eq!(rows.len() as u32, n_max - 2);
            assert!(rows.iter().all(|r| r.holds), "d={d} c={c}");
        }
    }

    proptest! {
        #[test]
        fn tail_plus_period_bounded(a in -50i64..50, idx in 0usize..60) {
            let p = crate::arith::primes_up_to(300)[idx];
            let f = int_poly(&[-6, 0, 6, 1]);
            let o = orbit_mod_p(&f, &q(a), p).unwrap().unwrap();
            prop_assert!(o.period >= 1);
            prop_assert!(o.tail + o.period <= p);
            // Naive check of zero membership over tail + period steps.
            let fm = FpMap::new(&f, p).unwrap();
            let mut x = a.rem_euclid(p as i64) as u64;
            let mut seen = false;
            for _ in 0..p + 1 {
                seen |= x == 0;
                x = fm.apply(x);
            }
            prop_assert_eq!(o.hits_zero, seen);
        }

        #[test]
        fn orbit_recurrence(a in -20i64..20, n in 1u32..5) {
            let f = int_poly(&[-6, 0, 6, 1]);
            let values = orbit_values(&f, &q(a), n).unwrap();
            for w in values.windows(2) {
                prop_assert_eq!(f.eval_rational(&w[0]), w[1].clone());
            }
        }
    }
}
