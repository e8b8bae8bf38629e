//! Discriminants: the subresultant oracle, the closed trinomial formula, and
//! the critical-value product formula for iterates.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::{DivOutcome, IntPolynomial, Polynomial, RatPolynomial, resultant};
use crate::arith::{FactorBudget, factor};
use crate::error::{Error, Result};

fn sign_of_half_product(d: u64) -> i32 {
    // (−1)^(d(d−1)/2)
    if (d % 4 == 2) || (d % 4 == 3) { -1 } else { 1 }
}

/// `(−1)^(d(d−1)/2) · Res(f, f′) / lc(f)`; degree-1 polynomials have
/// discriminant 1.
pub fn discriminant(f: &IntPolynomial) -> Result<BigInt> {
    let Some(d) = f.degree() else {
        return Err(Error::Zero { op: "discriminant" });
    };
    if d == 0 {
        return Err(Error::Unsupported("discriminant of a constant".into()));
    }
    if d == 1 {
        return Ok(BigInt::one());
    }
    let res = resultant(f, &f.derivative());
    let lc = f.leading().unwrap();
    debug_assert!((&res % lc).is_zero());
    let disc = res / lc;
    Ok(if sign_of_half_product(d as u64) < 0 { -disc } else { disc })
}

/// Discriminant of a rational polynomial via its integral multiple.
pub fn disc_oracle(f: &RatPolynomial) -> Result<BigRational> {
    let Some(d) = f.degree() else {
        return Err(Error::Zero { op: "disc_oracle" });
    };
    let (g, m) = f.to_integer();
    let disc = discriminant(&g)?;
    if d <= 1 {
        return Ok(BigRational::from_integer(disc));
    }
    Ok(BigRational::new(disc, num_traits::pow(m, 2 * d - 2)))
}

/// `x^d + A·x^s + B`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Trinomial {
    pub d: u32,
    pub s: u32,
    #[serde(with = "crate::serde_util::bigint_str")]
    pub a: BigInt,
    #[serde(with = "crate::serde_util::bigint_str")]
    pub b: BigInt,
}

impl Trinomial {
    pub fn new(d: u32, s: u32, a: impl Into<BigInt>, b: impl Into<BigInt>) -> Result<Self> {
        let (a, b) = (a.into(), b.into());
        if d < 3 {
            return Err(Error::InvalidParameters(format!("trinomial degree {d} < 3")));
        }
        if s == 0 || s >= d {
            return Err(Error::InvalidParameters(format!("need 1 <= s < d, got s = {s}")));
        }
        if a.is_zero() || b.is_zero() {
            return Err(Error::InvalidParameters("A and B must be nonzero".into()));
        }
        Ok(Self { d, s, a, b })
    }

    pub fn coprime_exponents(&self) -> bool {
        self.d.gcd(&self.s) == 1
    }

    pub fn polynomial(&self) -> IntPolynomial {
        let mut coeffs = vec![BigInt::zero(); self.d as usize + 1];
        coeffs[self.d as usize] = BigInt::one();
        coeffs[self.s as usize] += &self.a;
        coeffs[0] += &self.b;
        Polynomial::new(coeffs)
    }
}

impl fmt::Display for Trinomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.polynomial())
    }
}

/// Closed-form discriminant
/// `(−1)^(d(d−1)/2) B^(s−1) (d^d B^(d−s) + (−1)^(d−1) (d−s)^(d−s) s^s A^d)`,
/// valid when `gcd(d, s) = 1`.
pub fn trinomial_disc(t: &Trinomial) -> BigInt {
    let (d, s) = (t.d as usize, t.s as usize);
    let big = |n: usize| BigInt::from(n);
    let first = num_traits::pow(big(d), d) * num_traits::pow(t.b.clone(), d - s);
    let mut second = num_traits::pow(big(d - s), d - s)
        * num_traits::pow(big(s), s)
        * num_traits::pow(t.a.clone(), d);
    if (d - 1) % 2 == 1 {
        second = -second;
    }
    let value = num_traits::pow(t.b.clone(), s - 1) * (first + second);
    if sign_of_half_product(d as u64) < 0 { -value } else { value }
}

/// A root of `f′` with its multiplicity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CriticalPoint {
    pub point: BigRational,
    pub multiplicity: u32,
}

/// Rational roots of an integer polynomial with multiplicities.
fn rational_roots(g: &IntPolynomial) -> Result<Vec<CriticalPoint>> {
    let mut out = Vec::new();
    let mut g = g.clone();
    let zero_mult = g.coeffs().iter().take_while(|c| c.is_zero()).count();
    if zero_mult > 0 {
        out.push(CriticalPoint {
            point: BigRational::zero(),
            multiplicity: zero_mult as u32,
        });
        g = Polynomial::new(g.coeffs()[zero_mult..].to_vec());
    }
    if g.degree().unwrap_or(0) == 0 {
        return Ok(out);
    }
    let budget = FactorBudget::default();
    let divisors_of = |n: &BigInt| -> Result<Vec<BigInt>> {
        let map = factor(n, &budget)?;
        if !map.is_complete() {
            return Err(Error::Unsupported(format!("cannot factor {n} for rational roots")));
        }
        let mut divs = vec![BigInt::one()];
        for (p, e) in &map.factors {
            let mut next = Vec::new();
            for d in &divs {
                let mut pk = BigInt::one();
                for _ in 0..=*e {
                    next.push(d * &pk);
                    pk *= p;
                }
            }
            divs = next;
        }
        Ok(divs)
    };
    let nums = divisors_of(&g.coeffs()[0])?;
    let dens = divisors_of(g.leading().unwrap())?;
    let mut candidates = BTreeSet::new();
    for p in &nums {
        for q in &dens {
            for sgn in [1, -1] {
                candidates.insert(BigRational::new(p * sgn, q.clone()));
            }
        }
    }
    for r in candidates {
        let linear = Polynomial::new(vec![-r.numer().clone(), r.denom().clone()]);
        let mut mult = 0;
        while let DivOutcome::Exact(q) = g.exact_div(&linear)? {
            g = q;
            mult += 1;
            if g.degree() == Some(0) {
                break;
            }
        }
        if mult > 0 {
            out.push(CriticalPoint {
                point: r,
                multiplicity: mult,
            });
        }
        if g.degree() == Some(0) {
            break;
        }
    }
    out.sort_by(|a, b| a.point.cmp(&b.point));
    Ok(out)
}

/// Critical points of `f` (roots of `f′`), required to be rational.
pub fn critical_points(f: &IntPolynomial) -> Result<Vec<CriticalPoint>> {
    let d = f.degree().unwrap_or(0);
    if d < 2 {
        return Ok(Vec::new());
    }
    let fp = f.derivative().primitive_part();
    let pts = rational_roots(&fp)?;
    let total: u32 = pts.iter().map(|c| c.multiplicity).sum();
    if total as usize != d - 1 {
        return Err(Error::Unsupported(format!(
            "derivative of {f} does not split over Q"
        )));
    }
    Ok(pts)
}

/// Closed-form `Disc(fⁿ − t)` for monic `f` whose critical points are all
/// rational:
/// `(−1)^((D−1)(D−2)/2) d^(nD) ∏_b ∏_{j=1..n} (t − f^j(b))^(d^(n−j) e_b)`
/// with `D = dⁿ`.
pub fn iterate_disc_formula(f: &IntPolynomial, n: u32, t: &BigRational) -> Result<BigRational> {
    if n == 0 {
        return Err(Error::InvalidParameters("n must be >= 1".into()));
    }
    let d = f.degree().unwrap_or(0);
    if d < 2 {
        return Err(Error::Unsupported("degree must be at least 2".into()));
    }
    if !f.is_monic() {
        return Err(Error::Unsupported("iterate_disc_formula requires a monic map".into()));
    }
    let crit = critical_points(f)?;
    let big_d = (d as u64)
        .checked_pow(n)
        .ok_or_else(|| Error::Unsupported("degree overflow".into()))?;
    let sign_exp = ((big_d - 1) as u128 * (big_d.saturating_sub(2)) as u128 / 2) % 2;
    let mut acc = BigRational::from_integer(num_traits::pow(BigInt::from(d), (n as u64 * big_d) as usize));
    if sign_exp == 1 {
        acc = -acc;
    }
    for c in &crit {
        let mut x = c.point.clone();
        for j in 1..=n {
            x = f.eval_rational(&x);
            let exp = (d as u64).pow(n - j) * c.multiplicity as u64;
            let base = t - &x;
            acc *= num_traits::pow(base, exp.to_usize().unwrap());
        }
    }
    Ok(acc)
}
