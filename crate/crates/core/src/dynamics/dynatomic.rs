//! The parameter polynomials `φ_(C,n)(0) ∈ Z[C]` and their Möbius
//! quotients `Φ_(C,n)(0)`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::{divisors, mobius};
use crate::error::{Error, Result};
use crate::poly::{DivOutcome, IntPolynomial, Polynomial, count_simple_roots, modular_squarefree_certificate};

/// `[φ_(C,1)(0), …, φ_(C,n)(0)]` from `g₁ = (d−1)C` and
/// `g_(m+1) = g_m^d − dC·g_m^(d−1) + (d−1)C`.
pub fn parameter_orbit(d: u32, n: u32) -> Result<Vec<IntPolynomial>> {
    if d < 3 {
        return Err(Error::InvalidParameters(format!("d = {d} < 3")));
    }
    let c_poly: IntPolynomial = Polynomial::x();
    let dm1 = BigInt::from(d - 1);
    let lin = c_poly.scale(&dm1);
    let dc = c_poly.scale(&BigInt::from(d));
    let mut out = vec![lin.clone()];
    while out.len() < n as usize {
        let g = out.last().unwrap();
        let g_pow = g.pow(d - 1);
        let next = &(&(&g_pow * g) - &(&dc * &g_pow)) + &lin;
        out.push(next);
    }
    Ok(out)
}

/// `Φ_(C,n)(0) = ∏_{m | n} g_m^μ(n/m)`; the flag reports whether the exact
/// quotient failed and gcd reduction was needed.
pub fn dynatomic_at_zero(gs: &[IntPolynomial], n: u32) -> Result<(IntPolynomial, bool)> {
    if n == 0 || n as usize > gs.len() {
        return Err(Error::InvalidParameters(format!("n = {n} outside the computed range")));
    }
    let mut num = IntPolynomial::one();
    let mut den = IntPolynomial::one();
    for m in divisors(n as u64) {
        let g = &gs[m as usize - 1];
        match mobius(n as u64 / m)? {
            1 => num = &num * g,
            -1 => den = &den * g,
            _ => {}
        }
    }
    if let DivOutcome::Exact(q) = num.exact_div(&den)? {
        return Ok((q, false));
    }
    let common = num.gcd(&den);
    let (DivOutcome::Exact(num), DivOutcome::Exact(den)) = (num.exact_div(&common)?, den.exact_div(&common)?) else {
        return Err(Error::Inconsistent(format!("gcd reduction failed at n = {n}")));
    };
    match (den.degree(), den.leading()) {
        (Some(0), Some(c)) if num.content().is_multiple_of(c) => {
            Ok((num.div_scalar_exact(c), true))
        }
        _ => Err(Error::NonIntegral { index: n as usize }),
    }
}

/// Facts recorded for one level of the parameter orbit.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DynatomicLevel {
    pub n: u32,
    pub degree: usize,
    #[serde(with = "crate::serde_util::bigint_str")]
    pub leading: BigInt,
    /// `m` with `|leading| = (d−1)^m`, if it is such a power.
    pub leading_exponent: Option<u32>,
    /// A prime modulo which `φ_(C,n)(0)` is squarefree.
    pub squarefree_prime: Option<u64>,
    pub dynatomic_degree: usize,
    pub dynatomic_simple_roots: usize,
    pub used_gcd_fallback: bool,
}

fn power_exponent(n: &BigInt, base: u32) -> Option<u32> {
    let base = BigInt::from(base);
    let mut x = n.abs();
    let mut e = 0;
    while x > BigInt::one() {
        let (q, r) = x.div_rem(&base);
        if !r.is_zero() {
            return None;
        }
        x = q;
        e += 1;
    }
    Some(e)
}

pub fn dynatomic_report(d: u32, n_max: u32) -> Result<Vec<DynatomicLevel>> {
    let gs = parameter_orbit(d, n_max)?;
    let mut out = Vec::new();
    for n in 1..=n_max {
        let g = &gs[n as usize - 1];
        let leading = g.leading().unwrap().clone();
        let (phi, fallback) = dynatomic_at_zero(&gs, n)?;
        out.push(DynatomicLevel {
            n,
            degree: g.degree().unwrap(),
            leading_exponent: power_exponent(&leading, d - 1).filter(|&m| m >= 1),
            leading,
            squarefree_prime: modular_squarefree_certificate(g),
            dynatomic_degree: phi.degree().unwrap_or(0),
            dynatomic_simple_roots: count_simple_roots(&phi.to_rational())?,
            used_gcd_fallback: fallback,
        });
    }
    Ok(out)
}
