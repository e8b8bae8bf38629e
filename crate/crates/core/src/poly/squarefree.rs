//! Squarefree structure over `Q`.

use num_traits::One;

use super::{IntPolynomial, RatPolynomial};
use crate::arith::is_prime_u64;
use crate::error::{Error, Result};
use crate::ff::{FpPolynomial, reduce};

const CERTIFICATE_START: u64 = 1_000_000_007;
const CERTIFICATE_ATTEMPTS: usize = 16;

/// Yun's decomposition `f = lc · ∏ fᵢ^i` with monic, pairwise coprime,
/// squarefree `fᵢ`. Only nonconstant factors are listed.
pub fn squarefree_decomposition(f: &RatPolynomial) -> Result<Vec<(RatPolynomial, u32)>> {
    if f.is_zero() {
        return Err(Error::Zero { op: "squarefree_decomposition" });
    }
    let f = f.monic();
    let mut out = Vec::new();
    if f.degree() == Some(0) {
        return Ok(out);
    }
    let df = f.derivative();
    let a0 = f.gcd(&df);
    let mut b = f.div_exact(&a0)?.expect("gcd divides f");
    let mut c = df.div_exact(&a0)?.expect("gcd divides f'");
    let mut d = &c - &b.derivative();
    let mut i = 1;
    while b.degree() != Some(0) {
        let a = b.gcd(&d);
        b = b.div_exact(&a)?.expect("gcd divides b");
        c = d.div_exact(&a)?.expect("gcd divides d");
        if a.degree().unwrap_or(0) > 0 {
            out.push((a, i));
        }
        d = &c - &b.derivative();
        i += 1;
    }
    Ok(out)
}

/// A prime `p ∤ lc(f)` with `f mod p` squarefree, which certifies that `f`
/// is squarefree over `Q`.
pub fn modular_squarefree_certificate(f: &IntPolynomial) -> Option<u64> {
    let lc = f.leading()?;
    f.degree().filter(|&d| d >= 1)?;
    (CERTIFICATE_START..)
        .filter(|&p| is_prime_u64(p))
        .take(CERTIFICATE_ATTEMPTS)
        .find(|&p| {
            reduce(lc, p) != 0
                && FpPolynomial::from_int(f, p).is_ok_and(|fp| fp.is_squarefree())
        })
}

/// Number of distinct roots of multiplicity one in `Q̄`.
pub fn count_simple_roots(f: &RatPolynomial) -> Result<usize> {
    if f.is_zero() {
        return Err(Error::Zero { op: "count_simple_roots" });
    }
    let (g, _) = f.to_integer();
    if modular_squarefree_certificate(&g).is_some() {
        return Ok(g.degree().unwrap());
    }
    Ok(squarefree_decomposition(f)?
        .iter()
        .find(|(_, m)| m.is_one())
        .map_or(0, |(h, _)| h.degree().unwrap()))
}
