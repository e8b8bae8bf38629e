//! Reduction shape of a trinomial at a prime dividing its discriminant.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use super::factor::{FactorShape, fp_factor};
use super::{FpPolynomial, check_modulus, inv_mod, reduce};
use crate::arith::bezout;
use crate::arith::primes::{mul_mod, pow_mod};
use crate::error::{Error, Result};
use crate::poly::{Trinomial, trinomial_disc};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum ShapeVerdict {
    /// `f ≡ (x − η)² · (distinct separable irreducibles) mod p`.
    RamifiedShape { eta: u64, shape: FactorShape },
    Unramified,
    HypothesisViolated { reason: String },
}

fn signed_pow(base: u64, exp: i64, p: u64) -> u64 {
    let b = if exp < 0 { inv_mod(base, p) } else { base };
    pow_mod(b, exp.unsigned_abs(), p)
}

/// Classifies `t mod p`. When `p` divides the discriminant but not
/// `A·B·d·s·(d−s)`, the double root `η` is built from
/// `η^(d−s) = −sA/d` and `η^s = −dB/((d−s)A)` and the factorization is
/// verified to be `(x − η)²` times distinct irreducibles.
pub fn shape_check(t: &Trinomial, p: u64) -> Result<ShapeVerdict> {
    check_modulus(p)?;
    if reduce(&trinomial_disc(t), p) != 0 {
        return Ok(ShapeVerdict::Unramified);
    }
    let violated = |reason: &str| Ok(ShapeVerdict::HypothesisViolated { reason: reason.into() });
    let (d, s) = (t.d as u64, t.s as u64);
    if d.gcd(&s) != 1 {
        return violated("gcd(d, s) != 1");
    }
    let (a, b) = (reduce(&t.a, p), reduce(&t.b, p));
    if a == 0 || b == 0 {
        return violated("p | AB");
    }
    if d % p == 0 || s % p == 0 || (d - s) % p == 0 {
        return violated("p | ds(d-s)");
    }

    let neg = |x: u64| (p - x) % p;
    // η^(d−s) and η^s as field elements.
    let eta_ds = neg(mul_mod(mul_mod(s % p, a, p), inv_mod(d % p, p), p));
    let eta_s = neg(mul_mod(
        mul_mod(d % p, b, p),
        inv_mod(mul_mod((d - s) % p, a, p), p),
        p,
    ));
    let (_, x, y) = bezout(&BigInt::from(s), &BigInt::from(d - s))?;
    let (x, y) = (x.to_i64().unwrap(), y.to_i64().unwrap());
    let eta = mul_mod(signed_pow(eta_s, x, p), signed_pow(eta_ds, y, p), p);

    let f = FpPolynomial::from_int(&t.polynomial(), p)?;
    let inconsistent = |what: &str| {
        Err(Error::Inconsistent(format!(
            "{t} mod {p}: {what} at eta = {eta}"
        )))
    };
    if f.evaluate(eta) != 0 || f.derivative().evaluate(eta) != 0 {
        return inconsistent("eta is not a double root");
    }
    let lin = FpPolynomial::linear(p, eta);
    let Some(cofactor) = f.div_exact(&lin.mul(&lin)) else {
        return inconsistent("(x - eta)^2 does not divide f");
    };
    if !cofactor.is_squarefree() {
        return inconsistent("cofactor is not squarefree");
    }
    if cofactor.evaluate(eta) == 0 {
        return inconsistent("eta has multiplicity above two");
    }
    let mut factors = fp_factor(&cofactor)?;
    factors.push((lin, 2));
    Ok(ShapeVerdict::RamifiedShape {
        eta,
        shape: FactorShape::from_factors(&factors),
    })
}
