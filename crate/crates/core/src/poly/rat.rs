use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::{IntPolynomial, Polynomial, RatPolynomial};
use crate::error::{Error, Result};

impl RatPolynomial {
    /// Euclidean division in `Q[x]`.
    pub fn div_rem(&self, g: &RatPolynomial) -> Result<(RatPolynomial, RatPolynomial)> {
        let Some(dg) = g.degree() else {
            return Err(Error::Zero { op: "div_rem" });
        };
        let Some(df) = self.degree() else {
            return Ok((RatPolynomial::zero(), RatPolynomial::zero()));
        };
        if df < dg {
            return Ok((RatPolynomial::zero(), self.clone()));
        }
        let inv_lc = g.leading().unwrap().recip();
        let mut r = self.coeffs.clone();
        let mut q = vec![BigRational::zero(); df - dg + 1];
        for k in (0..=df - dg).rev() {
            let coef = &r[k + dg] * &inv_lc;
            if coef.is_zero() {
                continue;
            }
            for (i, gc) in g.coeffs.iter().enumerate() {
                r[k + i] -= &coef * gc;
            }
            q[k] = coef;
        }
        Ok((Polynomial::new(q), Polynomial::new(r)))
    }

    pub fn monic(&self) -> RatPolynomial {
        match self.leading() {
            None => self.clone(),
            Some(lc) => self.scale(&lc.recip()),
        }
    }

    /// Clear denominators: returns `(g, m)` with `g = m · self` integral and
    /// `m > 0` the lcm of the coefficient denominators.
    pub fn to_integer(&self) -> (IntPolynomial, BigInt) {
        let m = self
            .coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let g = Polynomial::new(
            self.coeffs
                .iter()
                .map(|c| c.numer() * (&m / c.denom()))
                .collect(),
        );
        (g, m)
    }

    /// Monic gcd in `Q[x]` (zero if both inputs are zero).
    pub fn gcd(&self, other: &RatPolynomial) -> RatPolynomial {
        if self.is_zero() {
            return other.monic();
        }
        if other.is_zero() {
            return self.monic();
        }
        let (a, _) = self.to_integer();
        let (b, _) = other.to_integer();
        a.gcd(&b).to_rational().monic()
    }

    /// Exact quotient in `Q[x]`, or `None` when the remainder is nonzero.
    pub fn div_exact(&self, g: &RatPolynomial) -> Result<Option<RatPolynomial>> {
        let (q, r) = self.div_rem(g)?;
        Ok(r.is_zero().then_some(q))
    }
}

/// Build a rational polynomial from `(numerator, denominator)` pairs.
pub fn rat_poly(coeffs: &[(i64, i64)]) -> RatPolynomial {
    Polynomial::new(
        coeffs
            .iter()
            .map(|&(a, b)| BigRational::new(BigInt::from(a), BigInt::from(b)))
            .collect(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::int_poly;

    #[test]
    fn division_reconstructs() {
        let f = rat_poly(&[(1, 2), (0, 1), (3, 1), (1, 5)]);
        let g = rat_poly(&[(-1, 1), (2, 3)]);
        let (q, r) = f.div_rem(&g).unwrap();
        assert_eq!(&(&q * &g) + &r, f);
        assert!(r.degree().unwrap_or(0) < g.degree().unwrap());
    }

    #[test]
    fn clearing_denominators() {
        let f = rat_poly(&[(1, 2), (1, 3)]);
        let (g, m) = f.to_integer();
        assert_eq!(g, int_poly(&[3, 2]));
        assert_eq!(m, BigInt::from(6));
    }

    #[test]
    fn rational_gcd_is_monic() {
        let a = (&int_poly(&[-1, 1]) * &int_poly(&[1, 3])).to_rational();
        let b = (&int_poly(&[1, 3]) * &int_poly(&[7, 0, 1])).to_rational();
        assert_eq!(a.gcd(&b), rat_poly(&[(1, 3), (1, 1)]));
    }
}
