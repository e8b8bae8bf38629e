use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::{IntPolynomial, Polynomial, RatPolynomial};
use crate::error::{Error, Result};

/// Result of [`IntPolynomial::exact_div`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DivOutcome {
    Exact(IntPolynomial),
    /// The divisor does not divide the dividend in `Z[x]`.
    Inexact,
}

impl IntPolynomial {
    /// gcd of the coefficients (nonnegative; zero for the zero polynomial).
    pub fn content(&self) -> BigInt {
        self.coeffs
            .iter()
            .fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    /// `self / content`, normalized to a positive leading coefficient.
    pub fn primitive_part(&self) -> IntPolynomial {
        if self.is_zero() {
            return self.clone();
        }
        let mut c = self.content();
        if self.leading().unwrap().is_negative() {
            c = -c;
        }
        Polynomial::new(self.coeffs.iter().map(|a| a / &c).collect())
    }

    pub fn div_scalar_exact(&self, c: &BigInt) -> IntPolynomial {
        Polynomial::new(
            self.coeffs
                .iter()
                .map(|a| {
                    debug_assert!((a % c).is_zero());
                    a / c
                })
                .collect(),
        )
    }

    /// Pseudo-remainder: `lc(g)^(deg f − deg g + 1) · f mod g`.
    pub fn pseudo_rem(&self, g: &IntPolynomial) -> IntPolynomial {
        let dg = g.degree().expect("pseudo_rem by zero polynomial");
        let Some(df) = self.degree() else {
            return IntPolynomial::zero();
        };
        if df < dg {
            return self.clone();
        }
        let lc = g.leading().unwrap();
        let mut r = self.coeffs.clone();
        let mut steps = df - dg + 1;
        while r.len() > dg && !r.is_empty() {
            let lead = r.pop().unwrap();
            let shift = r.len() - dg;
            for c in r.iter_mut() {
                *c *= lc;
            }
            for (i, gc) in g.coeffs[..dg].iter().enumerate() {
                r[shift + i] -= &lead * gc;
            }
            steps -= 1;
            while r.last().is_some_and(|c| c.is_zero()) {
                r.pop();
            }
        }
        if steps > 0 {
            let factor = num_traits::pow(lc.clone(), steps);
            for c in r.iter_mut() {
                *c *= &factor;
            }
        }
        Polynomial::new(r)
    }

    /// Division in `Z[x]`: succeeds only when `g` divides `self` with an
    /// integral quotient.
    pub fn exact_div(&self, g: &IntPolynomial) -> Result<DivOutcome> {
        let Some(dg) = g.degree() else {
            return Err(Error::Zero { op: "exact_div" });
        };
        let Some(df) = self.degree() else {
            return Ok(DivOutcome::Exact(IntPolynomial::zero()));
        };
        if df < dg {
            return Ok(DivOutcome::Inexact);
        }
        let lc = g.leading().unwrap();
        let mut r = self.coeffs.clone();
        let mut q = vec![BigInt::zero(); df - dg + 1];
        for k in (0..=df - dg).rev() {
            let top = &r[k + dg];
            if top.is_zero() {
                continue;
            }
            let (quot, rem) = top.div_rem(lc);
            if !rem.is_zero() {
                return Ok(DivOutcome::Inexact);
            }
            for (i, gc) in g.coeffs.iter().enumerate() {
                r[k + i] -= &quot * gc;
            }
            q[k] = quot;
        }
        if r.iter().any(|c| !c.is_zero()) {
            return Ok(DivOutcome::Inexact);
        }
        Ok(DivOutcome::Exact(Polynomial::new(q)))
    }

    pub fn to_rational(&self) -> RatPolynomial {
        Polynomial::new(
            self.coeffs
                .iter()
                .map(|c| BigRational::from_integer(c.clone()))
                .collect(),
        )
    }

    /// Evaluate at a rational point with a single final reduction.
    pub fn eval_rational(&self, x: &BigRational) -> BigRational {
        if x.denom().is_one() {
            return BigRational::from_integer(self.evaluate(x.numer()));
        }
        let Some(d) = self.degree() else {
            return BigRational::zero();
        };
        // Σ cᵢ pⁱ q^(d−i) / q^d, accumulated by homogeneous Horner.
        let (p, q) = (x.numer(), x.denom());
        let mut acc = BigInt::zero();
        let mut q_pow = BigInt::one();
        for c in self.coeffs.iter().rev() {
            acc = acc * p + c * &q_pow;
            q_pow *= q;
        }
        let denom = num_traits::pow(q.clone(), d);
        BigRational::new(acc, denom)
    }

    /// gcd in `Z[x]` by the primitive remainder sequence; the result is
    /// primitive with positive leading coefficient.
    pub fn gcd(&self, other: &IntPolynomial) -> IntPolynomial {
        let (mut a, mut b) = (self.primitive_part(), other.primitive_part());
        if a.degree() < b.degree() {
            std::mem::swap(&mut a, &mut b);
        }
        let content = self.content().gcd(&other.content());
        while !b.is_zero() {
            let r = a.pseudo_rem(&b);
            a = b;
            b = r.primitive_part();
        }
        if a.degree() == Some(0) {
            return Polynomial::constant(if content.is_zero() { BigInt::one() } else { content });
        }
        a
    }
}
