//! Dense univariate polynomials over the integers and rationals.

mod disc;
mod int;
mod rat;
mod resultant;
mod serde_impl;
mod squarefree;

use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

pub use disc::{
    CriticalPoint, Trinomial, critical_points, disc_oracle, discriminant, iterate_disc_formula,
    trinomial_disc,
};
pub use int::DivOutcome;
pub use rat::rat_poly;
pub use resultant::resultant;
pub use squarefree::{
    count_simple_roots, modular_squarefree_certificate, squarefree_decomposition,
};

use crate::error::{Error, Result};

/// Default cap on the degree of materialized iterates (3^8).
pub const DEFAULT_DEGREE_CAP: usize = 6561;

/// Coefficient rings usable in [`Polynomial`].
pub trait Coeff:
    Clone
    + fmt::Debug
    + fmt::Display
    + PartialEq
    + Zero
    + One
    + Neg<Output = Self>
    + for<'a> AddAssign<&'a Self>
    + for<'a> SubAssign<&'a Self>
    + for<'a> MulAssign<&'a Self>
{
    fn mul_ref(&self, rhs: &Self) -> Self;
    fn from_u64(n: u64) -> Self;
    fn is_negative(&self) -> bool;
}

impl Coeff for BigInt {
    fn mul_ref(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn from_u64(n: u64) -> Self {
        BigInt::from(n)
    }
    fn is_negative(&self) -> bool {
        num_traits::Signed::is_negative(self)
    }
}

impl Coeff for BigRational {
    fn mul_ref(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn from_u64(n: u64) -> Self {
        BigRational::from_integer(BigInt::from(n))
    }
    fn is_negative(&self) -> bool {
        num_traits::Signed::is_negative(self)
    }
}

/// Dense polynomial; `coeffs[i]` is the coefficient of `x^i`. The leading
/// coefficient is nonzero unless the polynomial is zero (empty vector).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Polynomial<T> {
    coeffs: Vec<T>,
}

pub type IntPolynomial = Polynomial<BigInt>;
pub type RatPolynomial = Polynomial<BigRational>;

impl<T: Coeff> Polynomial<T> {
    pub fn new(mut coeffs: Vec<T>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(T::one())
    }

    pub fn constant(c: T) -> Self {
        Self::new(vec![c])
    }

    /// The monomial `c·x^k`.
    pub fn monomial(c: T, k: usize) -> Self {
        let mut coeffs = vec![T::zero(); k + 1];
        coeffs[k] = c;
        Self::new(coeffs)
    }

    pub fn x() -> Self {
        Self::monomial(T::one(), 1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<T> {
        self.coeffs
    }

    pub fn coeff(&self, i: usize) -> T {
        self.coeffs.get(i).cloned().unwrap_or_else(T::zero)
    }

    pub fn leading(&self) -> Option<&T> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(|c| c.is_one())
    }

    pub fn scale(&self, c: &T) -> Self {
        Self::new(self.coeffs.iter().map(|a| a.mul_ref(c)).collect())
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c.mul_ref(&T::from_u64(i as u64)))
                .collect(),
        )
    }

    /// Horner evaluation.
    pub fn evaluate(&self, x: &T) -> T {
        let mut acc = T::zero();
        for c in self.coeffs.iter().rev() {
            acc *= x;
            acc += c;
        }
        acc
    }

    /// `self(other(x))`.
    pub fn compose(&self, other: &Self) -> Self {
        let mut acc = Self::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * other) + &Self::constant(c.clone());
        }
        acc
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// The n-th iterate `f∘…∘f`, refusing results above `degree_cap`.
    pub fn iterate(&self, n: u32, degree_cap: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidParameters("iterate: n must be >= 1".into()));
        }
        let d = self.degree().unwrap_or(0);
        let mut deg = d;
        for level in 2..=n {
            deg = deg.saturating_mul(d);
            if deg > degree_cap {
                return Err(Error::Capacity {
                    what: "iterate degree",
                    limit: degree_cap,
                    reached: level as usize - 1,
                });
            }
        }
        if d > degree_cap {
            return Err(Error::Capacity {
                what: "iterate degree",
                limit: degree_cap,
                reached: 0,
            });
        }
        let mut acc = self.clone();
        for _ in 1..n {
            acc = self.compose(&acc);
        }
        Ok(acc)
    }

    /// Iterate the map `x ↦ self(x)` from `x0` without building `selfⁿ`.
    pub fn iterate_eval(&self, n: u32, x0: &T) -> T {
        let mut x = x0.clone();
        for _ in 0..n {
            x = self.evaluate(&x);
        }
        x
    }
}

impl<T: Coeff> Add for &Polynomial<T> {
    type Output = Polynomial<T>;
    fn add(self, rhs: Self) -> Polynomial<T> {
        let (long, short) = if self.coeffs.len() >= rhs.coeffs.len() {
            (self, rhs)
        } else {
            (rhs, self)
        };
        let mut out = long.coeffs.clone();
        for (o, c) in out.iter_mut().zip(&short.coeffs) {
            *o += c;
        }
        Polynomial::new(out)
    }
}

impl<T: Coeff> Sub for &Polynomial<T> {
    type Output = Polynomial<T>;
    fn sub(self, rhs: Self) -> Polynomial<T> {
        let mut out = self.coeffs.clone();
        if out.len() < rhs.coeffs.len() {
            out.resize(rhs.coeffs.len(), T::zero());
        }
        for (o, c) in out.iter_mut().zip(&rhs.coeffs) {
            *o -= c;
        }
        Polynomial::new(out)
    }
}

impl<T: Coeff> Mul for &Polynomial<T> {
    type Output = Polynomial<T>;
    fn mul(self, rhs: Self) -> Polynomial<T> {
        if self.is_zero() || rhs.is_zero() {
            return Polynomial::zero();
        }
        let mut out = vec![T::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] += &a.mul_ref(b);
                }
            }
        }
        Polynomial::new(out)
    }
}

impl<T: Coeff> Neg for &Polynomial<T> {
    type Output = Polynomial<T>;
    fn neg(self) -> Polynomial<T> {
        Polynomial::new(self.coeffs.iter().map(|c| -c.clone()).collect())
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl<T: Coeff> $tr for Polynomial<T> {
            type Output = Polynomial<T>;
            fn $m(self, rhs: Self) -> Polynomial<T> {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl<T: Coeff> fmt::Display for Polynomial<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = if neg { -c.clone() } else { c.clone() };
            if first {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            first = false;
            let show_coeff = !mag.is_one() || i == 0;
            if show_coeff {
                write!(f, "{mag}")?;
                if i > 0 {
                    f.write_str("*")?;
                }
            }
            match i {
                0 => {}
                1 => f.write_str("x")?,
                _ => write!(f, "x^{i}")?,
            }
        }
        Ok(())
    }
}

impl<T: Coeff> fmt::Debug for Polynomial<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial({self})")
    }
}

/// Build an integer polynomial from small coefficients, constant term first.
pub fn int_poly(coeffs: &[i64]) -> IntPolynomial {
    Polynomial::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
}
