//! Polynomials over prime fields `F_p` with `p < 2^62`.

mod factor;
mod shape;

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::ToPrimitive;

pub use factor::{FactorShape, cycle_type, ddf, edf, fp_factor, is_irreducible, squarefree_factorization};
pub use shape::{ShapeVerdict, shape_check};

use crate::arith::is_prime_u64;
use crate::arith::primes::{mul_mod, pow_mod};
use crate::error::{Error, Result};
use crate::poly::IntPolynomial;

/// Exclusive upper bound on supported moduli.
pub const MODULUS_LIMIT: u64 = 1 << 62;

const ROOT_SEED: u64 = 0x5eed;

pub fn check_modulus(p: u64) -> Result<()> {
    if p >= MODULUS_LIMIT {
        return Err(Error::InvalidParameters(format!("modulus {p} exceeds 2^62")));
    }
    if !is_prime_u64(p) {
        return Err(Error::NotPrime(BigInt::from(p)));
    }
    Ok(())
}

/// Reduce a big integer into `[0, p)`.
pub fn reduce(n: &BigInt, p: u64) -> u64 {
    n.mod_floor(&BigInt::from(p)).to_u64().unwrap()
}

pub fn inv_mod(a: u64, p: u64) -> u64 {
    debug_assert!(a % p != 0);
    pow_mod(a, p - 2, p)
}

/// Dense polynomial over `F_p`, coefficients reduced, constant term first.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FpPolynomial {
    p: u64,
    coeffs: Vec<u64>,
}

impl FpPolynomial {
    /// Builds from coefficients already in `[0, p)` or larger (reduced here).
    /// The modulus is assumed validated by the caller.
    pub fn new(p: u64, coeffs: Vec<u64>) -> Self {
        let mut out = Self {
            p,
            coeffs: coeffs.into_iter().map(|c| c % p).collect(),
        };
        out.trim();
        out
    }

    pub fn from_signed(p: u64, coeffs: &[i64]) -> Self {
        Self::new(
            p,
            coeffs.iter().map(|&c| c.rem_euclid(p as i64) as u64).collect(),
        )
    }

    pub fn from_int(f: &IntPolynomial, p: u64) -> Result<Self> {
        check_modulus(p)?;
        Ok(Self::new(p, f.coeffs().iter().map(|c| reduce(c, p)).collect()))
    }

    pub fn zero(p: u64) -> Self {
        Self { p, coeffs: Vec::new() }
    }

    pub fn one(p: u64) -> Self {
        Self::new(p, vec![1])
    }

    pub fn x(p: u64) -> Self {
        Self::new(p, vec![0, 1])
    }

    /// `x − a`.
    pub fn linear(p: u64, a: u64) -> Self {
        Self::new(p, vec![(p - a % p) % p, 1])
    }

    fn trim(&mut self) {
        while self.coeffs.last() == Some(&0) {
            self.coeffs.pop();
        }
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs == [1]
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<u64> {
        self.coeffs.last().copied()
    }

    pub fn monic(&self) -> Self {
        match self.leading() {
            None | Some(1) => self.clone(),
            Some(lc) => self.scale(inv_mod(lc, self.p)),
        }
    }

    pub fn scale(&self, c: u64) -> Self {
        Self::new(self.p, self.coeffs.iter().map(|&a| mul_mod(a, c, self.p)).collect())
    }

    pub fn evaluate(&self, x: u64) -> u64 {
        self.coeffs
            .iter()
            .rev()
            .fold(0, |acc, &c| (mul_mod(acc, x, self.p) + c) % self.p)
    }

    pub fn derivative(&self) -> Self {
        let p = self.p;
        Self::new(
            p,
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, &c)| mul_mod(c, i as u64 % p, p))
                .collect(),
        )
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let get = |v: &[u64], i: usize| v.get(i).copied().unwrap_or(0);
        Self::new(
            self.p,
            (0..n)
                .map(|i| (get(&self.coeffs, i) + get(&other.coeffs, i)) % self.p)
                .collect(),
        )
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let get = |v: &[u64], i: usize| v.get(i).copied().unwrap_or(0);
        Self::new(
            self.p,
            (0..n)
                .map(|i| (get(&self.coeffs, i) + self.p - get(&other.coeffs, i)) % self.p)
                .collect(),
        )
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero(self.p);
        }
        let p = self.p as u128;
        // Products of two residues below 2^62 fit comfortably in u128.
        let mut acc = vec![0u128; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                let slot = &mut acc[i + j];
                *slot = (*slot + a as u128 * b as u128) % p;
            }
        }
        Self::new(self.p, acc.into_iter().map(|c| c as u64).collect())
    }

    /// Euclidean division; `g` must be nonzero.
    pub fn div_rem(&self, g: &Self) -> Result<(Self, Self)> {
        let Some(dg) = g.degree() else {
            return Err(Error::Zero { op: "fp div_rem" });
        };
        let p = self.p;
        let Some(df) = self.degree() else {
            return Ok((Self::zero(p), Self::zero(p)));
        };
        if df < dg {
            return Ok((Self::zero(p), self.clone()));
        }
        let inv = inv_mod(g.leading().unwrap(), p);
        let mut r = self.coeffs.clone();
        let mut q = vec![0u64; df - dg + 1];
        for k in (0..=df - dg).rev() {
            let c = mul_mod(r[k + dg], inv, p);
            if c == 0 {
                continue;
            }
            q[k] = c;
            for (i, &gc) in g.coeffs.iter().enumerate() {
                r[k + i] = (r[k + i] + p - mul_mod(c, gc, p)) % p;
            }
        }
        Ok((Self::new(p, q), Self::new(p, r)))
    }

    pub fn rem(&self, g: &Self) -> Self {
        self.div_rem(g).expect("nonzero modulus").1
    }

    /// Quotient when `g` divides `self` exactly.
    pub fn div_exact(&self, g: &Self) -> Option<Self> {
        let (q, r) = self.div_rem(g).ok()?;
        r.is_zero().then_some(q)
    }

    /// Monic gcd (zero only when both inputs are zero).
    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn mul_mod(&self, other: &Self, m: &Self) -> Self {
        self.mul(other).rem(m)
    }

    /// `self^e mod m`.
    pub fn pow_mod(&self, e: &BigUint, m: &Self) -> Self {
        let mut acc = Self::one(self.p).rem(m);
        let base = self.rem(m);
        for i in (0..e.bits()).rev() {
            acc = acc.mul_mod(&acc, m);
            if e.bit(i) {
                acc = acc.mul_mod(&base, m);
            }
        }
        acc
    }

    pub fn pow_mod_u64(&self, e: u64, m: &Self) -> Self {
        self.pow_mod(&BigUint::from(e), m)
    }

    /// Squarefree over `F_p`: `gcd(f, f′) = 1`. A nonconstant `f` with
    /// `f′ = 0` is a p-th power and therefore not squarefree.
    pub fn is_squarefree(&self) -> bool {
        match self.degree() {
            None => false,
            Some(0) => true,
            Some(_) => {
                let d = self.derivative();
                !d.is_zero() && self.gcd(&d).is_one()
            }
        }
    }

    /// Roots in `F_p` as a sorted list, via `gcd(f, x^p − x)`.
    pub fn roots(&self) -> Result<Vec<u64>> {
        if self.is_zero() {
            return Err(Error::Zero { op: "roots" });
        }
        let f = self.monic();
        if f.degree() == Some(0) {
            return Ok(Vec::new());
        }
        let xp = Self::x(self.p).pow_mod_u64(self.p, &f);
        let g = f.gcd(&xp.sub(&Self::x(self.p)));
        let mut out: Vec<u64> = if self.p == 2 {
            (0..2).filter(|&a| g.evaluate(a) == 0).collect()
        } else {
            edf(&g, 1, ROOT_SEED)?
                .into_iter()
                .map(|l| (self.p - l.coeffs[0]) % self.p)
                .collect()
        };
        out.sort_unstable();
        Ok(out)
    }

    /// Evaluate as a polynomial in `Z[x]` with representatives in `[0, p)`.
    pub fn lift(&self) -> IntPolynomial {
        IntPolynomial::new(self.coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }
}

impl fmt::Display for FpPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}) mod {}", self.lift(), self.p)
    }
}
