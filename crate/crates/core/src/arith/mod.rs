//! Exact integer and rational primitives: square roots, valuations,
//! support stripping, Möbius, Bézout and heights.

pub mod factor;
pub mod primes;

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub use factor::{CofactorStatus, FactorBudget, FactorMap, factor};
pub use primes::{Primality, is_prime, is_prime_u64, primality, primes_in, primes_up_to};

use crate::error::{Error, Result};

/// ⌊√n⌋ for `n ≥ 0`.
pub fn isqrt(n: &BigInt) -> Result<BigInt> {
    if n.is_negative() {
        return Err(Error::Negative { op: "isqrt" });
    }
    Ok(n.sqrt())
}

/// Returns the root when `n` is a perfect square.
pub fn square_root(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    // Quadratic residue filter mod 64 rejects most non-squares cheaply.
    let low = (n.magnitude() % 64u32).to_u32().unwrap_or(0);
    const RESIDUES: u64 = {
        let mut mask = 0u64;
        let mut i = 0;
        while i < 64 {
            mask |= 1 << ((i * i) % 64);
            i += 1;
        }
        mask
    };
    if RESIDUES >> low & 1 == 0 {
        return None;
    }
    let r = n.sqrt();
    (&r * &r == *n).then_some(r)
}

pub fn is_perfect_square(n: &BigInt) -> bool {
    square_root(n).is_some()
}

/// Root of a rational square, in lowest terms.
pub fn rational_square_root(q: &BigRational) -> Option<BigRational> {
    let num = square_root(q.numer())?;
    let den = square_root(q.denom())?;
    Some(BigRational::new(num, den))
}

/// p-adic valuation; `Infinite` for zero.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Valuation {
    Finite(i64),
    Infinite,
}

impl Valuation {
    pub fn finite(self) -> Option<i64> {
        match self {
            Valuation::Finite(v) => Some(v),
            Valuation::Infinite => None,
        }
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Valuation::Finite(v) => write!(f, "{v}"),
            Valuation::Infinite => f.write_str("inf"),
        }
    }
}

fn require_prime(p: &BigInt) -> Result<()> {
    if is_prime(p) {
        Ok(())
    } else {
        Err(Error::NotPrime(p.clone()))
    }
}

/// Exponent of the prime `p` in nonzero `n`, without a primality check.
pub(crate) fn raw_valuation(n: &BigInt, p: &BigInt) -> u64 {
    debug_assert!(!n.is_zero());
    let mut e = 0;
    // Square-and-divide keeps the division count logarithmic in e.
    let mut rest = n.clone();
    let mut powers = vec![p.clone()];
    loop {
        let last = powers.last().unwrap();
        let (q, r) = rest.div_rem(last);
        if !r.is_zero() {
            break;
        }
        rest = q;
        e += 1u64 << (powers.len() - 1);
        let sq = last * last;
        powers.push(sq);
    }
    powers.pop();
    while let Some(pk) = powers.pop() {
        let (q, r) = rest.div_rem(&pk);
        if r.is_zero() {
            rest = q;
            e += 1u64 << powers.len();
        }
    }
    e
}

pub fn valuation(n: &BigInt, p: &BigInt) -> Result<Valuation> {
    require_prime(p)?;
    if n.is_zero() {
        return Ok(Valuation::Infinite);
    }
    Ok(Valuation::Finite(raw_valuation(n, p) as i64))
}

pub fn valuation_rational(q: &BigRational, p: &BigInt) -> Result<Valuation> {
    require_prime(p)?;
    if q.is_zero() {
        return Ok(Valuation::Infinite);
    }
    let up = raw_valuation(q.numer(), p) as i64;
    let down = raw_valuation(q.denom(), p) as i64;
    Ok(Valuation::Finite(up - down))
}

/// A finite set of distinct primes.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SupportSet(BTreeSet<BigInt>);

impl SupportSet {
    pub fn new<I, T>(primes: I) -> Result<Self>
    where
        I: IntoIterator<Item = T>,
        T: Into<BigInt>,
    {
        let mut set = BTreeSet::new();
        for p in primes {
            let p = p.into();
            require_prime(&p)?;
            set.insert(p);
        }
        Ok(Self(set))
    }

    /// Supp(n): the primes dividing nonzero `n`. Fails when `n` cannot be
    /// fully factored within the default budget.
    pub fn of(n: &BigInt) -> Result<Self> {
        let map = factor(n, &FactorBudget::default())?;
        if !map.is_complete() {
            return Err(Error::Unsupported(format!("could not factor {n}")));
        }
        Ok(Self(map.factors.into_iter().map(|(p, _)| p).collect()))
    }

    pub fn iter(&self) -> impl Iterator<Item = &BigInt> {
        self.0.iter()
    }

    pub fn contains(&self, p: &BigInt) -> bool {
        self.0.contains(p)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn union(&self, other: &SupportSet) -> SupportSet {
        SupportSet(self.0.union(&other.0).cloned().collect())
    }
}

/// Divide every prime of `support` out of `n`. Returns the stripped value
/// (sign preserved) and the removed part.
pub fn strip_support(n: &BigInt, support: &SupportSet) -> Result<(BigInt, FactorMap)> {
    if n.is_zero() {
        return Err(Error::Zero { op: "strip_support" });
    }
    let mut rest = n.clone();
    let mut removed = FactorMap::one();
    for p in support.iter() {
        let e = raw_valuation(&rest, p);
        if e > 0 {
            rest /= num_traits::pow(p.clone(), e as usize);
            removed.factors.push((p.clone(), e as u32));
        }
    }
    Ok((rest, removed))
}

/// Möbius function μ(n).
pub fn mobius(n: u64) -> Result<i8> {
    if n == 0 {
        return Err(Error::InvalidParameters("mobius: n must be >= 1".into()));
    }
    let mut n = n;
    let mut sign = 1i8;
    let mut p = 2u64;
    while p * p <= n {
        if n % p == 0 {
            n /= p;
            if n % p == 0 {
                return Ok(0);
            }
            sign = -sign;
        }
        p += 1;
    }
    if n > 1 {
        sign = -sign;
    }
    Ok(sign)
}

pub fn divisors(n: u64) -> Vec<u64> {
    (1..=n).filter(|d| n % d == 0).collect()
}

/// Bézout coefficients: `a·x + b·y = g = gcd(a, b) > 0`.
pub fn bezout(a: &BigInt, b: &BigInt) -> Result<(BigInt, BigInt, BigInt)> {
    if a.is_zero() && b.is_zero() {
        return Err(Error::Zero { op: "bezout" });
    }
    let ext = a.extended_gcd(b);
    if ext.gcd.sign() == Sign::Minus {
        Ok((-ext.gcd, -ext.x, -ext.y))
    } else {
        Ok((ext.gcd, ext.x, ext.y))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Height {
    /// H(a/b) = max(|a|, b) in lowest terms.
    pub multiplicative: BigInt,
    /// h = ln H.
    pub logarithmic: f64,
}

pub fn height(q: &BigRational) -> Height {
    let h = if q.is_zero() {
        BigInt::one()
    } else {
        q.numer().abs().max(q.denom().clone())
    };
    let logarithmic = ln_big(&h);
    Height {
        multiplicative: h,
        logarithmic,
    }
}

/// Natural log of a positive integer, accurate to f64 precision.
pub fn ln_big(n: &BigInt) -> f64 {
    let bits = n.bits();
    if bits <= 1000 {
        return n.to_f64().unwrap_or(f64::INFINITY).ln();
    }
    let shift = bits - 64;
    let top = (n >> shift).to_f64().unwrap();
    top.ln() + shift as f64 * std::f64::consts::LN_2
}

/// Approximate number of decimal digits of `n`.
pub fn decimal_digits(n: &BigInt) -> usize {
    ((n.bits() as f64) * std::f64::consts::LOG10_2).ceil() as usize
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn big(n: i64) -> BigInt {
        BigInt::from(n)
    }

    fn rat(a: i64, b: i64) -> BigRational {
        BigRational::new(big(a), big(b))
    }

    #[test]
    fn isqrt_examples() {
        assert_eq!(isqrt(&big(0)).unwrap(), big(0));
        assert_eq!(isqrt(&big(10813)).unwrap(), big(103));
        assert_eq!(isqrt(&big(8281)).unwrap(), big(91));
        assert!(matches!(isqrt(&big(-1)), Err(Error::Negative { .. })));
    }

    #[test]
    fn square_examples() {
        assert_eq!(square_root(&big(8281)), Some(big(91)));
        assert!(!is_perfect_square(&big(13)));
        assert!(!is_perfect_square(&big(-4)));
        assert!(is_perfect_square(&big(0)));
        assert_eq!(rational_square_root(&rat(8281, 9)), Some(rat(91, 3)));
    }

    #[test]
    fn valuation_examples() {
        let q = rat(1183, 27);
        assert_eq!(valuation_rational(&q, &big(3)).unwrap(), Valuation::Finite(-3));
        assert_eq!(valuation_rational(&q, &big(7)).unwrap(), Valuation::Finite(1));
        assert_eq!(valuation(&big(0), &big(5)).unwrap(), Valuation::Infinite);
        assert!(matches!(valuation(&big(12), &big(4)), Err(Error::NotPrime(_))));
        assert_eq!(valuation(&(BigInt::one() << 1000), &big(2)).unwrap(), Valuation::Finite(1000));
    }

    #[test]
    fn strip_examples() {
        let s = SupportSet::new([2, 3]).unwrap();
        let (r, m) = strip_support(&big(26), &s).unwrap();
        assert_eq!(r, big(13));
        assert_eq!(m.factors, vec![(big(2), 1)]);
        let (r, m) = strip_support(&big(21626), &s).unwrap();
        assert_eq!(r, big(10813));
        assert_eq!(m.factors, vec![(big(2), 1)]);
        let s2 = SupportSet::new([2]).unwrap();
        let (r, m) = strip_support(&big(64), &s2).unwrap();
        assert_eq!(r, big(1));
        assert_eq!(m.factors, vec![(big(2), 6)]);
        assert!(strip_support(&big(0), &s2).is_err());
        assert!(SupportSet::new([2, 4]).is_err());
    }

    #[test]
    fn mobius_examples() {
        assert_eq!(mobius(1).unwrap(), 1);
        assert_eq!(mobius(6).unwrap(), 1);
        assert_eq!(mobius(12).unwrap(), 0);
        assert_eq!(mobius(7).unwrap(), -1);
        assert!(mobius(0).is_err());
    }

    #[test]
    fn mobius_divisor_sums() {
        for n in 1..=10_000u64 {
            let s: i64 = divisors(n).into_iter().map(|d| mobius(d).unwrap() as i64).sum();
            assert_eq!(s, if n == 1 { 1 } else { 0 }, "n = {n}");
        }
    }

    #[test]
    fn bezout_examples() {
        for (a, b) in [(3, 2), (5, 4), (7, 6)] {
            let (g, x, y) = bezout(&big(a), &big(b)).unwrap();
            assert_eq!((g, x, y), (big(1), big(1), big(-1)));
        }
        let (g, x, y) = bezout(&big(-12), &big(18)).unwrap();
        assert_eq!(g, big(6));
        assert_eq!(big(-12) * x + big(18) * y, big(6));
        assert!(bezout(&big(0), &big(0)).is_err());
    }

    #[test]
    fn height_examples() {
        assert_eq!(height(&rat(-18, 1)).multiplicative, big(18));
        assert_eq!(height(&rat(0, 1)).multiplicative, big(1));
        assert_eq!(height(&rat(-14, 3)).multiplicative, big(14));
        assert_eq!(height(&rat(-9, 1)).multiplicative, big(9));
        assert!((height(&rat(-14, 3)).logarithmic - 14f64.ln()).abs() < 1e-12);
        let huge = BigInt::one() << 5000;
        assert!((ln_big(&huge) - 5000.0 * std::f64::consts::LN_2).abs() < 1e-6);
    }

    proptest! {
        #[test]
        fn strip_reassembles(n in -1_000_000_000i64..1_000_000_000i64) {
            prop_assume!(n != 0);
            let s = SupportSet::new([2, 3, 5]).unwrap();
            let (r, removed) = strip_support(&big(n), &s).unwrap();
            prop_assert_eq!(&r * removed.value(), big(n));
            for p in s.iter() {
                prop_assert!(!(&r % p).is_zero());
            }
        }

        #[test]
        fn rational_valuation_is_difference(a in 1i64..1_000_000, b in 1i64..1_000_000, p in prop::sample::select(vec![2i64, 3, 5, 7, 11])) {
            let q = rat(a, b);
            let v = valuation_rational(&q, &big(p)).unwrap().finite().unwrap();
            let vn = valuation(q.numer(), &big(p)).unwrap().finite().unwrap();
            let vd = valuation(q.denom(), &big(p)).unwrap().finite().unwrap();
            prop_assert_eq!(v, vn - vd);
        }

        #[test]
        fn squares_and_neighbours(n in 1u64..10_000_000u64) {
            let sq = BigInt::from(n) * BigInt::from(n);
            prop_assert!(is_perfect_square(&sq));
            prop_assert!(!is_perfect_square(&(sq + 1)));
        }

        #[test]
        fn isqrt_brackets(n in 0u128..u128::MAX) {
            let n = BigInt::from(n);
            let r = isqrt(&n).unwrap();
            prop_assert!(&r * &r <= n);
            prop_assert!((&r + 1) * (&r + 1) > n);
        }
    }
}
