//! Primality testing and small-prime utilities.

use num_bigint::{BigInt, BigUint, RandBigInt};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Miller-Rabin bases that are deterministic for every 64-bit input.
const DETERMINISTIC_BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];

pub const DEFAULT_MR_ROUNDS: u32 = 40;

#[inline]
pub fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Deterministic primality for 64-bit integers.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &p in &DETERMINISTIC_BASES {
        if n % p == 0 {
            return n == p;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for &a in &DETERMINISTIC_BASES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Outcome of a primality test on an arbitrary-size integer.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Primality {
    Composite,
    /// Proven prime (the input fits in 64 bits).
    Prime,
    /// Passed the configured number of Miller-Rabin rounds.
    ProbablePrime,
}

impl Primality {
    pub fn is_prime(self) -> bool {
        !matches!(self, Primality::Composite)
    }
}

/// Primality of `n`: deterministic below 2^64, `rounds` seeded Miller-Rabin
/// rounds above.
pub fn primality(n: &BigInt, rounds: u32, seed: u64) -> Primality {
    if n.sign() == num_bigint::Sign::Minus {
        return Primality::Composite;
    }
    if let Some(small) = n.to_u64() {
        return if is_prime_u64(small) {
            Primality::Prime
        } else {
            Primality::Composite
        };
    }
    let n = n.magnitude();
    for &p in &DETERMINISTIC_BASES {
        if (n % p).is_zero() {
            return Primality::Composite;
        }
    }
    let one = BigUint::one();
    let n_minus_1 = n - &one;
    let s = n_minus_1.trailing_zeros().unwrap_or(0);
    let d = &n_minus_1 >> s;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let two = BigUint::from(2u32);
    for round in 0..rounds.max(1) {
        let a = if round == 0 {
            two.clone()
        } else {
            rng.gen_biguint_range(&two, &n_minus_1)
        };
        let mut x = a.modpow(&d, n);
        if x == one || x == n_minus_1 {
            continue;
        }
        let mut witness = true;
        for _ in 1..s {
            x = (&x * &x) % n;
            if x == n_minus_1 {
                witness = false;
                break;
            }
        }
        if witness {
            return Primality::Composite;
        }
    }
    Primality::ProbablePrime
}

pub fn is_prime(n: &BigInt) -> bool {
    primality(n, DEFAULT_MR_ROUNDS, 0x5eed).is_prime()
}

/// All primes `<= limit` by the sieve of Eratosthenes.
pub fn primes_up_to(limit: u64) -> Vec<u64> {
    if limit < 2 {
        return Vec::new();
    }
    let n = limit as usize;
    let mut composite = vec![false; n + 1];
    let mut out = Vec::new();
    for i in 2..=n {
        if composite[i] {
            continue;
        }
        out.push(i as u64);
        let mut j = i * i;
        while j <= n {
            composite[j] = true;
            j += i;
        }
    }
    out
}

/// Primes in the closed interval `[lo, hi]`.
pub fn primes_in(lo: u64, hi: u64) -> Vec<u64> {
    primes_up_to(hi).into_iter().filter(|&p| p >= lo).collect()
}

pub(crate) fn gcd_u64(a: u64, b: u64) -> u64 {
    a.gcd(&b)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_primes_agree_with_sieve() {
        let sieve = primes_up_to(10_000);
        let tested: Vec<u64> = (0..=10_000).filter(|&n| is_prime_u64(n)).collect();
        assert_eq!(sieve, tested);
    }

    #[test]
    fn strong_pseudoprimes_rejected() {
        // 3215031751 is a strong pseudoprime to bases 2, 3, 5 and 7.
        assert!(!is_prime_u64(3_215_031_751));
        assert!(!is_prime_u64(561));
        assert!(is_prime_u64(18_446_744_073_709_551_557));
    }

    #[test]
    fn big_primality() {
        let m127 = (BigInt::one() << 127) - 1;
        assert_eq!(primality(&m127, 20, 1), Primality::ProbablePrime);
        let composite = &m127 * BigInt::from(3);
        assert_eq!(primality(&composite, 20, 1), Primality::Composite);
        let m89 = (BigInt::one() << 89) - 1;
        assert_eq!(primality(&(&m89 * &m127), 20, 1), Primality::Composite);
    }
}
