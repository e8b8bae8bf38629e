//! Resultants over `Z` by the subresultant pseudo-remainder sequence.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::IntPolynomial;

fn ipow(b: &BigInt, e: usize) -> BigInt {
    num_traits::pow(b.clone(), e)
}

/// `Res(f, g)`, with the Sylvester-matrix sign convention. Zero if either
/// input is zero.
pub fn resultant(f: &IntPolynomial, g: &IntPolynomial) -> BigInt {
    if f.is_zero() || g.is_zero() {
        return BigInt::zero();
    }
    let (mut a, mut b) = (f.clone(), g.clone());
    let mut sign = BigInt::one();
    let odd = |p: &IntPolynomial| p.degree().unwrap() % 2 == 1;
    if a.degree() < b.degree() {
        std::mem::swap(&mut a, &mut b);
        if odd(&a) && odd(&b) {
            sign = -sign;
        }
    }
    let da0 = a.degree().unwrap();
    let db0 = b.degree().unwrap();
    if db0 == 0 {
        return sign * ipow(b.leading().unwrap(), da0);
    }

    let ca = a.content();
    let cb = b.content();
    a = a.div_scalar_exact(&ca);
    b = b.div_scalar_exact(&cb);
    let t = ipow(&ca, db0) * ipow(&cb, da0);
    let mut g_s = BigInt::one();
    let mut h = BigInt::one();

    loop {
        let da = a.degree().unwrap();
        let db = b.degree().unwrap();
        let delta = da - db;
        if da % 2 == 1 && db % 2 == 1 {
            sign = -sign;
        }
        let r = a.pseudo_rem(&b);
        a = b;
        if r.is_zero() {
            return BigInt::zero();
        }
        b = r.div_scalar_exact(&(&g_s * ipow(&h, delta)));
        g_s = a.leading().unwrap().clone();
        h = match delta {
            0 => h,
            1 => g_s.clone(),
            _ => ipow(&g_s, delta) / ipow(&h, delta - 1),
        };
        if b.degree() == Some(0) {
            let da = a.degree().unwrap();
            let lb = b.leading().unwrap();
            let h_final = if da == 0 {
                BigInt::one()
            } else {
                ipow(lb, da) / ipow(&h, da - 1)
            };
            return sign * t * h_final;
        }
    }
}
