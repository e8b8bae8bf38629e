//! Squarefree, distinct-degree and equal-degree factorization over `F_p`.

use num_bigint::BigUint;
use num_traits::One;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::{FpPolynomial, check_modulus, reduce};
use crate::error::{Error, Result};
use crate::poly::IntPolynomial;

/// Seed used by [`fp_factor`] so repeated runs split identically.
pub const DEFAULT_SEED: u64 = 0x0d0_1234;

/// Degrees and multiplicities of the irreducible factors of a polynomial.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactorShape {
    /// `(degree, multiplicity)` pairs, sorted.
    pub parts: Vec<(usize, u32)>,
}

impl FactorShape {
    pub fn from_factors(factors: &[(FpPolynomial, u32)]) -> Self {
        let mut parts: Vec<_> = factors
            .iter()
            .map(|(g, m)| (g.degree().unwrap_or(0), *m))
            .collect();
        parts.sort_unstable();
        Self { parts }
    }

    pub fn total_degree(&self) -> usize {
        self.parts.iter().map(|&(d, m)| d * m as usize).sum()
    }
}

fn pth_root(f: &FpPolynomial) -> FpPolynomial {
    let p = f.modulus() as usize;
    FpPolynomial::new(
        f.modulus(),
        f.coeffs().iter().step_by(p).copied().collect(),
    )
}

/// Yun-style squarefree factorization in characteristic `p`; returns monic,
/// pairwise coprime, squarefree factors with multiplicities.
pub fn squarefree_factorization(f: &FpPolynomial) -> Result<Vec<(FpPolynomial, u32)>> {
    if f.is_zero() {
        return Err(Error::Zero { op: "squarefree_factorization" });
    }
    let mut out = Vec::new();
    sqf_into(&f.monic(), 1, &mut out);
    out.sort_by(|a, b| (a.1, a.0.degree(), a.0.coeffs()).cmp(&(b.1, b.0.degree(), b.0.coeffs())));
    Ok(out)
}

fn sqf_into(f: &FpPolynomial, scale: u32, out: &mut Vec<(FpPolynomial, u32)>) {
    if f.degree().unwrap_or(0) == 0 {
        return;
    }
    let mut c = f.gcd(&f.derivative());
    let mut w = f.div_exact(&c).unwrap();
    let mut i = 1;
    while !w.is_one() {
        let y = w.gcd(&c);
        let z = w.div_exact(&y).unwrap();
        if !z.is_one() {
            out.push((z, i * scale));
        }
        i += 1;
        c = c.div_exact(&y).unwrap();
        w = y;
    }
    if !c.is_one() {
        sqf_into(&pth_root(&c), scale * f.modulus() as u32, out);
    }
}

/// Distinct-degree factorization of a monic squarefree polynomial: pairs
/// `(k, g_k)` with `g_k` the product of all degree-`k` irreducible factors.
pub fn ddf(f: &FpPolynomial) -> Vec<(usize, FpPolynomial)> {
    let p = f.modulus();
    let x = FpPolynomial::x(p);
    let mut rest = f.monic();
    let mut h = x.clone();
    let mut out = Vec::new();
    let mut k = 1;
    while rest.degree().unwrap_or(0) >= 2 * k {
        h = h.pow_mod_u64(p, &rest);
        let g = rest.gcd(&h.sub(&x));
        if !g.is_one() {
            rest = rest.div_exact(&g).unwrap();
            h = h.rem(&rest);
            out.push((k, g));
        }
        k += 1;
    }
    if rest.degree().unwrap_or(0) > 0 {
        out.push((rest.degree().unwrap(), rest));
    }
    out
}

fn random_poly(rng: &mut ChaCha8Rng, p: u64, below: usize) -> FpPolynomial {
    FpPolynomial::new(p, (0..below).map(|_| rng.gen_range(0..p)).collect())
}

/// Equal-degree splitting (Cantor–Zassenhaus; trace map in characteristic
/// 2) of a monic squarefree `g` whose irreducible factors all have degree `k`.
pub fn edf(g: &FpPolynomial, k: usize, seed: u64) -> Result<Vec<FpPolynomial>> {
    let n = g.degree().unwrap_or(0);
    if k == 0 || n % k != 0 {
        return Err(Error::InvalidParameters(format!(
            "degree {n} is not a multiple of {k}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    let mut stack = vec![g.monic()];
    let p = g.modulus();
    let exponent = (num_traits::pow(BigUint::from(p), k) - BigUint::one()) >> 1;
    while let Some(h) = stack.pop() {
        let dh = h.degree().unwrap_or(0);
        if dh == 0 {
            continue;
        }
        if dh == k {
            out.push(h);
            continue;
        }
        loop {
            let a = random_poly(&mut rng, p, dh);
            if a.degree().unwrap_or(0) == 0 {
                continue;
            }
            let b = if p == 2 {
                let mut t = a.clone();
                let mut term = a.clone();
                for _ in 1..k {
                    term = term.mul_mod(&term, &h);
                    t = t.add(&term);
                }
                t
            } else {
                a.pow_mod(&exponent, &h).sub(&FpPolynomial::one(p))
            };
            let d = h.gcd(&b);
            let dd = d.degree().unwrap_or(0);
            if dd > 0 && dd < dh {
                let other = h.div_exact(&d).unwrap();
                stack.push(d);
                stack.push(other);
                break;
            }
        }
    }
    out.sort_by(|a, b| a.coeffs().cmp(b.coeffs()));
    Ok(out)
}

/// Complete factorization into monic irreducibles with multiplicities,
/// split with [`DEFAULT_SEED`].
pub fn fp_factor(f: &FpPolynomial) -> Result<Vec<(FpPolynomial, u32)>> {
    fp_factor_seeded(f, DEFAULT_SEED)
}

pub fn fp_factor_seeded(f: &FpPolynomial, seed: u64) -> Result<Vec<(FpPolynomial, u32)>> {
    let mut out = Vec::new();
    for (part, mult) in squarefree_factorization(f)? {
        for (k, g) in ddf(&part) {
            for h in edf(&g, k, seed ^ (k as u64))? {
                out.push((h, mult));
            }
        }
    }
    out.sort_by(|a, b| {
        (a.0.degree(), a.0.coeffs(), a.1).cmp(&(b.0.degree(), b.0.coeffs(), b.1))
    });
    Ok(out)
}

/// Irreducibility via the distinct-degree signature.
pub fn is_irreducible(f: &FpPolynomial) -> bool {
    let Some(n) = f.degree() else { return false };
    if n == 0 || !f.is_squarefree() {
        return false;
    }
    matches!(ddf(f).as_slice(), [(k, _)] if *k == n)
}

/// Partition of `deg f` by the degrees of the irreducible factors of
/// `f mod p` (descending), or `None` when `f mod p` is not squarefree.
pub fn cycle_type(f: &IntPolynomial, p: u64) -> Result<Option<Vec<usize>>> {
    check_modulus(p)?;
    let lc = f.leading().ok_or(Error::Zero { op: "cycle_type" })?;
    if reduce(lc, p) == 0 {
        return Err(Error::InvalidParameters(format!("{p} divides the leading coefficient")));
    }
    let fp = FpPolynomial::from_int(f, p)?;
    if !fp.is_squarefree() {
        return Ok(None);
    }
    let mut parts = Vec::new();
    for (k, g) in ddf(&fp) {
        let count = g.degree().unwrap() / k;
        parts.extend(std::iter::repeat_n(k, count));
    }
    parts.sort_unstable_by(|a, b| b.cmp(a));
    Ok(Some(parts))
}
