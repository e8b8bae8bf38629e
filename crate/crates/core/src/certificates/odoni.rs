use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::{Budgets, Check, Evidence, FamilyDescriptor, LevelCertificate, Overall, TOOL_VERSION, TowerReport, Verdict, summarize};
use crate::arith::{SupportSet, is_prime_u64, square_root, strip_support, valuation};
use crate::dynamics::{OdoniPrimeFamily, Orbit, TrinomialFamily, odd_exponent_witness, odoni_critical_orbit, sign_certificate};
use crate::error::{Error, Result};
use crate::poly::IntPolynomial;

/// Eisenstein criterion at `p` for a monic integer polynomial.
pub fn eisenstein_certificate(f: &IntPolynomial, p: u64) -> bool {
    if !f.is_monic() || f.degree().unwrap_or(0) == 0 {
        return false;
    }
    let p = BigInt::from(p);
    let coeffs = f.coeffs();
    let lower = &coeffs[..coeffs.len() - 1];
    lower.iter().all(|c| c.is_multiple_of(&p)) && !coeffs[0].is_multiple_of(&(&p * &p))
}

/// Polynomials modulo a small integer `m`, enough to decide Eisenstein at
/// `p` from residues mod `p²`.
fn mul_mod_m(a: &[u64], b: &[u64], m: u64) -> Vec<u64> {
    let mut out = vec![0u128; a.len() + b.len() - 1];
    let m128 = m as u128;
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x as u128 * y as u128) % m128;
        }
    }
    out.into_iter().map(|c| c as u64).collect()
}

fn compose_mod_m(f: &[u64], g: &[u64], m: u64) -> Vec<u64> {
    let mut acc = vec![f[f.len() - 1]];
    for &c in f[..f.len() - 1].iter().rev() {
        acc = mul_mod_m(&acc, g, m);
        acc[0] = (acc[0] + c) % m;
    }
    acc
}

/// Eisenstein at `p` for `φ, φ², …, φⁿ`, computed on residues mod `p²`.
pub fn iterates_eisenstein(f: &IntPolynomial, p: u64, n: u32, degree_cap: usize) -> Result<bool> {
    let d = f.degree().ok_or(Error::Zero { op: "iterates_eisenstein" })?;
    let top = d.checked_pow(n).filter(|&t| t <= degree_cap).ok_or(Error::Capacity {
        what: "iterate degree",
        limit: degree_cap,
        reached: n as usize,
    })?;
    debug_assert!(top <= degree_cap);
    let m = p.checked_mul(p).filter(|&m| m < 1 << 62).ok_or_else(|| {
        Error::InvalidParameters(format!("p = {p} too large for the residue check"))
    })?;
    if !f.is_monic() {
        return Ok(false);
    }
    let mb = BigInt::from(m);
    let base: Vec<u64> = f.coeffs().iter().map(|c| c.mod_floor(&mb).to_u64().unwrap()).collect();
    let mut g = base.clone();
    for _ in 0..n {
        let deg = g.len() - 1;
        let eisenstein = g[..deg].iter().all(|c| c % p == 0) && g[0] % m != 0;
        if !eisenstein {
            return Ok(false);
        }
        if g.len() - 1 == top {
            break;
        }
        g = compose_mod_m(&base, &g, m);
    }
    Ok(true)
}

/// Classifies a positive orbit value `m` against `m = k·y²`. The support
/// route and the direct division route must agree.
pub(crate) fn classify_odoni_value(
    n: u32,
    m: &BigInt,
    k: u64,
    support: &SupportSet,
) -> Result<(LevelCertificate, BigInt)> {
    if !m.is_positive() {
        return Err(Error::Inconsistent(format!("level {n}: orbit value is not positive")));
    }
    for q in support.iter() {
        let k_big = BigInt::from(k);
        if k_big.is_multiple_of(q) && valuation(m, q)? != valuation(&k_big, q)? {
            return Err(Error::Inconsistent(format!("level {n}: v_{q} of the orbit value differs from v_{q}(k)")));
        }
    }
    let (stripped, _) = strip_support(m, support)?;
    let root = square_root(&stripped);
    let k_big = BigInt::from(k);
    let direct = if m.is_multiple_of(&k_big) {
        square_root(&(m / &k_big))
    } else {
        None
    };
    if root.is_some() != direct.is_some() {
        return Err(Error::Inconsistent(format!(
            "level {n}: stripped square test and k·y² test disagree"
        )));
    }
    let mut evidence = Evidence::with_stripped(&stripped);
    let verdict = match direct {
        Some(y) => {
            evidence.square_root = Some(y.to_string());
            evidence.multiplier = Some(k.to_string());
            Verdict::NotMaximal
        }
        None => Verdict::Maximal,
    };
    Ok((LevelCertificate { n, verdict, evidence }, stripped))
}

/// Level `n` of the tower of `φ_(p,k)` from the orbit of the free critical
/// point `a`.
pub fn odoni_level_certificate(
    family: &OdoniPrimeFamily,
    orbit: &mut Orbit,
    n: u32,
    budgets: &Budgets,
) -> Result<LevelCertificate> {
    let m = match orbit.integer_value(n) {
        Ok(m) => m,
        Err(Error::Capacity { what, limit, reached }) => {
            return Ok(LevelCertificate::unknown(
                n,
                format!("{what} budget {limit} reached at level {reached}"),
            ));
        }
        Err(e) => return Err(e),
    };
    if m.is_multiple_of(&BigInt::from(family.p())) {
        return Err(Error::Inconsistent(format!("level {n}: p divides the orbit value")));
    }
    let (mut cert, stripped) = classify_odoni_value(n, &m, family.k(), &family.support())?;
    if cert.verdict == Verdict::Maximal {
        if let Some(w) = odd_exponent_witness(&stripped, &budgets.factor)? {
            cert.evidence.witness_prime = Some(w.to_string());
        }
    }
    Ok(cert)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Mod3Certificate {
    pub applies: bool,
    pub fixed_point_reached: bool,
}

/// For `k ≡ 1 (mod 3)` the orbit of `a` lands on the fixed point `−1`
/// modulo 3, so no iterate can equal `k·y²`.
pub fn mod3_certificate(p: u64, k: u64) -> Mod3Certificate {
    let not_applicable = Mod3Certificate {
        applies: false,
        fixed_point_reached: false,
    };
    if p < 5 || !is_prime_u64(p) || k % 3 != 1 || k % p == 0 {
        return not_applicable;
    }
    let Ok(family) = OdoniPrimeFamily::new(p, k) else {
        return not_applicable;
    };
    let three = BigInt::from(3);
    let a = family.a().mod_floor(&three);
    let dichotomy = match p % 3 {
        1 => a.is_zero(),
        _ => a == BigInt::from(2),
    };
    let f = family.polynomial();
    let minus_one = BigInt::from(2);
    let fa = f.evaluate(&family.a()).mod_floor(&three);
    let fixed = f.evaluate(&BigInt::from(-1)).mod_floor(&three);
    Mod3Certificate {
        applies: dichotomy,
        fixed_point_reached: dichotomy && fa == minus_one && fixed == minus_one,
    }
}

/// Which sufficient condition for double transitivity holds for degree `d`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "case", rename_all = "snake_case")]
pub enum TwoTransitivity {
    Prime,
    QPrime { q: u64 },
    Neither,
}

/// A prime `q | d−1` with `gcd(d−1, v_q(d−1)) = 1`.
pub fn q_prime_witness(d: u64) -> Option<u64> {
    let m = d.checked_sub(1).filter(|&m| m >= 2)?;
    let mut rest = m;
    let mut q = 2;
    while rest > 1 {
        if q * q > rest {
            q = rest;
        }
        if rest % q == 0 {
            let mut v = 0u64;
            while rest % q == 0 {
                rest /= q;
                v += 1;
            }
            if m.gcd(&v) == 1 {
                return Some(q);
            }
        }
        q += 1;
    }
    None
}

pub fn two_transitivity_hypothesis(d: u64) -> TwoTransitivity {
    if is_prime_u64(d) {
        TwoTransitivity::Prime
    } else if let Some(q) = q_prime_witness(d) {
        TwoTransitivity::QPrime { q }
    } else {
        TwoTransitivity::Neither
    }
}

/// The orbit of 0 is `0 ↦ −kp ↦ −kp`, so primes dividing any `φ^m(0)` lie
/// in `Supp(kp)`.
fn zero_orbit_check(family: &OdoniPrimeFamily) -> Check {
    let f = family.polynomial();
    let kp = family.kp();
    let first = f.evaluate(&BigInt::zero());
    let second = f.evaluate(&first);
    Check::new(
        "zero_orbit_fixed",
        first == -&kp && second == -&kp,
        format!("phi(0) = {first}, phi^2(0) = {second}; gcd hypothesis reduces to p_n outside Supp(kp)"),
    )
}

pub fn odoni_tower(family: &OdoniPrimeFamily, budgets: &Budgets) -> Result<TowerReport> {
    let depth = budgets.depth;
    let f = family.polynomial();
    let mut checks = vec![zero_orbit_check(family)];

    let d = family.p() as usize;
    let mut eis_depth = 0u32;
    while eis_depth < depth && d.checked_pow(eis_depth + 1).is_some_and(|t| t <= budgets.degree_cap) {
        eis_depth += 1;
    }
    let eis = eis_depth == 0 || iterates_eisenstein(&f, family.p(), eis_depth, budgets.degree_cap)?;
    checks.push(Check::new(
        "iterates_eisenstein",
        eis,
        format!("at p = {} for n <= {eis_depth}", family.p()),
    ));

    let mut orbit = odoni_critical_orbit(family).with_budget(budgets.digit_budget);
    let sign = match sign_certificate(family, depth) {
        Ok(s) => s,
        Err(Error::Capacity { .. }) => sign_certificate(family, orbit_reach(&mut orbit, depth))?,
        Err(e) => return Err(e),
    };
    checks.push(Check::new("orbit_positive", sign, "|a| < kp and a^(p-1) > kp"));

    let mod3 = mod3_certificate(family.p(), family.k());
    if mod3.applies {
        checks.push(Check::new("mod3_fixed_point", mod3.fixed_point_reached, "phi^n(a) = -1 mod 3 for n >= 1"));
    }

    let mut levels = Vec::with_capacity(depth as usize);
    for n in 1..=depth {
        let cert = odoni_level_certificate(family, &mut orbit, n, budgets)?;
        let stop = cert.verdict == Verdict::Unknown;
        levels.push(cert);
        if stop {
            for m in n + 1..=depth {
                levels.push(LevelCertificate::unknown(m, "previous level exceeded the budget"));
            }
            break;
        }
    }
    if mod3.fixed_point_reached && levels.iter().any(|l| l.verdict == Verdict::NotMaximal) {
        return Err(Error::Inconsistent("mod-3 shortcut contradicts a computed level".into()));
    }

    let overall = if mod3.fixed_point_reached && sign && eis {
        for l in levels.iter_mut().filter(|l| l.verdict == Verdict::Unknown) {
            l.evidence.notes.push("covered by the mod-3 fixed point".into());
        }
        Overall::SurjectiveProof {
            method: "mod3_fixed_point".into(),
            depth,
        }
    } else {
        summarize(&levels)
    };
    Ok(TowerReport {
        family: FamilyDescriptor::from(&TrinomialFamily::Odoni(*family)),
        levels,
        overall,
        checks,
        tool_version: TOOL_VERSION.into(),
        budgets: budgets.clone(),
    })
}

/// Deepest level the orbit can reach within its digit budget, capped at `depth`.
fn orbit_reach(orbit: &mut Orbit, depth: u32) -> u32 {
    (1..=depth).take_while(|&n| orbit.ensure(n).is_ok()).last().unwrap_or(0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::int_poly;

    #[test]
    fn eisenstein_examples() {
        let f = int_poly(&[-6, 0, 6, 1]);
        assert!(eisenstein_certificate(&f, 2));
        assert!(eisenstein_certificate(&f, 3));
        assert!(!eisenstein_certificate(&f, 5));
        assert!(eisenstein_certificate(&int_poly(&[-7, 0, 7, 1]), 7));
        assert!(!eisenstein_certificate(&int_poly(&[-12, 0, 6, 1]), 2));
    }

    #[test]
    fn iterated_eisenstein_matches_exact_iterates() {
        let f = int_poly(&[-6, 0, 6, 1]);
        for n in 1..=3 {
            let exact = eisenstein_certificate(&f.iterate(n, 6561).unwrap(), 3);
            assert!(exact);
            assert_eq!(iterates_eisenstein(&f, 3, n, 6561).unwrap(), exact);
        }
        let g = int_poly(&[2, 0, -3, 1]);
        assert!(!eisenstein_certificate(&g.iterate(2, 100).unwrap(), 2));
        assert!(!iterates_eisenstein(&g, 2, 2, 100).unwrap());
        assert!(matches!(iterates_eisenstein(&f, 3, 9, 6561), Err(Error::Capacity { .. })));
    }

    #[test]
    fn odoni_levels() {
        let family = OdoniPrimeFamily::new(3, 2).unwrap();
        let budgets = Budgets::default();
        let mut orbit = odoni_critical_orbit(&family);
        let l1 = odoni_level_certificate(&family, &mut orbit, 1, &budgets).unwrap();
        assert_eq!(l1.verdict, Verdict::Maximal);
        assert_eq!(l1.evidence.witness_prime.as_deref(), Some("13"));
        let l2 = odoni_level_certificate(&family, &mut orbit, 2, &budgets).unwrap();
        assert_eq!(l2.verdict, Verdict::Maximal);
        assert_eq!(l2.evidence.stripped.as_deref(), Some("10813"));
    }

    #[test]
    fn synthetic_square_value() {
        let support = SupportSet::of(&BigInt::from(21)).unwrap();
        let (c, _) = classify_odoni_value(1, &BigInt::from(175), 7, &support).unwrap();
        assert_eq!(c.verdict, Verdict::NotMaximal);
        assert_eq!(c.evidence.square_root.as_deref(), Some("5"));
        let (c, _) = classify_odoni_value(1, &BigInt::from(7 * 26), 7, &support).unwrap();
        assert_eq!(c.verdict, Verdict::Maximal);
        assert!(classify_odoni_value(1, &BigInt::from(49), 7, &support).is_err());
    }

    #[test]
    fn mod3_examples() {
        assert_eq!(mod3_certificate(5, 1), Mod3Certificate { applies: true, fixed_point_reached: true });
        assert_eq!(mod3_certificate(7, 4), Mod3Certificate { applies: true, fixed_point_reached: true });
        assert!(!mod3_certificate(5, 2).applies);
        assert!(!mod3_certificate(3, 1).applies);
    }

    #[test]
    fn transitivity_cases() {
        assert_eq!(two_transitivity_hypothesis(7), TwoTransitivity::Prime);
        assert_eq!(q_prime_witness(7), Some(2));
        assert_eq!(two_transitivity_hypothesis(9), TwoTransitivity::QPrime { q: 2 });
        assert_eq!(two_transitivity_hypothesis(5), TwoTransitivity::Prime);
        assert_eq!(q_prime_witness(5), None);
        assert_eq!(two_transitivity_hypothesis(10), TwoTransitivity::QPrime { q: 3 });
        assert_eq!(two_transitivity_hypothesis(17), TwoTransitivity::Prime);
        assert_eq!(q_prime_witness(17), None);
    }

    #[test]
    fn small_towers() {
        let r = odoni_tower(&OdoniPrimeFamily::new(3, 2).unwrap(), &Budgets::with_depth(4)).unwrap();
        assert_eq!(r.verdicts(), vec![Verdict::Maximal; 4]);
        assert_eq!(r.overall, Overall::SurjectiveEvidence { depth: 4 });
        assert!(r.checks.iter().all(|c| c.passed), "{:?}", r.checks);
        r.validate().unwrap();
        let r = odoni_tower(&OdoniPrimeFamily::new(5, 1).unwrap(), &Budgets::with_depth(3)).unwrap();
        assert!(matches!(r.overall, Overall::SurjectiveProof { .. }));
        assert_eq!(r.verdicts(), vec![Verdict::Maximal; 3]);
    }

    #[test]
    fn budget_exhaustion_is_unknown() {
        let budgets = Budgets {
            digit_budget: 50,
            ..Budgets::with_depth(6)
        };
        let r = odoni_tower(&OdoniPrimeFamily::new(3, 2).unwrap(), &budgets).unwrap();
        assert_eq!(r.overall, Overall::Inconclusive);
        assert_eq!(r.levels.len(), 6);
        assert_eq!(r.levels[5].verdict, Verdict::Unknown);
    }
}
