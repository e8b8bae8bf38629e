use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, Zero, pow};
use serde::{Deserialize, Serialize};

use super::odoni::{iterates_eisenstein, two_transitivity_hypothesis, TwoTransitivity};
use super::{Budgets, Check, Evidence, FamilyDescriptor, LevelCertificate, Overall, TOOL_VERSION, TowerReport, Verdict, summarize};
use crate::arith::{is_prime_u64, square_root, strip_support};
use crate::dynamics::{Orbit, TrinomialFamily, VojtaFamily, check_rigid_divisibility, mobius_product, odd_exponent_witness};
use crate::error::{Error, Result};
use crate::poly::{discriminant, trinomial_disc};

const RIGID_PRIME_BOUND: u64 = 1000;

fn zero_orbit(family: &VojtaFamily, budgets: &Budgets) -> Orbit {
    Orbit::new(family.polynomial(), BigRational::zero()).with_budget(budgets.digit_budget)
}

/// Signed primitive part of `φ^(n+1)(0) = φⁿ(a)`.
fn primitive_value(orbit: &mut Orbit, n: u32) -> Result<BigInt> {
    let terms = (1..=n + 1).map(|m| orbit.integer_value(m)).collect::<Result<Vec<_>>>()?;
    let q = mobius_product(&terms, n as usize + 1)?;
    if !q.is_integer() {
        return Err(Error::NonIntegral { index: n as usize + 1 });
    }
    Ok(q.to_integer())
}

/// Level `n`: the primitive part of `φ^(n+1)(0)` with `Supp(d)` removed must
/// have a prime to odd multiplicity. A square leaves the level undecided.
pub fn vojta_level_certificate(
    family: &VojtaFamily,
    orbit: &mut Orbit,
    n: u32,
    budgets: &Budgets,
) -> Result<LevelCertificate> {
    let value = match primitive_value(orbit, n) {
        Ok(v) => v,
        Err(Error::Capacity { what, limit, reached }) => {
            return Ok(LevelCertificate::unknown(
                n,
                format!("{what} budget {limit} reached at level {reached}"),
            ));
        }
        Err(e) => return Err(e),
    };
    let (stripped, _) = strip_support(&value.abs(), &family.support_of_d())?;
    let mut evidence = Evidence::with_stripped(&stripped);
    evidence.notes.push(format!("primitive part sign: {}", if value.is_negative() { "-" } else { "+" }));
    let verdict = match square_root(&stripped) {
        Some(y) => {
            evidence.square_root = Some(y.to_string());
            evidence.notes.push("no prime outside Supp(d) divides the primitive part to odd multiplicity".into());
            Verdict::Unknown
        }
        None => {
            if let Some(w) = odd_exponent_witness(&stripped, &budgets.factor)? {
                evidence.witness_prime = Some(w.to_string());
            }
            Verdict::Maximal
        }
    };
    Ok(LevelCertificate { n, verdict, evidence })
}

/// Compares the level-1 primitive part `1 − (d−1)^(d−2)·c^(d−1)` against the
/// discriminant, both from the trinomial formula and from the resultant.
pub fn level_one_cross_check(family: &VojtaFamily) -> Result<Check> {
    let (d, c) = (family.d() as usize, BigInt::from(family.c()));
    let closed = BigInt::from(1) - pow(BigInt::from(d - 1), d - 2) * pow(c.clone(), d - 1);
    let mut orbit = Orbit::new(family.polynomial(), BigRational::zero());
    let primitive = primitive_value(&mut orbit, 1)?;
    let formula = trinomial_disc(&family.trinomial());
    let resultant_route = discriminant(&family.polynomial())?;
    let b = family.a();
    let cofactor = pow(b, d - 2) * pow(BigInt::from(d), d) * &c * (d - 1);
    let (q, r) = formula.div_rem(&cofactor);
    let passed = primitive == closed && formula == resultant_route && r.is_zero() && q.abs() == closed.abs();
    Ok(Check::new(
        "level_one_discriminant",
        passed,
        format!("primitive part {primitive}, disc / (B^(d-2) d^d c(d-1)) = {q}"),
    ))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BdMembership {
    pub c_prime: bool,
    pub coprime: bool,
    /// Eisenstein at `c` for every iterate up to `levels`; absent unless `c`
    /// is prime.
    pub eisenstein_at_c: Option<bool>,
    pub levels: u32,
}

pub fn bd_membership_evidence(d: u32, c: u64, n: u32, degree_cap: usize) -> Result<BdMembership> {
    let family = VojtaFamily::new(d, c)?;
    let coprime = c.gcd(&(d as u64 - 1)) == 1;
    let c_prime = is_prime_u64(c);
    let mut levels = 0;
    while levels < n && (d as usize).checked_pow(levels + 1).is_some_and(|t| t <= degree_cap) {
        levels += 1;
    }
    let eisenstein_at_c = if c_prime && levels > 0 {
        Some(iterates_eisenstein(&family.polynomial(), c, levels, degree_cap)?)
    } else {
        None
    };
    Ok(BdMembership {
        c_prime,
        coprime,
        eisenstein_at_c,
        levels,
    })
}

pub fn vojta_tower(family: &VojtaFamily, budgets: &Budgets) -> Result<TowerReport> {
    let depth = budgets.depth;
    let mut checks = Vec::new();
    let bd = bd_membership_evidence(family.d(), family.c(), depth, budgets.degree_cap)?;
    checks.push(Check::new("c_coprime_to_d_minus_1", bd.coprime, ""));
    if let Some(e) = bd.eisenstein_at_c {
        checks.push(Check::new("iterates_eisenstein_at_c", e, format!("n <= {}", bd.levels)));
    }
    let transitivity = two_transitivity_hypothesis(family.d() as u64);
    checks.push(Check::new(
        "two_transitivity",
        transitivity != TwoTransitivity::Neither,
        serde_json::to_string(&transitivity).unwrap_or_default(),
    ));
    checks.push(level_one_cross_check(family)?);

    let mut orbit = zero_orbit(family, budgets);
    let mut levels = Vec::new();
    for n in 1..=depth {
        let cert = vojta_level_certificate(family, &mut orbit, n, budgets)?;
        let exhausted = cert.verdict == Verdict::Unknown && cert.evidence.square_root.is_none();
        levels.push(cert);
        if exhausted {
            for m in n + 1..=depth {
                levels.push(LevelCertificate::unknown(m, "previous level exceeded the budget"));
            }
            break;
        }
    }
    let reach = (1..=depth + 1).take_while(|&m| orbit.ensure(m).is_ok()).last().unwrap_or(0);
    if reach >= 2 {
        let terms = (1..=reach).map(|m| orbit.integer_value(m)).collect::<Result<Vec<_>>>()?;
        let label = family_label(family);
        let report = check_rigid_divisibility(&label, &terms, RIGID_PRIME_BOUND);
        checks.push(Check::new(
            "rigid_divisibility",
            report.is_rigid(),
            format!("{} terms, primes <= {RIGID_PRIME_BOUND}", terms.len()),
        ));
    }

    let overall = if transitivity == TwoTransitivity::Neither {
        Overall::Inconclusive
    } else {
        summarize(&levels)
    };
    Ok(TowerReport {
        family: FamilyDescriptor::from(&TrinomialFamily::Vojta(*family)),
        levels,
        overall,
        checks,
        tool_version: TOOL_VERSION.into(),
        budgets: budgets.clone(),
    })
}

fn family_label(family: &VojtaFamily) -> String {
    format!("vojta(d={}, c={})", family.d(), family.c())
}
