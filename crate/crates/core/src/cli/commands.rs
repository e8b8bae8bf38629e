use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::{Cli, Command, Outcome, resolve_budgets};
use crate::certificates::{
    Budgets, CurveCheckReport, DensityTable, NewtonCertificate, Overall, TowerReport, curve_checks, density_experiment,
    index2_report, newton_polygon_certificate, odoni_tower, vojta_tower,
};
use crate::dynamics::{
    DynatomicLevel, OdoniPrimeFamily, TrinomialFamily, VojtaFamily, dynatomic_at_zero, dynatomic_report, parameter_orbit,
};
use crate::error::{Error, Result};
use crate::galois::{
    CycleTypeDistribution, DEFAULT_LEAF_CAP, DEFAULT_ORDER_CAP, exact_cycle_distribution, frobenius_distribution,
    index2_candidate, total_variation, total_variation_exact, wreath_generators,
};
use crate::poly::{Trinomial, disc_oracle, discriminant, int_poly, iterate_disc_formula, trinomial_disc};

#[derive(Debug, Serialize)]
#[serde(untagged)]
pub enum Payload {
    Tower(TowerReport),
    Disc(DiscCheckReport),
    Frobenius(FrobeniusReport),
    Density(DensityTable),
    Dynatomic(DynatomicReport),
    Newton(NewtonCertificate),
    Curves(Vec<CurveCheckReport>),
}

#[derive(Debug, Clone, Serialize)]
pub struct FixedDisc {
    pub polynomial: String,
    pub expected: String,
    pub formula: String,
    pub resultant: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct IterateDisc {
    pub n: u32,
    pub t: i64,
    pub formula: String,
    pub oracle: String,
    pub equal: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct DiscCheckReport {
    pub samples: usize,
    pub agreements: usize,
    pub mismatches: Vec<String>,
    pub fixed: Vec<FixedDisc>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub iterates: Vec<IterateDisc>,
}

impl DiscCheckReport {
    pub fn passed(&self) -> bool {
        self.agreements == self.samples
            && self.fixed.iter().all(|f| f.expected == f.formula && f.expected == f.resultant)
            && self.iterates.iter().all(|i| i.equal)
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Reference {
    pub name: String,
    pub order: usize,
    pub total_variation: f64,
    pub distribution: CycleTypeDistribution,
}

#[derive(Debug, Clone, Serialize)]
pub struct FrobeniusReport {
    pub degree: usize,
    pub level: u32,
    pub pmax: u64,
    pub empirical: CycleTypeDistribution,
    pub references: Vec<Reference>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tau_star: Option<String>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct DynatomicReport {
    pub d: u32,
    pub levels: Vec<DynatomicLevel>,
    /// `Φ_(C,2)(0)` as coefficients, constant term first.
    pub second_quotient: Vec<String>,
    pub passed: bool,
}

pub(super) fn depth_of(command: &Command) -> u32 {
    match command {
        Command::CertifyOdoni { depth, .. } | Command::CertifyIndex2 { depth } | Command::CertifyVojta { depth, .. } => {
            *depth
        }
        Command::Frobenius { level, .. } => *level,
        Command::Dynatomic { nmax, .. } => *nmax,
        _ => 0,
    }
}

fn tower_outcome(report: &TowerReport, expected: fn(&Overall) -> bool) -> Outcome {
    match &report.overall {
        o if expected(o) => Outcome::Confirmed,
        Overall::NotMaximalFound { .. } => Outcome::Refuted,
        _ => Outcome::Inconclusive,
    }
}

pub(super) fn dispatch(cli: &Cli, env: Option<&str>) -> Result<(Outcome, Payload)> {
    let budgets = resolve_budgets(&cli.global, depth_of(&cli.command), env)?;
    let seed = cli.global.seed;
    Ok(match &cli.command {
        Command::CertifyOdoni { p, k, .. } => {
            let report = odoni_tower(&OdoniPrimeFamily::new(*p, *k)?, &budgets)?;
            let outcome = tower_outcome(&report, |o| {
                matches!(o, Overall::SurjectiveEvidence { .. } | Overall::SurjectiveProof { .. })
            });
            (outcome, Payload::Tower(report))
        }
        Command::CertifyIndex2 { .. } => {
            let report = index2_report(&budgets)?;
            let outcome = tower_outcome(&report, |o| matches!(o, Overall::FiniteIndexEvidence { index_bound: 2, .. }));
            (outcome, Payload::Tower(report))
        }
        Command::CertifyVojta { d, c, .. } => {
            let report = vojta_tower(&VojtaFamily::new(*d, *c)?, &budgets)?;
            let outcome = tower_outcome(&report, |o| matches!(o, Overall::SurjectiveEvidence { .. }));
            (outcome, Payload::Tower(report))
        }
        Command::DiscCheck { samples, iterates } => {
            let report = disc_check(*samples, *iterates, seed)?;
            let outcome = if report.passed() { Outcome::Confirmed } else { Outcome::Refuted };
            (outcome, Payload::Disc(report))
        }
        Command::Frobenius { family, level, pmax } => {
            let report = frobenius(&family.0, *level, *pmax, &budgets)?;
            (Outcome::Confirmed, Payload::Frobenius(report))
        }
        Command::Density { family, a0, pmax } => {
            let a0: BigRational = a0
                .parse()
                .map_err(|_| Error::InvalidParameters(format!("a0 = {a0:?} is not a rational number")))?;
            let table = density_experiment(&family.0.polynomial(), &a0, *pmax, &[1_000, 10_000])?;
            (Outcome::Confirmed, Payload::Density(table))
        }
        Command::Dynatomic { d, nmax } => {
            let report = dynatomic(*d, *nmax)?;
            let outcome = if report.passed { Outcome::Confirmed } else { Outcome::Refuted };
            (outcome, Payload::Dynatomic(report))
        }
        Command::Newton { d, s, a, b, p } => {
            let parse = |v: &str| -> Result<BigInt> {
                v.parse().map_err(|_| Error::InvalidParameters(format!("{v:?} is not an integer")))
            };
            let t = Trinomial::new(*d, *s, parse(a)?, parse(b)?)?;
            let cert = newton_polygon_certificate(&t, *p)?;
            let outcome = if cert.certified { Outcome::Confirmed } else { Outcome::Refuted };
            (outcome, Payload::Newton(cert))
        }
        Command::Curves { bound } => {
            let reports = curve_checks(*bound)?;
            let outcome = if reports.iter().all(|r| r.passed) { Outcome::Confirmed } else { Outcome::Refuted };
            (outcome, Payload::Curves(reports))
        }
    })
}

/// Random trinomials with `3 ≤ d ≤ 8`, `gcd(d, s) = 1` and nonzero
/// coefficients in `[−50, 50]`.
pub fn random_trinomials(samples: usize, seed: u64) -> Vec<Trinomial> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let nonzero = |rng: &mut ChaCha8Rng| loop {
        let v: i64 = rng.gen_range(-50..=50);
        if v != 0 {
            break v;
        }
    };
    (0..samples)
        .map(|_| loop {
            let d: u32 = rng.gen_range(3..=8);
            let s: u32 = rng.gen_range(1..d);
            if d.gcd(&s) != 1 {
                continue;
            }
            let (a, b) = (nonzero(&mut rng), nonzero(&mut rng));
            break Trinomial::new(d, s, a, b).expect("valid trinomial");
        })
        .collect()
}

pub fn disc_check(samples: usize, iterates: bool, seed: u64) -> Result<DiscCheckReport> {
    let mut mismatches = Vec::new();
    let trinomials = random_trinomials(samples, seed);
    for t in &trinomials {
        let formula = trinomial_disc(t);
        let oracle = disc_oracle(&t.polynomial().to_rational())?;
        if BigRational::from_integer(formula.clone()) != oracle || discriminant(&t.polynomial())? != formula {
            mismatches.push(t.to_string());
        }
    }
    let mut fixed = Vec::new();
    for (t, expected) in [(Trinomial::new(3, 2, 6, -6)?, 4212), (Trinomial::new(3, 2, 7, -7)?, 8281)] {
        fixed.push(FixedDisc {
            polynomial: t.to_string(),
            expected: expected.to_string(),
            formula: trinomial_disc(&t).to_string(),
            resultant: discriminant(&t.polynomial())?.to_string(),
        });
    }
    let mut iterate_rows = Vec::new();
    if iterates {
        let f = int_poly(&[-6, 0, 6, 1]);
        for n in [1u32, 2] {
            let fn_ = f.iterate(n, 81)?;
            for t in [0i64, 1, -5] {
                let tq = BigRational::from_integer(t.into());
                let formula = iterate_disc_formula(&f, n, &tq)?;
                let shifted = &fn_ - &int_poly(&[t]);
                let oracle = disc_oracle(&shifted.to_rational())?;
                iterate_rows.push(IterateDisc {
                    n,
                    t,
                    equal: formula == oracle,
                    formula: formula.to_string(),
                    oracle: oracle.to_string(),
                });
            }
        }
    }
    Ok(DiscCheckReport {
        samples,
        agreements: samples - mismatches.len(),
        mismatches,
        fixed,
        iterates: iterate_rows,
    })
}

pub fn frobenius(family: &TrinomialFamily, level: u32, pmax: u64, budgets: &Budgets) -> Result<FrobeniusReport> {
    if level == 0 {
        return Err(Error::InvalidParameters("level must be at least 1".into()));
    }
    let f = family.polynomial().iterate(level, budgets.degree_cap)?;
    let empirical = frobenius_distribution(&f, 2, pmax)?;
    let d = family.degree() as usize;
    let mut references = Vec::new();
    let mut notes = Vec::new();
    let mut tau_star = None;
    if d.checked_pow(level).is_some_and(|l| l <= DEFAULT_LEAF_CAP) {
        let mut groups = vec![("full".to_string(), wreath_generators(d, level)?)];
        if *family == TrinomialFamily::index2() {
            groups.push(("index2".to_string(), index2_candidate(level)?));
        }
        for (name, mut g) in groups {
            match g.enumerate(DEFAULT_ORDER_CAP) {
                Ok(order) => {
                    let distribution = exact_cycle_distribution(&g)?;
                    references.push(Reference {
                        name,
                        order,
                        total_variation: total_variation(&empirical, &distribution)?,
                        distribution,
                    });
                }
                Err(Error::Capacity { limit, .. }) => notes.push(format!("{name} group exceeds {limit} elements")),
                Err(e) => return Err(e),
            }
        }
        if let [a, b] = references.as_slice() {
            tau_star = Some(total_variation_exact(&a.distribution, &b.distribution)?.to_string());
        }
    } else {
        notes.push(format!("{d}^{level} leaves exceed the enumeration cap"));
    }
    Ok(FrobeniusReport {
        degree: f.degree().unwrap_or(0),
        level,
        pmax,
        empirical,
        references,
        tau_star,
        notes,
    })
}

pub fn dynatomic(d: u32, nmax: u32) -> Result<DynatomicReport> {
    if nmax == 0 {
        return Err(Error::InvalidParameters("nmax must be at least 1".into()));
    }
    let levels = dynatomic_report(d, nmax)?;
    let second_quotient = if nmax >= 2 {
        let gs = parameter_orbit(d, 2)?;
        dynatomic_at_zero(&gs, 2)?.0.coeffs().iter().map(|c| c.to_string()).collect()
    } else {
        Vec::new()
    };
    let passed = levels.iter().all(|l| {
        l.leading_exponent.is_some() && l.squarefree_prime.is_some() && (l.n < 3 || l.dynatomic_simple_roots >= 3)
    });
    Ok(DynatomicReport {
        d,
        levels,
        second_quotient,
        passed,
    })
}
