use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::pow;

use super::{Budgets, Check, Evidence, FamilyDescriptor, LevelCertificate, Overall, TOOL_VERSION, TowerReport, Verdict, summarize};
use crate::arith::{SupportSet, Valuation, rational_square_root, square_root, strip_support, valuation_rational};
use crate::dynamics::{Orbit, TrinomialFamily, odd_exponent_witness};
use crate::error::{Error, Result};

/// Free critical point `−14/3` of `x³ + 7x² − 7`.
pub const INDEX2_A: (i64, i64) = (-14, 3);

const MULTIPLIER: i64 = 21;

fn level(n: u32, value: &BigRational, budgets: &Budgets) -> Result<(LevelCertificate, bool)> {
    let (three, seven) = (BigInt::from(3), BigInt::from(7));
    let v7 = valuation_rational(value, &seven)?;
    let v3 = valuation_rational(value, &three)?;
    let expected_v3 = -pow(BigInt::from(3), n as usize);
    let valuations_ok = v7 == Valuation::Finite(1)
        && v3.finite().is_some_and(|v| BigInt::from(v) == expected_v3);

    let scaled = value * BigRational::from_integer(BigInt::from(MULTIPLIER));
    let root = rational_square_root(&scaled);
    // 21·N/D is a rational square iff the integer 21·N·D is a square.
    let merged = scaled.numer() * scaled.denom();
    let support = SupportSet::new([3u32, 7])?;
    let (stripped, _) = strip_support(&merged, &support)?;
    if valuations_ok && square_root(&stripped).is_some() != root.is_some() {
        return Err(Error::Inconsistent(format!("level {n}: rational and stripped square tests disagree")));
    }
    let mut evidence = Evidence::with_stripped(&stripped);
    evidence.notes.push(format!("v_7 = {v7}, v_3 = {v3}"));
    let verdict = match root {
        Some(y) => {
            evidence.square_root = Some(y.to_string());
            evidence.multiplier = Some(MULTIPLIER.to_string());
            Verdict::NotMaximal
        }
        None => {
            if let Some(w) = odd_exponent_witness(&stripped, &budgets.factor)? {
                evidence.witness_prime = Some(w.to_string());
            }
            Verdict::Maximal
        }
    };
    Ok((LevelCertificate { n, verdict, evidence }, valuations_ok))
}

/// Tower of `x³ + 7x² − 7` along the orbit of `a = −14/3`, tested against
/// `φⁿ(a) = 21·y²` with `y` rational.
pub fn index2_report(budgets: &Budgets) -> Result<TowerReport> {
    let depth = budgets.depth;
    if depth == 0 {
        return Err(Error::InvalidParameters("depth must be at least 1".into()));
    }
    let family = TrinomialFamily::index2();
    let a = BigRational::new(BigInt::from(INDEX2_A.0), BigInt::from(INDEX2_A.1));
    let mut orbit = Orbit::new(family.polynomial(), a).with_budget(budgets.digit_budget);
    let mut levels = Vec::new();
    let mut valuations_ok = true;
    let mut exhausted = false;
    for n in 1..=depth {
        if exhausted {
            levels.push(LevelCertificate::unknown(n, "previous level exceeded the budget"));
            continue;
        }
        match orbit.value(n) {
            Ok(v) => {
                let v = v.clone();
                let (cert, ok) = level(n, &v, budgets)?;
                valuations_ok &= ok;
                levels.push(cert);
            }
            Err(Error::Capacity { what, limit, reached }) => {
                exhausted = true;
                levels.push(LevelCertificate::unknown(
                    n,
                    format!("{what} budget {limit} reached at level {reached}"),
                ));
            }
            Err(e) => return Err(e),
        }
    }
    let checks = vec![Check::new(
        "valuations",
        valuations_ok,
        "v_7(phi^n(a)) = 1 and v_3(phi^n(a)) = -3^n",
    )];
    let pattern = levels[0].verdict == Verdict::NotMaximal
        && levels[1..].iter().all(|l| l.verdict == Verdict::Maximal);
    let overall = if pattern && valuations_ok {
        Overall::FiniteIndexEvidence { index_bound: 2, depth }
    } else if !valuations_ok {
        Overall::Inconclusive
    } else {
        summarize(&levels)
    };
    Ok(TowerReport {
        family: FamilyDescriptor::from(&family),
        levels,
        overall,
        checks,
        tool_version: TOOL_VERSION.into(),
        budgets: budgets.clone(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn first_level_is_a_square() {
        let r = index2_report(&Budgets::with_depth(1)).unwrap();
        let l1 = &r.levels[0];
        assert_eq!(l1.verdict, Verdict::NotMaximal);
        assert_eq!(l1.evidence.square_root.as_deref(), Some("91/3"));
        let y: BigRational = BigRational::new(91.into(), 3.into());
        let value = BigRational::new(1183.into(), 27.into());
        assert_eq!(&y * &y, value * BigRational::from_integer(21.into()));
        assert_eq!(r.overall, Overall::FiniteIndexEvidence { index_bound: 2, depth: 1 });
        r.validate().unwrap();
    }

    #[test]
    fn depth_four() {
        let r = index2_report(&Budgets::with_depth(4)).unwrap();
        assert_eq!(
            r.verdicts(),
            vec![Verdict::NotMaximal, Verdict::Maximal, Verdict::Maximal, Verdict::Maximal]
        );
        assert!(r.checks[0].passed);
        assert!(index2_report(&Budgets::with_depth(0)).is_err());
    }
}
