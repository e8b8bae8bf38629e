//! Per-level maximality verdicts and the tower pipelines built on
//! them.

mod curves;
mod density;
mod index2;
mod newton;
mod odoni;
mod vojta;

use std::collections::BTreeMap;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

pub use curves::{
    C2_SEARCH_DEFAULT, CurveCheckReport, CurvePoint, curve_checks, integral_points_c2,
};
pub use density::{DensityRow, DensityTable, density_experiment};
pub use index2::{INDEX2_A, index2_report};
pub use newton::{NewtonCertificate, NewtonPolygon, Segment, newton_polygon, newton_polygon_certificate};
pub use odoni::{
    Mod3Certificate, TwoTransitivity, eisenstein_certificate, iterates_eisenstein, mod3_certificate,
    odoni_level_certificate, odoni_tower, q_prime_witness, two_transitivity_hypothesis,
};
pub use vojta::{BdMembership, bd_membership_evidence, level_one_cross_check, vojta_level_certificate, vojta_tower};

use crate::arith::FactorBudget;
use crate::dynamics::{DEFAULT_DIGIT_BUDGET, TrinomialFamily};
use crate::poly::DEFAULT_DEGREE_CAP;

pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Maximal,
    NotMaximal,
    Unknown,
}

/// Numeric support for a verdict. Large integers appear as decimal strings;
/// the stripped value is kept whole when short and otherwise summarized by
/// its digit count and SHA-256 of its decimal form.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Evidence {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub stripped: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub stripped_digits: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub stripped_sha256: Option<String>,
    /// `y` in `value = multiplier · y²` when such a square was found.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub square_root: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub multiplier: Option<String>,
    /// A prime outside the support dividing the value to odd multiplicity.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness_prime: Option<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

const INLINE_DIGITS: usize = 64;

impl Evidence {
    pub fn with_stripped(n: &BigInt) -> Self {
        let text = n.to_string();
        let digits = text.trim_start_matches('-').len();
        Self {
            stripped: (digits <= INLINE_DIGITS).then(|| text.clone()),
            stripped_digits: Some(digits),
            stripped_sha256: Some(Sha256::digest(text.as_bytes()).iter().map(|b| format!("{b:02x}")).collect()),
            ..Self::default()
        }
    }

    pub fn note(mut self, note: impl Into<String>) -> Self {
        self.notes.push(note.into());
        self
    }
}

/// Verdict for level `n` of a tower.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LevelCertificate {
    pub n: u32,
    pub verdict: Verdict,
    pub evidence: Evidence,
}

impl LevelCertificate {
    pub fn unknown(n: u32, note: impl Into<String>) -> Self {
        Self {
            n,
            verdict: Verdict::Unknown,
            evidence: Evidence::default().note(note),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Overall {
    /// Every computed level is maximal.
    SurjectiveEvidence { depth: u32 },
    /// A congruence argument covers every level, not only the computed ones.
    SurjectiveProof { method: String, depth: u32 },
    FiniteIndexEvidence { index_bound: u32, depth: u32 },
    /// Some level is not maximal and no finite-index pattern was recognised.
    NotMaximalFound { levels: Vec<u32> },
    Inconclusive,
}

/// A named yes/no side check run alongside the levels.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    #[serde(default, skip_serializing_if = "String::is_empty")]
    pub detail: String,
}

impl Check {
    pub fn new(name: &str, passed: bool, detail: impl Into<String>) -> Self {
        Self {
            name: name.into(),
            passed,
            detail: detail.into(),
        }
    }
}

/// Effort limits echoed into every report.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Budgets {
    pub depth: u32,
    pub digit_budget: usize,
    pub degree_cap: usize,
    pub factor: FactorBudget,
}

impl Budgets {
    pub fn with_depth(depth: u32) -> Self {
        Self {
            depth,
            ..Self::default()
        }
    }
}

impl Default for Budgets {
    fn default() -> Self {
        Self {
            depth: 4,
            digit_budget: DEFAULT_DIGIT_BUDGET,
            degree_cap: DEFAULT_DEGREE_CAP,
            factor: FactorBudget::default(),
        }
    }
}

/// `{type, params}` description of a family; parameters are decimal strings.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyDescriptor {
    #[serde(rename = "type")]
    pub kind: String,
    pub params: BTreeMap<String, String>,
}

impl From<&TrinomialFamily> for FamilyDescriptor {
    fn from(f: &TrinomialFamily) -> Self {
        let (kind, pairs): (&str, Vec<(&str, String)>) = match f {
            TrinomialFamily::Odoni(o) => ("odoni", vec![("p", o.p().to_string()), ("k", o.k().to_string())]),
            TrinomialFamily::Vojta(v) => ("vojta", vec![("d", v.d().to_string()), ("c", v.c().to_string())]),
            TrinomialFamily::Generic(t) => (
                "trinomial",
                vec![
                    ("d", t.d.to_string()),
                    ("s", t.s.to_string()),
                    ("A", t.a.to_string()),
                    ("B", t.b.to_string()),
                ],
            ),
        };
        Self {
            kind: kind.into(),
            params: pairs.into_iter().map(|(k, v)| (k.to_string(), v)).collect(),
        }
    }
}

/// Ordered level certificates for one family plus the overall reading.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TowerReport {
    pub family: FamilyDescriptor,
    pub levels: Vec<LevelCertificate>,
    pub overall: Overall,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub checks: Vec<Check>,
    pub tool_version: String,
    pub budgets: Budgets,
}

impl TowerReport {
    pub fn verdicts(&self) -> Vec<Verdict> {
        self.levels.iter().map(|l| l.verdict).collect()
    }

    pub fn level(&self, n: u32) -> Option<&LevelCertificate> {
        self.levels.iter().find(|l| l.n == n)
    }

    /// Re-checks the structural invariants after deserialization.
    pub fn validate(&self) -> Result<(), String> {
        for (i, l) in self.levels.iter().enumerate() {
            if l.n as usize != i + 1 {
                return Err(format!("level {} out of order", l.n));
            }
            match l.verdict {
                Verdict::Maximal if l.evidence.stripped_digits.is_none() => {
                    return Err(format!("level {} maximal without a stripped value", l.n));
                }
                Verdict::NotMaximal if l.evidence.square_root.is_none() => {
                    return Err(format!("level {} not maximal without a square witness", l.n));
                }
                _ => {}
            }
        }
        let all_maximal = self.levels.iter().all(|l| l.verdict == Verdict::Maximal);
        let any_failing = self.levels.iter().any(|l| l.verdict == Verdict::NotMaximal);
        match self.overall {
            Overall::SurjectiveEvidence { .. } if !all_maximal => {
                return Err("surjective evidence with a non-maximal level".into());
            }
            Overall::SurjectiveProof { .. } if any_failing => {
                return Err("surjectivity proof with a non-maximal level".into());
            }
            _ => {}
        }
        Ok(())
    }
}

/// Overall reading for a tower with no congruence shortcut.
pub(crate) fn summarize(levels: &[LevelCertificate]) -> Overall {
    let depth = levels.len() as u32;
    let failing: Vec<u32> = levels
        .iter()
        .filter(|l| l.verdict == Verdict::NotMaximal)
        .map(|l| l.n)
        .collect();
    if levels.iter().any(|l| l.verdict == Verdict::Unknown) {
        Overall::Inconclusive
    } else if failing.is_empty() {
        Overall::SurjectiveEvidence { depth }
    } else {
        Overall::NotMaximalFound { levels: failing }
    }
}
