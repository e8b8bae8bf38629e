//! Trinomial families, critical orbits and their arithmetic.

mod divisibility;
mod dynatomic;
mod orbit;

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

pub use divisibility::{
    PpdCheck, PrimitivePart, RigidDivisibilityReport, RigidViolation, check_rigid_divisibility,
    mobius_product, ppd_refinement_check, primitive_part, verify_rigid_divisibility,
};
pub use dynatomic::{DynatomicLevel, dynatomic_at_zero, dynatomic_report, parameter_orbit};
pub use orbit::{
    DEFAULT_DIGIT_BUDGET, FpMap, HeightGrowthRow, ModOrbit, Orbit, height_growth_check,
    orbit_mod_p, orbit_values,
};

use crate::arith::{FactorBudget, SupportSet, decimal_digits, factor, is_perfect_square, is_prime_u64, strip_support};
use crate::error::{Error, Result};
use crate::poly::{CriticalPoint, IntPolynomial, Trinomial, critical_points};

/// `φ_(p,k)(x) = x^p + kp·x^(p−1) − kp` with `p` an odd prime and `p ∤ k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct OdoniPrimeFamily {
    p: u64,
    k: u64,
}

impl OdoniPrimeFamily {
    pub fn new(p: u64, k: u64) -> Result<Self> {
        if p < 3 || !is_prime_u64(p) {
            return Err(Error::InvalidParameters(format!("p = {p} is not an odd prime")));
        }
        if k == 0 {
            return Err(Error::InvalidParameters("k must be positive".into()));
        }
        if k % p == 0 {
            return Err(Error::InvalidParameters(format!("p = {p} divides k = {k}")));
        }
        if p > 1 << 16 {
            return Err(Error::InvalidParameters(format!("degree {p} is too large")));
        }
        Ok(Self { p, k })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn k(&self) -> u64 {
        self.k
    }

    /// `kp`, the fixed point reached by the orbit of 0.
    pub fn kp(&self) -> BigInt {
        BigInt::from(self.k) * self.p
    }

    /// The free critical point `a = −k(p − 1)`.
    pub fn a(&self) -> BigInt {
        -(BigInt::from(self.k) * (self.p - 1))
    }

    pub fn trinomial(&self) -> Trinomial {
        let kp = self.kp();
        Trinomial::new(self.p as u32, self.p as u32 - 1, kp.clone(), -kp).unwrap()
    }

    pub fn polynomial(&self) -> IntPolynomial {
        self.trinomial().polynomial()
    }

    /// `Supp(kp)`.
    pub fn support(&self) -> SupportSet {
        SupportSet::of(&self.kp()).unwrap()
    }
}

/// `φ_(d,c)(x) = x^d − cd·x^(d−1) + c(d−1)` with `d ≥ 3`, `c ≥ 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct VojtaFamily {
    d: u32,
    c: u64,
}

impl VojtaFamily {
    pub fn new(d: u32, c: u64) -> Result<Self> {
        if d < 3 {
            return Err(Error::InvalidParameters(format!("d = {d} < 3")));
        }
        if d > 1 << 12 {
            return Err(Error::InvalidParameters(format!("degree {d} is too large")));
        }
        if c == 0 {
            return Err(Error::InvalidParameters("c must be positive".into()));
        }
        Ok(Self { d, c })
    }

    pub fn d(&self) -> u32 {
        self.d
    }

    pub fn c(&self) -> u64 {
        self.c
    }

    /// The free critical point `a = c(d − 1) = φ(0)`.
    pub fn a(&self) -> BigInt {
        BigInt::from(self.c) * (self.d - 1)
    }

    pub fn trinomial(&self) -> Trinomial {
        let cd = BigInt::from(self.c) * self.d;
        Trinomial::new(self.d, self.d - 1, -cd, self.a()).unwrap()
    }

    pub fn polynomial(&self) -> IntPolynomial {
        self.trinomial().polynomial()
    }

    pub fn support_of_d(&self) -> SupportSet {
        SupportSet::of(&BigInt::from(self.d)).unwrap()
    }
}

/// One of the trinomial maps handled by the toolkit.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum TrinomialFamily {
    Odoni(OdoniPrimeFamily),
    Vojta(VojtaFamily),
    Generic(Trinomial),
}

impl TrinomialFamily {
    /// `x³ + 7x² − 7`, whose image has index 2.
    pub fn index2() -> Self {
        Self::Generic(Trinomial::new(3, 2, 7, -7).unwrap())
    }

    pub fn trinomial(&self) -> Trinomial {
        match self {
            Self::Odoni(f) => f.trinomial(),
            Self::Vojta(f) => f.trinomial(),
            Self::Generic(t) => t.clone(),
        }
    }

    pub fn polynomial(&self) -> IntPolynomial {
        self.trinomial().polynomial()
    }

    pub fn degree(&self) -> u32 {
        self.trinomial().d
    }
}

impl fmt::Display for TrinomialFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Odoni(o) => write!(f, "odoni(p={}, k={})", o.p, o.k),
            Self::Vojta(v) => write!(f, "vojta(d={}, c={})", v.d, v.c),
            Self::Generic(t) => write!(f, "{t}"),
        }
    }
}

fn int_point(n: BigInt, multiplicity: u32) -> CriticalPoint {
    CriticalPoint {
        point: BigRational::from_integer(n),
        multiplicity,
    }
}

/// Critical points with multiplicities, sorted by position. The two named
/// families use their closed forms; generic trinomials go through `f′`.
pub fn critical_data(family: &TrinomialFamily) -> Result<Vec<CriticalPoint>> {
    let mut pts = match family {
        TrinomialFamily::Odoni(o) => vec![
            int_point(BigInt::zero(), o.p as u32 - 2),
            int_point(o.a(), 1),
        ],
        TrinomialFamily::Vojta(v) => vec![
            int_point(BigInt::zero(), v.d - 2),
            int_point(v.a(), 1),
        ],
        TrinomialFamily::Generic(t) => return critical_points(&t.polynomial()),
    };
    pts.sort_by(|a, b| a.point.cmp(&b.point));
    Ok(pts)
}

/// Positivity of `φ^n(a)` for all `n ≥ 1`: checks `|a| < kp` and
/// `a^(p−1) > kp`, then confirms positivity along the first `depth` iterates.
pub fn sign_certificate(family: &OdoniPrimeFamily, depth: u32) -> Result<bool> {
    let (a, kp) = (family.a(), family.kp());
    let conditions = a.abs() < kp && num_traits::pow(a.clone(), family.p as usize - 1) > kp;
    if !conditions {
        return Ok(false);
    }
    let mut orbit = Orbit::new(family.polynomial(), BigRational::from_integer(a));
    for n in 1..=depth {
        if !orbit.value(n)?.is_positive() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Decimal-digit threshold above which witness naming falls back to trial
/// division only.
const FULL_FACTOR_DIGITS: usize = 40;

/// `φ^n(a)` with `Supp(kp)` removed, a square test, and (when cheap) a prime
/// with odd exponent.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrimitivePrimeAnalysis {
    pub n: u32,
    #[serde(with = "crate::serde_util::bigint_str")]
    pub value: BigInt,
    #[serde(with = "crate::serde_util::bigint_str")]
    pub stripped: BigInt,
    pub is_square: bool,
    #[serde(with = "crate::serde_util::opt_bigint_str")]
    pub witness: Option<BigInt>,
}

/// Smallest prime with odd exponent in `n`, searched within `budget`.
pub fn odd_exponent_witness(n: &BigInt, budget: &FactorBudget) -> Result<Option<BigInt>> {
    if n.is_zero() {
        return Err(Error::Zero { op: "odd_exponent_witness" });
    }
    if decimal_digits(n) <= FULL_FACTOR_DIGITS {
        return Ok(factor(n, budget)?.odd_exponent_prime().cloned());
    }
    let mut rest = n.abs();
    for p in crate::arith::primes_up_to(budget.trial_bound) {
        let mut e = 0;
        while (&rest % p).is_zero() {
            rest /= p;
            e += 1;
        }
        if e % 2 == 1 {
            return Ok(Some(BigInt::from(p)));
        }
        if rest.is_one() {
            break;
        }
    }
    Ok(None)
}

pub fn primitive_prime_analysis(
    family: &OdoniPrimeFamily,
    orbit: &mut Orbit,
    n: u32,
    budget: &FactorBudget,
) -> Result<PrimitivePrimeAnalysis> {
    let value = orbit.integer_value(n)?;
    let (stripped, _) = strip_support(&value, &family.support())?;
    let is_square = is_perfect_square(&stripped);
    let witness = if is_square {
        None
    } else {
        odd_exponent_witness(&stripped, budget)?
    };
    Ok(PrimitivePrimeAnalysis {
        n,
        value,
        stripped,
        is_square,
        witness,
    })
}

/// The orbit of `a` under an Odoni map, ready for level queries.
pub fn odoni_critical_orbit(family: &OdoniPrimeFamily) -> Orbit {
    Orbit::new(family.polynomial(), BigRational::from_integer(family.a()))
}
