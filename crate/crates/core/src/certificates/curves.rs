use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::pow;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly::{IntPolynomial, Polynomial, int_poly};

/// Default half-width of the integral point search.
pub const C2_SEARCH_DEFAULT: i64 = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CurvePoint {
    #[serde(with = "crate::serde_util::rational_str")]
    pub x: BigRational,
    #[serde(with = "crate::serde_util::rational_str")]
    pub y: BigRational,
}

impl CurvePoint {
    fn new(x: (i64, i64), y: (i64, i64)) -> Self {
        Self {
            x: BigRational::new(x.0.into(), x.1.into()),
            y: BigRational::new(y.0.into(), y.1.into()),
        }
    }

    fn is_integral(&self) -> bool {
        self.x.is_integer() && self.y.is_integer()
    }
}

/// Result of checking one curve `y² = g(x)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CurveCheckReport {
    pub curve: String,
    pub equation: String,
    pub verified_points: Vec<CurvePoint>,
    /// Images of the verified points on the target curve of `map`.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub mapped_points: Vec<CurvePoint>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub map: Option<String>,
    /// Whether the coordinate change is an exact polynomial identity.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub map_identity: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub search_range: Option<i64>,
    pub extra_points: Vec<CurvePoint>,
    pub passed: bool,
}

fn on_curve(g: &IntPolynomial, pt: &CurvePoint) -> bool {
    &pt.y * &pt.y == g.eval_rational(&pt.x)
}

/// `(x, y) ↦ (u·x, v·y)` carries `y² = src(x)` onto `y² = dst(x)` exactly
/// when `dst(u·x) = v²·src(x)`.
fn substitution_identity(src: &IntPolynomial, dst: &IntPolynomial, u: &BigInt, v: &BigInt) -> bool {
    let ux = Polynomial::monomial(u.clone(), 1);
    dst.compose(&ux) == src.scale(&(v * v))
}

fn c1() -> IntPolynomial {
    int_poly(&[-12, 0, 12, 2])
}

fn c2() -> IntPolynomial {
    int_poly(&[-3072, 0, 48, 1])
}

fn c3() -> IntPolynomial {
    int_poly(&[-147, 0, 147, 21])
}

fn c4() -> IntPolynomial {
    Polynomial::new(vec![
        "-4053211077702843".parse().unwrap(),
        BigInt::from(0),
        BigInt::from(583443),
        BigInt::from(1),
    ])
}

/// Listed points on `y² = 21(x³ + 7x² − 7)`.
fn c3_points() -> Vec<CurvePoint> {
    let mut out = Vec::new();
    for (x, y) in [((-206, 189), (377, 567)), ((7, 3), (91, 3)), ((-14, 3), (91, 3))] {
        out.push(CurvePoint::new(x, y));
        out.push(CurvePoint::new(x, (-y.0, y.1)));
    }
    out
}

/// Integral points of `y² = x³ + 48x² − 3072` with `|x| ≤ bound`.
pub fn integral_points_c2(bound: i64) -> Vec<CurvePoint> {
    const CHUNK: i64 = 1 << 14;
    let starts: Vec<i64> = (-bound..=bound).step_by(CHUNK as usize).collect();
    let found: Vec<Vec<(i64, i64)>> = starts
        .par_iter()
        .map(|&lo| {
            let hi = (lo + CHUNK - 1).min(bound);
            let mut pts = Vec::new();
            for x in lo..=hi {
                let x128 = x as i128;
                let rhs = x128 * x128 * x128 + 48 * x128 * x128 - 3072;
                if rhs < 0 {
                    continue;
                }
                let r = (rhs as u128).isqrt();
                if r * r == rhs as u128 {
                    pts.push((x, r as i64));
                    if r != 0 {
                        pts.push((x, -(r as i64)));
                    }
                }
            }
            pts
        })
        .collect();
    found
        .into_iter()
        .flatten()
        .map(|(x, y)| CurvePoint::new((x, 1), (y, 1)))
        .collect()
}

pub fn curve_checks(search_bound: i64) -> Result<Vec<CurveCheckReport>> {
    let (u, v) = (
        BigInt::from(3u32.pow(5) * 7u32.pow(3)),
        BigInt::from(3u32.pow(7) * 7u32.pow(4)),
    );
    let (g3, g4) = (c3(), c4());
    let points = c3_points();
    let mut mapped = Vec::new();
    for pt in &points {
        if !on_curve(&g3, pt) {
            return Err(Error::Inconsistent(format!("({}, {}) is not on y^2 = 21(x^3+7x^2-7)", pt.x, pt.y)));
        }
        let image = CurvePoint {
            x: &pt.x * BigRational::from_integer(u.clone()),
            y: &pt.y * BigRational::from_integer(v.clone()),
        };
        if !image.is_integral() || !on_curve(&g4, &image) {
            return Err(Error::Inconsistent(format!("image of ({}, {}) is not an integral point", pt.x, pt.y)));
        }
        mapped.push(image);
    }
    let identity34 = substitution_identity(&g3, &g4, &u, &v)
        && &v * &v * 21 == pow(u.clone(), 3)
        && BigInt::from(583443) == &u * 7;
    let c34 = CurveCheckReport {
        curve: "C3".into(),
        equation: "y^2 = 21(x^3 + 7x^2 - 7)".into(),
        verified_points: points,
        mapped_points: mapped,
        map: Some("(x, y) -> (3^5 7^3 x, 3^7 7^4 y) onto y^2 = x^3 + 583443x^2 - 4053211077702843".into()),
        map_identity: Some(identity34),
        search_range: None,
        extra_points: Vec::new(),
        passed: identity34,
    };

    let identity12 = substitution_identity(&c1(), &c2(), &BigInt::from(8), &BigInt::from(16));
    let extra = integral_points_c2(search_bound);
    let c12 = CurveCheckReport {
        curve: "C2".into(),
        equation: "y^2 = x^3 + 48x^2 - 3072".into(),
        verified_points: Vec::new(),
        mapped_points: Vec::new(),
        map: Some("(x, y) -> (8x, 16y) from y^2 = 2(x^3 + 6x^2 - 6)".into()),
        map_identity: Some(identity12),
        search_range: Some(search_bound),
        passed: identity12 && extra.is_empty(),
        extra_points: extra,
    };
    Ok(vec![c34, c12])
}
