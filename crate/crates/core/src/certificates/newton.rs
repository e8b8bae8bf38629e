use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::arith::{Valuation, is_prime_u64, valuation};
use crate::error::{Error, Result};
use crate::poly::{IntPolynomial, Trinomial};

/// An edge of the lower convex hull.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Segment {
    pub start: (usize, i64),
    pub end: (usize, i64),
    /// Reduced slope as `"num/den"` (or an integer).
    pub slope: String,
    /// Horizontal length.
    pub length: usize,
    /// Number of lattice steps along the edge.
    pub lattice_length: usize,
}

impl Segment {
    fn new(start: (usize, i64), end: (usize, i64)) -> Self {
        let run = end.0 - start.0;
        let rise = end.1 - start.1;
        let slope = Ratio::new(rise, run as i64);
        Self {
            start,
            end,
            slope: slope.to_string(),
            length: run,
            lattice_length: run.gcd(&(rise.unsigned_abs() as usize)),
        }
    }

    pub fn slope(&self) -> Ratio<i64> {
        Ratio::new(self.end.1 - self.start.1, self.length as i64)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NewtonPolygon {
    pub prime: u64,
    /// `(i, v_p(cᵢ))` for every nonzero coefficient.
    pub points: Vec<(usize, i64)>,
    pub vertices: Vec<(usize, i64)>,
    pub segments: Vec<Segment>,
}

fn cross(o: (usize, i64), a: (usize, i64), b: (usize, i64)) -> i128 {
    let (ox, oy) = (o.0 as i128, o.1 as i128);
    (a.0 as i128 - ox) * (b.1 as i128 - oy) - (a.1 as i128 - oy) * (b.0 as i128 - ox)
}

pub fn newton_polygon(f: &IntPolynomial, p: u64) -> Result<NewtonPolygon> {
    if !is_prime_u64(p) {
        return Err(Error::NotPrime(BigInt::from(p)));
    }
    if f.is_zero() {
        return Err(Error::Zero { op: "newton_polygon" });
    }
    let pb = BigInt::from(p);
    let mut points = Vec::new();
    for (i, c) in f.coeffs().iter().enumerate() {
        if let Valuation::Finite(v) = valuation(c, &pb)? {
            points.push((i, v));
        }
    }
    let mut vertices: Vec<(usize, i64)> = Vec::new();
    for &pt in &points {
        while vertices.len() >= 2 && cross(vertices[vertices.len() - 2], vertices[vertices.len() - 1], pt) <= 0 {
            vertices.pop();
        }
        vertices.push(pt);
    }
    let segments = vertices.windows(2).map(|w| Segment::new(w[0], w[1])).collect();
    Ok(NewtonPolygon {
        prime: p,
        points,
        vertices,
        segments,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NewtonCertificate {
    pub certified: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
    pub polygon: NewtonPolygon,
}

/// Total ramification of the degree-`(d−1)` local factor of
/// `x^d + A·x^(d−1) + B` at `p`, read off the polygon: needs `p | B`,
/// `p ∤ A` and `gcd(d−1, v_p(B)) = 1`.
pub fn newton_polygon_certificate(t: &Trinomial, p: u64) -> Result<NewtonCertificate> {
    let polygon = newton_polygon(&t.polynomial(), p)?;
    let pb = BigInt::from(p);
    let vb = valuation(&t.b, &pb)?.finite().unwrap_or(0);
    let va = valuation(&t.a, &pb)?.finite().unwrap_or(0);
    let reason = if t.s != t.d - 1 {
        Some(format!("s = {} is not d - 1", t.s))
    } else if vb < 1 {
        Some("p does not divide B".into())
    } else if va != 0 {
        Some("p divides A".into())
    } else if (t.d as i64 - 1).gcd(&vb) != 1 {
        Some(format!("gcd(d - 1, v_p(B)) = {}", (t.d as i64 - 1).gcd(&vb)))
    } else {
        None
    };
    if reason.is_none() {
        let expected = [
            Segment::new((0, vb), (t.d as usize - 1, 0)),
            Segment::new((t.d as usize - 1, 0), (t.d as usize, 0)),
        ];
        if polygon.segments != expected {
            return Err(Error::Inconsistent(format!("unexpected polygon {:?}", polygon.vertices)));
        }
    }
    Ok(NewtonCertificate {
        certified: reason.is_none(),
        reason,
        polygon,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::int_poly;
    use proptest::prelude::*;

    #[test]
    fn certificate_examples() {
        let t = Trinomial::new(5, 4, 3, 8).unwrap();
        let c = newton_polygon_certificate(&t, 2).unwrap();
        assert!(c.certified);
        assert_eq!(c.polygon.vertices, vec![(0, 3), (4, 0), (5, 0)]);
        assert_eq!(c.polygon.segments[0].slope, "-3/4");
        assert_eq!(c.polygon.segments[0].lattice_length, 1);
        assert_eq!(c.polygon.segments[1].slope, "0");
        let c = newton_polygon_certificate(&Trinomial::new(5, 4, 2, 8).unwrap(), 2).unwrap();
        assert!(!c.certified);
        assert_eq!(c.reason.as_deref(), Some("p divides A"));
        let c = newton_polygon_certificate(&Trinomial::new(3, 2, 6, -6).unwrap(), 2).unwrap();
        assert!(!c.certified);
        let c = newton_polygon_certificate(&Trinomial::new(5, 4, 1, 4).unwrap(), 2).unwrap();
        assert_eq!(c.reason.as_deref(), Some("gcd(d - 1, v_p(B)) = 2"));
    }

    #[test]
    fn hull_with_interior_point() {
        // x⁴ + 4x³ + 2x² + 2x + 8 at 2: (0,3),(1,1),(2,1),(3,2),(4,0)
        let g = newton_polygon(&int_poly(&[8, 2, 2, 4, 1]), 2).unwrap();
        assert_eq!(g.vertices, vec![(0, 3), (1, 1), (4, 0)]);
    }

    proptest! {
        #[test]
        fn hull_is_convex_and_spans_degree(coeffs in prop::collection::vec(-200i64..200, 2..9)) {
            let mut coeffs = coeffs;
            coeffs.push(1);
            prop_assume!(coeffs[0] != 0);
            let f = int_poly(&coeffs);
            let g = newton_polygon(&f, 2).unwrap();
            let total: usize = g.segments.iter().map(|s| s.length).sum();
            prop_assert_eq!(total, f.degree().unwrap());
            for w in g.segments.windows(2) {
                prop_assert!(w[0].slope() < w[1].slope());
            }
            for &(i, v) in &g.points {
                for s in &g.segments {
                    if s.start.0 <= i && i <= s.end.0 {
                        let line = Ratio::from_integer(s.start.1) + s.slope() * Ratio::from_integer((i - s.start.0) as i64);
                        prop_assert!(Ratio::from_integer(v) >= line);
                    }
                }
            }
        }

        #[test]
        fn certified_steep_segment_is_primitive(vb in 1u32..8, d in 3u32..9, a in 1i64..50, u in 1i64..50) {
            prop_assume!(a % 2 != 0 && u % 2 != 0);
            let b = BigInt::from(u) * num_traits::pow(BigInt::from(2), vb as usize);
            let t = Trinomial::new(d, d - 1, a, b).unwrap();
            let c = newton_polygon_certificate(&t, 2).unwrap();
            prop_assert_eq!(c.certified, (d as u64 - 1).gcd(&(vb as u64)) == 1);
            if c.certified {
                prop_assert_eq!(c.polygon.segments[0].lattice_length, 1);
            }
        }
    }
}
