//! Rational points on the two curves attached to the cubic families and a
//! bounded search for integral points.

use arboreal::certificates::curve_checks;

fn main() -> arboreal::Result<()> {
    let bound = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(100_000);
    for r in curve_checks(bound)? {
        println!("{} {}: passed {}", r.curve, r.equation, r.passed);
        for p in &r.verified_points {
            println!("  ({}, {})", p.x, p.y);
        }
        if let Some(m) = &r.map {
            println!("  {m}: {:?}", r.map_identity);
        }
        println!("  extra integral points: {}", r.extra_points.len());
    }
    Ok(())
}
