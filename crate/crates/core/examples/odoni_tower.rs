//! Level certificates for x^p + kp x^(p-1) - kp and the mod-3 shortcut.

use arboreal::certificates::{Budgets, mod3_certificate, odoni_tower};
use arboreal::dynamics::OdoniPrimeFamily;

fn main() -> arboreal::Result<()> {
    let depth = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(8);
    let report = odoni_tower(&OdoniPrimeFamily::new(3, 2)?, &Budgets::with_depth(depth))?;
    for l in &report.levels {
        println!(
            "level {}: {:?} witness {}",
            l.n,
            l.verdict,
            l.evidence.witness_prime.as_deref().unwrap_or("-")
        );
    }
    println!("overall {:?}", report.overall);

    for p in [5u64, 7, 11, 13] {
        for k in [1u64, 4, 7] {
            if p == 7 && k == 7 {
                continue;
            }
            let m = mod3_certificate(p, k);
            println!("p={p} k={k}: applies {} fixed point {}", m.applies, m.fixed_point_reached);
        }
    }
    Ok(())
}
