//! Compare factorization statistics of second iterates with the exact
//! cycle-type distributions of the candidate Galois images.

use arboreal::dynamics::{OdoniPrimeFamily, TrinomialFamily};
use arboreal::galois::{
    DEFAULT_ORDER_CAP, exact_cycle_distribution, frobenius_distribution, index2_candidate, total_variation,
    total_variation_exact, wreath_generators,
};

fn main() -> arboreal::Result<()> {
    let bound: u64 = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(100_000);

    let mut full = wreath_generators(3, 2)?;
    full.enumerate(DEFAULT_ORDER_CAP)?;
    let mut sub = index2_candidate(2)?;
    sub.enumerate(DEFAULT_ORDER_CAP)?;
    let d1296 = exact_cycle_distribution(&full)?;
    let d648 = exact_cycle_distribution(&sub)?;
    let tau = total_variation_exact(&d1296, &d648)?;
    println!("orders {} and {}, tau* = {tau}", d1296.total, d648.total);

    let odoni = OdoniPrimeFamily::new(3, 2)?.polynomial().iterate(2, 81)?;
    let index2 = TrinomialFamily::index2().polynomial().iterate(2, 81)?;
    for (name, f) in [("x^3+6x^2-6", &odoni), ("x^3+7x^2-7", &index2)] {
        let emp = frobenius_distribution(f, 2, bound)?;
        println!(
            "{name}: {} primes ({} skipped), TV to full {:.4}, TV to index-2 {:.4}",
            emp.total,
            emp.skipped,
            total_variation(&emp, &d1296)?,
            total_variation(&emp, &d648)?
        );
    }
    Ok(())
}
