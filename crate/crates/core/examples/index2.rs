//! The cubic x^3 + 7x^2 - 7 whose first level is not maximal.

use arboreal::certificates::{Budgets, index2_report};

fn main() -> arboreal::Result<()> {
    let report = index2_report(&Budgets::with_depth(6))?;
    for l in &report.levels {
        let e = &l.evidence;
        println!("level {}: {:?} square root {:?} {:?}", l.n, l.verdict, e.square_root, e.notes);
    }
    println!("overall {:?}", report.overall);
    Ok(())
}
