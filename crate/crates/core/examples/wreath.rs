//! Enumerating iterated wreath products on the leaves of a ternary tree and
//! their conjugacy classes.

use arboreal::galois::{
    DEFAULT_ORDER_CAP, conjugacy_classes, exact_cycle_distribution, index2_candidate, wreath_generators, wreath_order,
};

fn main() -> arboreal::Result<()> {
    for (d, n) in [(2, 3), (3, 1), (3, 2)] {
        let mut g = wreath_generators(d, n)?;
        let order = g.enumerate(DEFAULT_ORDER_CAP)?;
        println!("[S_{d}]^{n}: order {order} (formula {})", wreath_order(d as u64, n));
    }
    let mut h = index2_candidate(2)?;
    h.enumerate(DEFAULT_ORDER_CAP)?;
    println!("index-2 candidate: order {}, {} classes", h.order().unwrap_or(0), conjugacy_classes(&h)?.len());
    for (k, c) in &exact_cycle_distribution(&h)?.counts {
        println!("  {k:<20} {c}");
    }
    Ok(())
}
