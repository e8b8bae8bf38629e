//! Proportion of primes p for which the orbit of a0 meets 0 mod p.

use arboreal::certificates::density_experiment;
use arboreal::dynamics::OdoniPrimeFamily;
use num_bigint::BigInt;
use num_rational::BigRational;

fn main() -> arboreal::Result<()> {
    let bound = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(100_000);
    let f = OdoniPrimeFamily::new(3, 2)?.polynomial();
    let table = density_experiment(&f, &BigRational::from_integer(BigInt::from(2)), bound, &[1_000, 10_000])?;
    for row in &table.rows {
        println!("X = {:>7}: {:>5} of {:>5} primes, {:.5}", row.bound, row.members, row.primes, row.proportion);
    }
    Ok(())
}
