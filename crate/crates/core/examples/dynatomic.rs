//! The parameter polynomials phi_(C,n)(0) of x^d - Cd x^(d-1) + C(d-1)
//! and their dynatomic quotients.

use arboreal::dynamics::{dynatomic_at_zero, dynatomic_report, parameter_orbit};

fn main() -> arboreal::Result<()> {
    for d in 3..=5 {
        for l in dynatomic_report(d, 5)? {
            println!(
                "d={d} n={}: degree {}, leading {} ((d-1)^{:?}), simple roots of quotient {}",
                l.n, l.degree, l.leading, l.leading_exponent, l.dynatomic_simple_roots
            );
        }
    }
    let gs = parameter_orbit(3, 2)?;
    let (q, _) = dynatomic_at_zero(&gs, 2)?;
    println!("second quotient for d = 3: {q}");
    Ok(())
}
