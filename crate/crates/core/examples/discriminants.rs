//! Trinomial discriminants three ways: the closed form, the Sylvester
//! resultant and the product of root differences over Q.

use arboreal::poly::{Trinomial, disc_oracle, discriminant, int_poly, iterate_disc_formula, trinomial_disc};
use num_bigint::BigInt;
use num_rational::BigRational;

fn main() -> arboreal::Result<()> {
    for (a, b) in [(6, -6), (7, -7), (3, 8)] {
        let t = Trinomial::new(3, 2, a, b)?;
        let f = t.polynomial();
        println!(
            "{t}: closed form {}, resultant {}, oracle {}",
            trinomial_disc(&t),
            discriminant(&f)?,
            disc_oracle(&f.to_rational())?
        );
    }

    // Iterates of x^3 + 6x^2 - 6 minus a constant.
    let f = int_poly(&[-6, 0, 6, 1]);
    for n in 1..=2 {
        for t in [0i64, 1, -5] {
            let t = BigRational::from_integer(BigInt::from(t));
            let g = f.iterate(n, 81)? - arboreal::poly::IntPolynomial::constant(t.to_integer());
            let formula = iterate_disc_formula(&f, n, &t)?;
            println!("n={n} t={t}: formula {formula}, resultant {}", discriminant(&g)?);
        }
    }
    Ok(())
}
