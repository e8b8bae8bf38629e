//! Factoring over F_p: cycle types of unramified reductions and the
//! double-root shape at primes dividing a trinomial discriminant.

use arboreal::ff::{FpPolynomial, ShapeVerdict, cycle_type, fp_factor, shape_check};
use arboreal::poly::{Trinomial, trinomial_disc};

fn main() -> arboreal::Result<()> {
    let t = Trinomial::new(3, 2, 6, -6)?;
    let f = t.polynomial();
    for p in [5u64, 7, 11, 13, 17, 19] {
        match cycle_type(&f, p)? {
            Some(parts) => println!("{t} mod {p}: cycle type {parts:?}"),
            None => println!("{t} mod {p}: not squarefree"),
        }
    }

    let disc = trinomial_disc(&t);
    println!("disc = {disc}");
    for p in [3u64, 13] {
        match shape_check(&t, p)? {
            ShapeVerdict::RamifiedShape { eta, shape } => {
                println!("mod {p}: (x - {eta})^2 times factors {:?}", shape.parts)
            }
            other => println!("mod {p}: {other:?}"),
        }
    }

    let g = FpPolynomial::from_int(&arboreal::poly::int_poly(&[-1, 0, 0, 0, 0, 1]), 11)?;
    for (h, m) in fp_factor(&g)? {
        println!("x^5 - 1 mod 11: ({h})^{m}");
    }
    Ok(())
}
