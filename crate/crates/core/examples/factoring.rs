//! Budgeted integer factoring, p-adic valuations and support stripping.

use arboreal::arith::{FactorBudget, SupportSet, factor, strip_support, valuation};
use num_bigint::BigInt;

fn main() -> arboreal::Result<()> {
    let budget = FactorBudget::default();
    let n: BigInt = "517746556424358417563523510977163682813".parse().unwrap();
    let fm = factor(&n, &budget)?;
    println!("{n} = {:?} cofactor {} ({:?})", fm.factors, fm.cofactor, fm.cofactor_status);

    let m = BigInt::from(-6) * BigInt::from(3).pow(4) * BigInt::from(10813);
    let support = SupportSet::new([2u64, 3])?;
    let (stripped, removed) = strip_support(&m, &support)?;
    println!("{m}: stripped {stripped}, removed {:?}", removed.factors);
    println!("v_3({m}) = {}", valuation(&m, &BigInt::from(3))?);
    Ok(())
}
