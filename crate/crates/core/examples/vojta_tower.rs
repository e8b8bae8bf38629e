//! Certificates for x^d - cd x^(d-1) + c(d-1): primitive parts of the
//! critical orbit, rigid divisibility and height growth.

use arboreal::certificates::{Budgets, bd_membership_evidence, vojta_tower};
use arboreal::dynamics::{VojtaFamily, height_growth_check, primitive_part, verify_rigid_divisibility};

fn main() -> arboreal::Result<()> {
    let family = VojtaFamily::new(3, 2)?;
    let report = vojta_tower(&family, &Budgets::with_depth(4))?;
    for c in &report.checks {
        println!("{}: {} {}", c.name, c.passed, c.detail);
    }
    for l in &report.levels {
        println!("level {}: {:?} stripped {:?}", l.n, l.verdict, l.evidence.stripped);
    }

    for (d, c) in [(3, 1), (3, 2), (4, 1)] {
        let f = VojtaFamily::new(d, c)?;
        let rigid = verify_rigid_divisibility(&f, 6, 1000)?;
        let parts: Vec<String> = (1..=4).map(|n| primitive_part(&f, n).map(|p| p.signed().to_string())).collect::<Result<_, _>>()?;
        let heights = height_growth_check(&f, 6)?;
        println!(
            "(d, c) = ({d}, {c}): rigid {}, primitive parts {parts:?}, heights hold {}",
            rigid.is_rigid(),
            heights.iter().all(|r| r.holds)
        );
    }

    for (d, c) in [(3, 5), (4, 3), (4, 2)] {
        let bd = bd_membership_evidence(d, c, 3, 729)?;
        println!("d={d} c={c}: eisenstein at c {:?}, coprime {}", bd.eisenstein_at_c, bd.coprime);
    }
    Ok(())
}
