//! End-to-end acceptance checks. Each criterion prints one PASS/FAIL line;
//! the process exits nonzero if any fails.

use std::time::{Duration, Instant};

use arboreal::certificates::{
    Budgets, Overall, Verdict, curve_checks, density_experiment, index2_report, integral_points_c2, mod3_certificate,
    odoni_tower,
};
use arboreal::dynamics::{
    OdoniPrimeFamily, TrinomialFamily, VojtaFamily, dynatomic_at_zero, dynatomic_report, height_growth_check,
    parameter_orbit, primitive_part, verify_rigid_divisibility,
};
use arboreal::ff::{FpPolynomial, ShapeVerdict, fp_factor, shape_check};
use arboreal::galois::{
    DEFAULT_ORDER_CAP, exact_cycle_distribution, frobenius_distribution, index2_candidate, total_variation,
    total_variation_exact, wreath_generators,
};
use arboreal::poly::{IntPolynomial, Trinomial, disc_oracle, int_poly, iterate_disc_formula, trinomial_disc};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Largest total variation accepted between sampled and exact distributions.
const TV_TOLERANCE: f64 = 0.02;
/// Bound for the integral point search on x^3 + 48x^2 - 3072.
const C2_BOUND: i64 = 1_000_000;
/// Frozen proportions for x^3 + 6x^2 - 6, a0 = 2, at X = 10^3, 10^4, 10^5.
const DENSITY_FROZEN: [(u64, usize, usize); 3] = [(1_000, 9, 168), (10_000, 16, 1229), (100_000, 49, 9592)];

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond { Ok(()) } else { Err(msg()) }
}

fn lib<T>(r: arboreal::Result<T>) -> Result<T, String> {
    r.map_err(|e| e.to_string())
}

fn q(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// Random x^d + A x^s + B with 3 <= d <= 8, gcd(d, s) = 1 and A, B nonzero.
fn random_trinomial(rng: &mut ChaCha8Rng, coeff: i64) -> Trinomial {
    loop {
        let d: u32 = rng.gen_range(3..=8);
        let s: u32 = rng.gen_range(1..d);
        if d.gcd(&s) != 1 {
            continue;
        }
        let a: i64 = rng.gen_range(1..=coeff) * if rng.gen_bool(0.5) { 1 } else { -1 };
        let b: i64 = rng.gen_range(1..=coeff) * if rng.gen_bool(0.5) { 1 } else { -1 };
        return Trinomial::new(d, s, a, b).unwrap();
    }
}

fn is_square(n: &BigInt) -> bool {
    !n.is_negative() && {
        let r = n.sqrt();
        &r * &r == *n
    }
}

fn remove_primes(mut n: BigInt, primes: &[i64]) -> BigInt {
    for &p in primes {
        let p = BigInt::from(p);
        while !n.is_zero() && (&n % &p).is_zero() {
            n /= &p;
        }
    }
    n
}

fn v_p(mut n: BigInt, p: i64) -> i64 {
    let p = BigInt::from(p);
    let mut v = 0;
    while (&n % &p).is_zero() {
        n /= &p;
        v += 1;
    }
    v
}

fn pow_mod(b: u64, mut e: u64, p: u64) -> u64 {
    let (p, mut b, mut r) = (p as u128, (b % p) as u128, 1u128);
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    r as u64
}

fn inv(a: u64, p: u64) -> u64 {
    pow_mod(a, p - 2, p)
}

fn residue(n: &BigInt, p: u64) -> u64 {
    n.mod_floor(&BigInt::from(p)).to_u64().unwrap()
}

fn c1_discriminants() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0xd15c);
    let samples = 60;
    for _ in 0..samples {
        let t = random_trinomial(&mut rng, 50);
        let oracle = lib(disc_oracle(&t.polynomial().to_rational()))?;
        ensure(BigRational::from_integer(trinomial_disc(&t)) == oracle, || format!("{t}: formula != oracle"))?;
    }
    for (a, b, expected) in [(6, -6, 4212), (7, -7, 8281)] {
        let t = Trinomial::new(3, 2, a, b).unwrap();
        let got = trinomial_disc(&t);
        ensure(got == BigInt::from(expected), || format!("{t}: {got}"))?;
        ensure(lib(disc_oracle(&t.polynomial().to_rational()))? == q(expected), || format!("{t}: oracle"))?;
    }
    ensure(BigInt::from(91).pow(2) == BigInt::from(8281), || "8281 is not 91^2".into())?;
    Ok(format!("{samples} random trinomials plus 4212 and 8281 = 91^2"))
}

fn c2_iterate_discriminants() -> Outcome {
    let f = int_poly(&[-6, 0, 6, 1]);
    let mut count = 0;
    for n in 1..=2 {
        let g = lib(f.iterate(n, 81))?;
        for t in [0i64, 1, -5] {
            let shifted = g.clone() - IntPolynomial::constant(BigInt::from(t));
            let oracle = lib(disc_oracle(&shifted.to_rational()))?;
            let formula = lib(iterate_disc_formula(&f, n, &q(t)))?;
            ensure(formula == oracle, || format!("n={n} t={t}: {formula} != {oracle}"))?;
            count += 1;
        }
    }
    Ok(format!("{count} exact equalities"))
}

fn c3_odoni_tower() -> Outcome {
    let family = lib(OdoniPrimeFamily::new(3, 2))?;
    let report = lib(odoni_tower(&family, &Budgets::with_depth(8)))?;
    report.validate()?;
    ensure(report.levels.len() == 8, || "expected 8 levels".into())?;
    for l in &report.levels {
        ensure(l.verdict == Verdict::Maximal, || format!("level {} is {:?}", l.n, l.verdict))?;
    }
    ensure(matches!(report.overall, Overall::SurjectiveEvidence { depth: 8 }), || format!("{:?}", report.overall))?;
    let w1 = report.levels[0].evidence.witness_prime.as_deref();
    ensure(w1 == Some("13"), || format!("level-1 witness {w1:?}"))?;
    let s2 = report.levels[1].evidence.stripped.as_deref();
    ensure(s2 == Some("10813"), || format!("level-2 stripped {s2:?}"))?;

    // Independent orbit of a = -4 under x^3 + 6x^2 - 6, with 2 and 3 removed.
    let mut m = BigInt::from(-4);
    for n in 1..=8usize {
        m = &m * &m * &m + BigInt::from(6) * &m * &m - BigInt::from(6);
        let stripped = remove_primes(m.abs(), &[2, 3]);
        ensure(!is_square(&stripped), || format!("oracle: level {n} stripped value is a square"))?;
        let digits = stripped.to_string().len();
        ensure(report.levels[n - 1].evidence.stripped_digits == Some(digits), || {
            format!("level {n}: digit count disagrees with oracle")
        })?;
    }
    ensure(remove_primes(BigInt::from(-4 * 16 + 6 * 16 - 6), &[2, 3]) == BigInt::from(13), || "oracle level 1".into())?;
    Ok("levels 1..8 maximal, witness 13, stripped 10813".into())
}

fn c4_mod3() -> Outcome {
    let mut pairs = 0;
    for p in [5u64, 7, 11, 13] {
        for k in [1u64, 4, 7] {
            if k % p == 0 {
                continue;
            }
            let cert = mod3_certificate(p, k);
            ensure(cert.applies && cert.fixed_point_reached, || format!("p={p} k={k}: {cert:?}"))?;
            let family = lib(OdoniPrimeFamily::new(p, k))?;
            let report = lib(odoni_tower(&family, &Budgets::with_depth(3)))?;
            ensure(report.verdicts().iter().all(|v| *v == Verdict::Maximal), || {
                format!("p={p} k={k}: direct levels {:?}", report.verdicts())
            })?;
            ensure(matches!(&report.overall, Overall::SurjectiveProof { method, .. } if method == "mod3_fixed_point"), || {
                format!("p={p} k={k}: {:?}", report.overall)
            })?;
            // Oracle: phi^n(a) = -1 mod 3 for n = 1..3, with a = -k(p-1).
            let f = family.polynomial();
            let mut x = BigInt::from(-(k as i64) * (p as i64 - 1));
            for n in 1..=3 {
                x = f.evaluate(&x);
                ensure(residue(&x, 3) == 2, || format!("p={p} k={k}: phi^{n}(a) mod 3 = {}", residue(&x, 3)))?;
            }
            pairs += 1;
        }
    }
    Ok(format!("{pairs} pairs, direct levels 1..3 agree"))
}

fn c5_index2() -> Outcome {
    let report = lib(index2_report(&Budgets::with_depth(6)))?;
    report.validate()?;
    let verdicts = report.verdicts();
    let mut expected = vec![Verdict::Maximal; 6];
    expected[0] = Verdict::NotMaximal;
    ensure(verdicts == expected, || format!("{verdicts:?}"))?;
    let root = report.levels[0].evidence.square_root.as_deref();
    ensure(root == Some("91/3"), || format!("witness {root:?}"))?;

    let f = TrinomialFamily::index2().polynomial().to_rational();
    let mut x = BigRational::new(BigInt::from(-14), BigInt::from(3));
    for n in 1..=6u32 {
        x = f.evaluate(&x);
        if n == 1 {
            let w = BigRational::new(BigInt::from(91), BigInt::from(3));
            ensure(&x * q(21) == &w * &w, || format!("21 phi(a) = {}", &x * q(21)))?;
        }
        ensure(v_p(x.numer().clone(), 7) == 1, || format!("v_7 at level {n}"))?;
        ensure(v_p(x.denom().clone(), 3) == 3i64.pow(n), || format!("v_3 at level {n}"))?;
        ensure(!x.numer().is_multiple_of(&BigInt::from(3)), || format!("numerator divisible by 3 at level {n}"))?;
    }
    Ok("level 1 square (91/3)^2, levels 2..6 maximal, v_7 = 1, v_3 = -3^n".into())
}

fn c6_curves() -> Outcome {
    let c3 = |x: &BigRational| q(21) * (x * x * x + q(7) * x * x - q(7));
    let c4 = |x: &BigRational| x * x * x + q(583443) * x * x - q(4053211077702843);
    let r = |n: i64, d: i64| BigRational::new(BigInt::from(n), BigInt::from(d));
    let pairs = [(r(-206, 189), r(377, 567)), (r(7, 3), r(91, 3)), (r(-14, 3), r(91, 3))];
    let (u, v) = (q(3i64.pow(5) * 7i64.pow(3)), q(3i64.pow(7) * 7i64.pow(4)));
    for (x, y) in &pairs {
        for y in [y.clone(), -y.clone()] {
            ensure(&y * &y == c3(x), || format!("({x}, {y}) not on C3"))?;
            let (mapped_x, mapped_y) = (&u * x, &v * &y);
            ensure(mapped_x.is_integer() && mapped_y.is_integer(), || format!("({x}, {y}) maps to a non-integral point"))?;
            ensure(&mapped_y * &mapped_y == c4(&mapped_x), || format!("({x}, {y}) image not on C4"))?;
        }
    }
    // (8x, 16y): C2(8x) = 256 * C1(x) as polynomials.
    let c1 = int_poly(&[-12, 0, 12, 2]);
    let c2 = int_poly(&[-3072, 0, 48, 1]);
    let lhs = c2.compose(&int_poly(&[0, 8]));
    ensure(lhs == c1.scale(&BigInt::from(256)), || format!("C2(8x) = {lhs}"))?;

    let reports = lib(curve_checks(C2_BOUND))?;
    ensure(reports.iter().all(|r| r.passed), || "a curve report failed".into())?;
    let found = integral_points_c2(C2_BOUND);
    ensure(found.is_empty(), || format!("{} integral points", found.len()))?;
    Ok(format!("3 point pairs on C3 map into C4, (8x,16y) identity, no integral points for |x| <= {C2_BOUND}"))
}

fn c7_chebotarev() -> Outcome {
    let mut full = lib(wreath_generators(3, 2))?;
    let mut sub = lib(index2_candidate(2))?;
    let orders = (lib(full.enumerate(DEFAULT_ORDER_CAP))?, lib(sub.enumerate(DEFAULT_ORDER_CAP))?);
    ensure(orders == (1296, 648), || format!("orders {orders:?}"))?;
    let d1296 = lib(exact_cycle_distribution(&full))?;
    let d648 = lib(exact_cycle_distribution(&sub))?;
    let tau = lib(total_variation_exact(&d1296, &d648))?;
    let half_tau = tau.to_f64().unwrap() / 2.0;

    let odoni = lib(lib(OdoniPrimeFamily::new(3, 2))?.polynomial().iterate(2, 81))?;
    let index2 = lib(TrinomialFamily::index2().polynomial().iterate(2, 81))?;
    let e1 = lib(frobenius_distribution(&odoni, 2, 100_000))?;
    let e2 = lib(frobenius_distribution(&index2, 2, 100_000))?;
    let tv1 = lib(total_variation(&e1, &d1296))?;
    let tv2 = lib(total_variation(&e2, &d648))?;
    let gap = lib(total_variation(&e2, &d1296))?;
    ensure(tv1 <= TV_TOLERANCE, || format!("TV(odoni, D1296) = {tv1:.4}"))?;
    ensure(tv2 <= TV_TOLERANCE, || format!("TV(index2, D648) = {tv2:.4}"))?;
    ensure(gap >= half_tau, || format!("TV(index2, D1296) = {gap:.4} < tau*/2 = {half_tau:.4}"))?;
    Ok(format!("orders 1296/648, tau* = {tau}, TV {tv1:.4} and {tv2:.4}, gap {gap:.4}"))
}

fn c8_dynatomic() -> Outcome {
    for d in 3..=5u32 {
        for l in lib(dynatomic_report(d, 5))? {
            ensure(l.squarefree_prime.is_some(), || format!("d={d} n={}: squarefree not certified", l.n))?;
            // Oracle: |leading| is a positive power of d - 1.
            let mut lead = l.leading.abs();
            let mut m = 0;
            while (&lead % (d - 1)).is_zero() && !lead.is_one() {
                lead /= d - 1;
                m += 1;
            }
            ensure(lead.is_one() && m >= 1, || format!("d={d} n={}: leading {}", l.n, l.leading))?;
            ensure(l.leading_exponent == Some(m), || format!("d={d} n={}: exponent", l.n))?;
            if l.n >= 3 {
                ensure(l.dynatomic_simple_roots >= 3, || format!("d={d} n={}: simple roots", l.n))?;
            }
        }
    }
    let gs = lib(parameter_orbit(3, 2))?;
    let (quotient, _) = lib(dynatomic_at_zero(&gs, 2))?;
    ensure(quotient == int_poly(&[1, 0, -2]), || format!("Phi_(C,2)(0) = {quotient}"))?;
    Ok("d = 3, 4, 5 and n <= 5; Phi_(C,2)(0) = -2C^2 + 1".into())
}

fn c9_rigid() -> Outcome {
    for (d, c) in [(3u32, 1u64), (3, 2), (4, 1)] {
        let family = lib(VojtaFamily::new(d, c))?;
        let report = lib(verify_rigid_divisibility(&family, 6, 1000))?;
        ensure(report.is_rigid(), || format!("({d},{c}): {:?}", report.violations))?;
        for n in 1..=6 {
            lib(primitive_part(&family, n))?;
        }
        // Oracle orbit of 0 for the height inequalities.
        let f = family.polynomial();
        let mut orbit = vec![BigInt::zero()];
        for _ in 0..7 {
            let next = f.evaluate(orbit.last().unwrap());
            orbit.push(next);
        }
        let rows = lib(height_growth_check(&family, 6))?;
        ensure(rows.len() == 4, || "expected n = 3..6".into())?;
        for row in rows {
            let n = row.n as usize;
            let h_next = orbit[n + 1].abs();
            let step = BigInt::from(c) * num_traits::pow(orbit[n].abs(), d as usize - 1);
            let lower = num_traits::pow(BigInt::from(c * (d as u64 - 1)), (d as usize - 1).pow(n as u32 - 3));
            ensure(row.height_next == h_next, || format!("({d},{c}) n={n}: height"))?;
            ensure(h_next >= step && h_next >= lower && row.holds, || format!("({d},{c}) n={n}: inequality"))?;
        }
    }
    Ok("(3,1), (3,2), (4,1) rigid to depth 6, primitive parts integral, heights hold for n = 3..6".into())
}

fn c10_density() -> Outcome {
    let f = lib(OdoniPrimeFamily::new(3, 2))?.polynomial();
    let table = lib(density_experiment(&f, &q(2), 100_000, &[1_000, 10_000]))?;
    let rows: Vec<(u64, usize, usize)> = table.rows.iter().map(|r| (r.bound, r.members, r.primes)).collect();
    for row in &table.rows {
        println!("    density X = {:>6}: {}/{} = {:.6}", row.bound, row.members, row.primes, row.proportion);
    }
    ensure(rows == DENSITY_FROZEN, || format!("rows {rows:?}"))?;
    ensure(table.rows[2].proportion < table.rows[0].proportion, || "proportion did not drop".into())?;

    // Oracle at X = 10^3: walk the orbit of 2 mod p until it repeats.
    let mut members = 0;
    for p in (2u64..=1000).filter(|&p| (2..p).take_while(|i| i * i <= p).all(|i| p % i != 0)) {
        let step = |x: u64| ((x * x % p * x + 6 * x % p * x) % p + p - 6 % p) % p;
        let mut seen = vec![false; p as usize];
        let mut x = 2 % p;
        while !seen[x as usize] {
            if x == 0 {
                members += 1;
                break;
            }
            seen[x as usize] = true;
            x = step(x);
        }
    }
    ensure(members == DENSITY_FROZEN[0].1, || format!("oracle members at 10^3: {members}"))?;
    Ok("9/168 > 16/1229 > 49/9592".into())
}

fn c11_shape() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5a9e);
    let small_primes: Vec<u64> = (2u64..5000).filter(|&p| (2..p).take_while(|i| i * i <= p).all(|i| p % i != 0)).collect();
    let mut checked = 0;
    let mut tries = 0;
    while checked < 100 {
        tries += 1;
        ensure(tries < 100_000, || format!("only {checked} ramified samples found"))?;
        let t = random_trinomial(&mut rng, 60);
        let disc = trinomial_disc(&t);
        let (d, s) = (t.d as u64, t.s as u64);
        let Some(&p) = small_primes.iter().find(|&&p| {
            residue(&disc, p) == 0
                && residue(&t.a, p) != 0
                && residue(&t.b, p) != 0
                && d % p != 0
                && s % p != 0
                && (d - s) % p != 0
        }) else {
            continue;
        };
        let ShapeVerdict::RamifiedShape { eta, shape } = lib(shape_check(&t, p))? else {
            return Err(format!("{t} mod {p}: not the ramified shape"));
        };
        let (a, b) = (residue(&t.a, p), residue(&t.b, p));
        let neg = |x: u64| (p - x % p) % p;
        let eta_ds = neg(s % p * a % p * inv(d % p, p) % p);
        let eta_s = neg(d % p * b % p * inv((d - s) % p * a % p, p) % p);
        ensure(pow_mod(eta, d - s, p) == eta_ds && pow_mod(eta, s, p) == eta_s, || {
            format!("{t} mod {p}: eta = {eta} misses the congruences")
        })?;
        let f = lib(FpPolynomial::from_int(&t.polynomial(), p))?;
        ensure(f.evaluate(eta) == 0 && f.derivative().evaluate(eta) == 0, || format!("{t} mod {p}: eta not double"))?;
        let factors = lib(fp_factor(&f))?;
        let repeated: Vec<_> = factors.iter().filter(|(_, m)| *m > 1).collect();
        ensure(
            repeated.len() == 1 && repeated[0].1 == 2 && repeated[0].0.degree() == Some(1) && repeated[0].0.evaluate(eta) == 0,
            || format!("{t} mod {p}: repeated factors {repeated:?}"),
        )?;
        let total: usize = factors.iter().map(|(g, m)| g.degree().unwrap() * *m as usize).sum();
        ensure(total == d as usize, || format!("{t} mod {p}: degrees sum to {total}"))?;
        ensure(shape.parts.iter().filter(|&&(_, m)| m > 1).count() == 1, || format!("{t}: shape {shape:?}"))?;
        checked += 1;
    }
    Ok(format!("{checked} ramified reductions from {tries} samples"))
}

fn main() {
    let criteria: [(&str, Duration, fn() -> Outcome); 11] = [
        ("1 discriminant formula", Duration::from_secs(5), c1_discriminants),
        ("2 iterate discriminant", Duration::from_secs(30), c2_iterate_discriminants),
        ("3 odoni tower (3,2)", Duration::from_secs(60), c3_odoni_tower),
        ("4 mod-3 shortcut", Duration::from_secs(60), c4_mod3),
        ("5 index-2 example", Duration::from_secs(30), c5_index2),
        ("6 curve verifications", Duration::from_secs(60), c6_curves),
        ("7 wreath and frobenius", Duration::from_secs(300), c7_chebotarev),
        ("8 dynatomic", Duration::from_secs(60), c8_dynatomic),
        ("9 rigid divisibility", Duration::from_secs(60), c9_rigid),
        ("10 density", Duration::from_secs(300), c10_density),
        ("11 ramified shape", Duration::from_secs(60), c11_shape),
    ];
    let mut failed = 0;
    for (name, limit, check) in criteria {
        let started = Instant::now();
        let result = std::panic::catch_unwind(check).unwrap_or_else(|_| Err("panicked".into()));
        let elapsed = started.elapsed();
        let result = result.and_then(|msg| {
            if elapsed <= limit {
                Ok(msg)
            } else {
                Err(format!("{msg}, but took {elapsed:.1?} > {limit:?}"))
            }
        });
        match result {
            Ok(msg) => println!("PASS  {name:<24} {elapsed:>9.2?}  {msg}"),
            Err(msg) => {
                failed += 1;
                println!("FAIL  {name:<24} {elapsed:>9.2?}  {msg}");
            }
        }
    }
    println!("{} of 11 criteria passed", 11 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
