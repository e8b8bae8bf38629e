//! Cross-module invariants checked on generated inputs.

use arboreal::arith::{FactorBudget, SupportSet, factor, strip_support};
use arboreal::certificates::{Budgets, Verdict, newton_polygon_certificate, odoni_tower, vojta_tower};
use arboreal::dynamics::{OdoniPrimeFamily, VojtaFamily, primitive_part};
use arboreal::ff::{FpPolynomial, cycle_type, fp_factor};
use arboreal::galois::{DEFAULT_ORDER_CAP, exact_cycle_distribution, wreath_generators, wreath_order};
use arboreal::poly::{Trinomial, disc_oracle, discriminant, trinomial_disc};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed};
use proptest::prelude::*;

fn coprime_trinomial() -> impl Strategy<Value = Trinomial> {
    (3u32..=8, 1u32..8, -40i64..=40, -40i64..=40)
        .prop_filter("valid", |&(d, s, a, b)| s < d && d.gcd(&s) == 1 && a != 0 && b != 0)
        .prop_map(|(d, s, a, b)| Trinomial::new(d, s, a, b).unwrap())
}

const PRIMES: [u64; 8] = [2, 3, 5, 7, 11, 13, 101, 65537];

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn closed_form_resultant_and_oracle_agree(t in coprime_trinomial()) {
        let formula = trinomial_disc(&t);
        prop_assert_eq!(&formula, &discriminant(&t.polynomial()).unwrap());
        prop_assert_eq!(BigRational::from_integer(formula), disc_oracle(&t.polynomial().to_rational()).unwrap());
    }

    #[test]
    fn factors_multiply_back(t in coprime_trinomial(), i in 0usize..PRIMES.len()) {
        let p = PRIMES[i];
        let f = FpPolynomial::from_int(&t.polynomial(), p).unwrap();
        let mut product = FpPolynomial::one(p);
        for (g, m) in fp_factor(&f).unwrap() {
            for _ in 0..m {
                product = product.mul(&g);
            }
        }
        prop_assert_eq!(product, f.monic());
    }

    #[test]
    fn squarefree_reduction_iff_p_misses_disc(t in coprime_trinomial(), i in 2usize..PRIMES.len()) {
        let p = PRIMES[i];
        let disc = trinomial_disc(&t);
        let ct = cycle_type(&t.polynomial(), p).unwrap();
        prop_assert_eq!(ct.is_some(), !(&disc % p as i64 == BigInt::from(0)));
        if let Some(parts) = ct {
            prop_assert_eq!(parts.iter().sum::<usize>(), t.d as usize);
        }
    }

    #[test]
    fn stripping_keeps_the_cofactor(n in 1i64..10_000_000, e2 in 0u32..6, e3 in 0u32..6) {
        let m = BigInt::from(n) * BigInt::from(2).pow(e2) * BigInt::from(3).pow(e3);
        let support = SupportSet::new([2u64, 3]).unwrap();
        let (stripped, removed) = strip_support(&m, &support).unwrap();
        prop_assert!(!stripped.is_even() && !(&stripped % 3 == BigInt::from(0)));
        let mut back = stripped.clone();
        for (q, e) in &removed.factors {
            back *= q.pow(*e);
        }
        prop_assert_eq!(back, m);
    }

    #[test]
    fn factoring_recovers_the_integer(n in 2i64..1_000_000_000_000) {
        let fm = factor(&BigInt::from(n), &FactorBudget::default()).unwrap();
        prop_assert!(fm.is_complete());
        let product = fm.factors.iter().fold(BigInt::one(), |acc, (q, e)| acc * q.pow(*e));
        prop_assert_eq!(product, BigInt::from(n));
    }

    #[test]
    fn newton_certificate_matches_its_hypotheses(t in coprime_trinomial(), i in 0usize..5) {
        let p = PRIMES[i];
        let cert = newton_polygon_certificate(&t, p).unwrap();
        let vp = |n: &BigInt| {
            let (mut n, mut v) = (n.abs(), 0u32);
            while &n % p == BigInt::from(0) {
                n /= p;
                v += 1;
            }
            v
        };
        let (va, vb) = (vp(&t.a), vp(&t.b));
        let expected = t.s == t.d - 1 && va == 0 && vb >= 1 && (t.d - 1).gcd(&vb) == 1;
        if t.s == t.d - 1 {
            prop_assert_eq!(cert.certified, expected);
        } else {
            prop_assert!(!cert.certified || expected);
        }
    }
}

#[test]
fn wreath_orders_match_the_product_formula() {
    for (d, n) in [(2usize, 1u32), (2, 2), (2, 3), (3, 1), (3, 2), (4, 1)] {
        let mut g = wreath_generators(d, n).unwrap();
        let order = g.enumerate(DEFAULT_ORDER_CAP).unwrap();
        assert_eq!(BigInt::from(order), BigInt::from(wreath_order(d as u64, n)), "d={d} n={n}");
        let dist = exact_cycle_distribution(&g).unwrap();
        assert_eq!(dist.counts.values().sum::<u64>(), order as u64);
        assert_eq!(dist.counts[&vec!["1"; d.pow(n)].join("+")], 1);
    }
}

#[test]
fn odoni_towers_are_maximal_for_small_parameters() {
    for (p, k) in [(3u64, 2u64), (5, 1), (5, 4), (7, 1), (7, 4), (11, 10), (13, 1)] {
        let report = odoni_tower(&OdoniPrimeFamily::new(p, k).unwrap(), &Budgets::with_depth(4)).unwrap();
        report.validate().unwrap();
        assert!(report.verdicts().iter().all(|v| *v == Verdict::Maximal), "p={p} k={k}: {:?}", report.verdicts());
    }
}

#[test]
fn finite_critical_orbit_is_not_maximal() {
    // a = -2 maps to the fixed point 1 under x^3 + 3x^2 - 3.
    let report = odoni_tower(&OdoniPrimeFamily::new(3, 1).unwrap(), &Budgets::with_depth(3)).unwrap();
    report.validate().unwrap();
    for level in &report.levels {
        assert_eq!(level.verdict, Verdict::NotMaximal);
        assert_eq!(level.evidence.square_root.as_deref(), Some("1"));
    }
}

#[test]
fn vojta_levels_follow_the_stripped_primitive_part() {
    // Stripped values for d = 3, c = 2 computed independently by exact
    // Moebius inversion of the orbit of 0.
    let expected = ["7", "2221", "676284044801", "1697467731252273239787801897572068563463"];
    let family = VojtaFamily::new(3, 2).unwrap();
    let report = vojta_tower(&family, &Budgets::with_depth(4)).unwrap();
    report.validate().unwrap();
    for (level, want) in report.levels.iter().zip(expected) {
        assert_eq!(level.evidence.stripped.as_deref(), Some(want), "level {}", level.n);
        assert_eq!(level.verdict, Verdict::Maximal);
    }
    for n in 1..=6 {
        let part = primitive_part(&family, n).unwrap();
        assert!(part.value.is_positive());
    }
}
