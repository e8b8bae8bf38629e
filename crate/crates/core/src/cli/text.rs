use std::fmt::Write;

use super::commands::Payload;
use super::{Command, Outcome};
use crate::certificates::{Overall, TowerReport, Verdict};

fn verdict_word(v: Verdict) -> &'static str {
    match v {
        Verdict::Maximal => "maximal",
        Verdict::NotMaximal => "not maximal",
        Verdict::Unknown => "unknown",
    }
}

fn tower(out: &mut String, r: &TowerReport) {
    let params: Vec<String> = r.family.params.iter().map(|(k, v)| format!("{k}={v}")).collect();
    let _ = writeln!(out, "family {} ({})", r.family.kind, params.join(", "));
    for check in &r.checks {
        let mark = if check.passed { "ok" } else { "FAILED" };
        let _ = writeln!(out, "  check {:<28} {mark}  {}", check.name, check.detail);
    }
    for l in &r.levels {
        let e = &l.evidence;
        let mut line = format!("  level {:>2}: {:<12}", l.n, verdict_word(l.verdict));
        match (&e.stripped, e.stripped_digits) {
            (Some(s), _) => line.push_str(&format!(" stripped {s}")),
            (None, Some(d)) => line.push_str(&format!(" stripped <{d} digits>")),
            _ => {}
        }
        if let Some(y) = &e.square_root {
            let m = e.multiplier.as_deref().unwrap_or("1");
            line.push_str(&format!(" square: {m}*({y})^2"));
        }
        if let Some(w) = &e.witness_prime {
            line.push_str(&format!(" witness {w}"));
        }
        for note in &e.notes {
            line.push_str(&format!(" [{note}]"));
        }
        let _ = writeln!(out, "{line}");
    }
    let overall = match &r.overall {
        Overall::SurjectiveEvidence { depth } => format!("surjective through level {depth}"),
        Overall::SurjectiveProof { method, depth } => format!("surjective at every level ({method}); computed {depth}"),
        Overall::FiniteIndexEvidence { index_bound, depth } => format!("index {index_bound} image through level {depth}"),
        Overall::NotMaximalFound { levels } => format!("non-maximal levels {levels:?}"),
        Overall::Inconclusive => "inconclusive".into(),
    };
    let _ = writeln!(out, "overall: {overall}");
}

pub(super) fn render(command: &Command, payload: &Payload, outcome: Outcome) -> String {
    let mut out = String::new();
    match payload {
        Payload::Tower(r) => tower(&mut out, r),
        Payload::Disc(r) => {
            let _ = writeln!(out, "random trinomials: {}/{} agree", r.agreements, r.samples);
            for m in &r.mismatches {
                let _ = writeln!(out, "  mismatch: {m}");
            }
            for f in &r.fixed {
                let _ = writeln!(out, "  {}: expected {}, formula {}, resultant {}", f.polynomial, f.expected, f.formula, f.resultant);
            }
            for i in &r.iterates {
                let _ = writeln!(out, "  iterate n={} t={}: {} ({})", i.n, i.t, i.formula, if i.equal { "equal" } else { "DIFFERS" });
            }
        }
        Payload::Frobenius(r) => {
            let _ = writeln!(
                out,
                "degree {} (level {}), primes <= {}: {} sampled, {} skipped",
                r.degree, r.level, r.pmax, r.empirical.total, r.empirical.skipped
            );
            for (k, f) in &r.empirical.frequencies {
                let _ = writeln!(out, "  {k:<20} {f:.5}");
            }
            for reference in &r.references {
                let _ = writeln!(
                    out,
                    "  vs {} group (order {}): total variation {:.5}",
                    reference.name, reference.order, reference.total_variation
                );
            }
            if let Some(t) = &r.tau_star {
                let _ = writeln!(out, "  tau* = {t}");
            }
            for n in &r.notes {
                let _ = writeln!(out, "  note: {n}");
            }
        }
        Payload::Density(t) => {
            let _ = writeln!(out, "a0 = {}", t.a0);
            for row in &t.rows {
                let _ = writeln!(out, "  X = {:>8}: {:>6}/{:<6} = {:.5}", row.bound, row.members, row.primes, row.proportion);
            }
        }
        Payload::Dynatomic(r) => {
            let _ = writeln!(out, "d = {}", r.d);
            for l in &r.levels {
                let exponent = l.leading_exponent.map_or("none".to_string(), |m| format!("±(d-1)^{m}"));
                let squarefree = l.squarefree_prime.map_or("not certified".to_string(), |p| format!("squarefree mod {p}"));
                let _ = writeln!(
                    out,
                    "  n={} degree {} leading {} = {exponent}, {squarefree}; quotient degree {}, simple roots {}",
                    l.n, l.degree, l.leading, l.dynatomic_degree, l.dynatomic_simple_roots
                );
            }
            if !r.second_quotient.is_empty() {
                let _ = writeln!(out, "  second quotient coefficients: [{}]", r.second_quotient.join(", "));
            }
        }
        Payload::Newton(c) => {
            let _ = writeln!(out, "certified: {}", c.certified);
            if let Some(reason) = &c.reason {
                let _ = writeln!(out, "  reason: {reason}");
            }
            let _ = writeln!(out, "  vertices: {:?}", c.polygon.vertices);
            for s in &c.polygon.segments {
                let _ = writeln!(out, "  slope {} length {} lattice length {}", s.slope, s.length, s.lattice_length);
            }
        }
        Payload::Curves(reports) => {
            for r in reports {
                let _ = writeln!(out, "{}: {} [{}]", r.curve, r.equation, if r.passed { "ok" } else { "FAILED" });
                for (i, p) in r.verified_points.iter().enumerate() {
                    let image = r.mapped_points.get(i).map(|m| format!(" -> ({}, {})", m.x, m.y)).unwrap_or_default();
                    let _ = writeln!(out, "  ({}, {}){image}", p.x, p.y);
                }
                if let Some(m) = &r.map {
                    let _ = writeln!(out, "  map {m}: identity {}", r.map_identity.unwrap_or(false));
                }
                if let Some(b) = r.search_range {
                    let _ = writeln!(out, "  integral points with |x| <= {b}: {}", r.extra_points.len());
                }
            }
        }
    }
    let name = match command {
        Command::CertifyOdoni { .. } => "certify-odoni",
        Command::CertifyIndex2 { .. } => "certify-index2",
        Command::CertifyVojta { .. } => "certify-vojta",
        Command::DiscCheck { .. } => "disc-check",
        Command::Frobenius { .. } => "frobenius",
        Command::Density { .. } => "density",
        Command::Dynatomic { .. } => "dynatomic",
        Command::Newton { .. } => "newton",
        Command::Curves { .. } => "curves",
    };
    let _ = writeln!(out, "{name}: {outcome:?}");
    out
}
