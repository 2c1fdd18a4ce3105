//! The verification suite behind `ozcl verify` and the acceptance test.
//!
//! Every check is deterministic: random inputs come from fixed seeds, and work
//! fanned out per `n` is merged back in `n` order.

use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::bounds::{bounds_row, verify_ineq_arithmetic, verify_tc_table};
use crate::cache::Cache;
use crate::error::{AlgebraError, Result};
use crate::groebner::{binary_profile, buchberger, closed_form_basis, generators, reduce_basis};
use crate::gseries::{
    g_explicit, g_recurrence, power_series_prefix_ok, verify_doubling, verify_g_near_powers, verify_power_squaring,
    GSeries,
};
use crate::identities::{verify_case_bases, verify_ideal_chain, verify_membership_lemmas, verify_w3_squaring};
use crate::poly::{Monomial, Poly};
use crate::quotient::{
    build_quotient, classify_below_power, classify_last_band, classify_quarter_plus, heights_closed_form,
    verify_band_witness_classes, verify_top_degree,
};
use crate::report::Report;
use crate::tables::{g_table, render, zcl_range, Format};
use crate::zcl::{
    closed_form_case, expected_zcl, full_product, graded_piece, verify_upper_bound_lemmas, verify_zero_divisor_algebra,
    zcl_closed_form, ZclResult,
};

/// Canonical rendering of `g_0 .. g_26`, one `r<TAB>poly` line each.
pub const TABLE_G: &str = include_str!("../tests/golden/table_g.txt");

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Section {
    All,
    GSeries,
    Groebner,
    Quotient,
    Zcl,
    Bounds,
}

impl FromStr for Section {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        Ok(match s {
            "all" => Section::All,
            "g-series" => Section::GSeries,
            "groebner" => Section::Groebner,
            "quotient" => Section::Quotient,
            "zcl" => Section::Zcl,
            "bounds" => Section::Bounds,
            other => return Err(format!("unknown section '{other}'")),
        })
    }
}

fn par_reports<F>(lo: u32, hi: u32, title: String, f: F) -> Result<Report>
where
    F: Fn(u32) -> Result<Report> + Sync + Send,
{
    let parts: Vec<Report> = (lo..=hi).into_par_iter().map(f).collect::<Result<_>>()?;
    let mut rep = Report::new(title);
    for part in parts {
        rep.merge(part);
    }
    Ok(rep)
}

/// Table of `g_0 .. g_26`, recurrence against explicit formula, power-series
/// prefix, and the closed values and squaring identities.
pub fn check_g_series(max_r: usize, t_max: u32) -> Report {
    let mut rep = Report::new("g-series");
    rep.check_eq(
        "table of g_0..g_26",
        None,
        TABLE_G.to_string(),
        render(&g_table(0, 26), Format::Text),
    );
    for r in 0..=max_r {
        rep.check_eq(
            "recurrence equals explicit formula",
            Some(r as u64),
            g_explicit(r),
            g_recurrence(r),
        );
    }
    let mut series = GSeries::new();
    rep.check_eq(
        "(1 + w2 + w3) * sum g_r = 1 up to degree 64",
        None,
        true,
        power_series_prefix_ok(&mut series, 64),
    );
    for t in 2..=t_max {
        rep.merge(verify_g_near_powers(&mut series, t));
    }
    for i in 0..=4 {
        for r in 0..=40 {
            rep.check_eq(
                format!("g_(2^{i}(r+3)-3) = w3^(2^{i}-1) g_r^(2^{i})"),
                Some(r as u64),
                true,
                verify_power_squaring(&mut series, i, r),
            );
        }
    }
    for n in 1..=200 {
        rep.check_eq(
            "g_2n = g_n^2 + w2 g_(n-1)^2",
            Some(n as u64),
            true,
            verify_doubling(&mut series, n),
        );
    }
    rep
}

/// Closed-form basis against Buchberger for every `n` in `lo..=hi`.
pub fn check_groebner(lo: u32, hi: u32) -> Result<Report> {
    par_reports(lo, hi, format!("Groebner bases n={lo}..{hi}"), |n| {
        let mut rep = Report::new(String::new());
        let nn = Some(n as u64);
        let mut series = GSeries::new();
        let cf = closed_form_basis(n)?;
        let profile = binary_profile(n)?;
        for i in 0..cf.len() {
            rep.check_eq(format!("LM(f{i})"), nn, profile.leading_monomial(i), cf.lms()[i]);
        }
        rep.check_eq("closed form is a Groebner basis", nn, true, cf.is_groebner_basis());
        let reduced_cf = reduce_basis(&cf);
        let reduced_bb = reduce_basis(&buchberger(&generators(n, &mut series)));
        let show =
            |g: &crate::groebner::GroebnerBasis| g.polys().iter().map(|p| p.to_string()).collect::<Vec<_>>().join("; ");
        rep.check_eq(
            "reduced closed form equals reduced Buchberger",
            nn,
            show(&reduced_bb),
            show(&reduced_cf),
        );
        Ok(rep)
    })
}

/// Ideal identities: explicit basis shapes and relations, membership identities,
/// the ideal chain, and squares of `w3 I_n` elements.
pub fn check_identities(t_lo: u32, t_hi: u32, chain_hi: u32, squares_hi: u32, seed: u64) -> Report {
    let mut rep = Report::new(format!("ideal identities t={t_lo}..{t_hi}"));
    let mut series = GSeries::new();
    for t in t_lo..=t_hi {
        rep.merge(verify_case_bases(&mut series, t));
        rep.merge(verify_membership_lemmas(&mut series, t));
    }
    for n in 2..=chain_hi {
        rep.merge(verify_ideal_chain(&mut series, n));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for n in 2..=squares_hi {
        rep.merge(verify_w3_squaring(&mut series, n, 4, &mut rng));
    }
    rep
}

/// Heights by search against the closed formula.
pub fn check_heights(lo: u32, hi: u32) -> Result<Report> {
    par_reports(lo, hi, format!("heights n={lo}..{hi}"), |n| {
        let mut rep = Report::new(String::new());
        let q = build_quotient(n)?;
        let h = q.heights();
        let c = heights_closed_form(n)?;
        rep.check_eq("height of w2", Some(n as u64), c.h2, h.h2);
        rep.check_eq("height of w3", Some(n as u64), c.h3, h.h3);
        Ok(rep)
    })
}

fn random_poly(rng: &mut ChaCha8Rng, max_b: u32, max_c: u32) -> Poly {
    let k = rng.gen_range(1..=6);
    Poly::from_terms((0..k).map(|_| Monomial::new(rng.gen_range(0..=max_b), rng.gen_range(0..=max_c))))
}

/// Per-ring properties for every `n` in `lo..=hi`: degree bound of the basis,
/// band witness classes, and `samples` random checks each of normal-form
/// idempotence and linearity and of the fast rewrite against division.
pub fn check_quotient_properties(lo: u32, hi: u32, samples: usize, seed: u64) -> Result<Report> {
    par_reports(lo, hi, format!("quotient properties n={lo}..{hi}"), |n| {
        let q = build_quotient(n)?;
        let mut rep = verify_top_degree(&q);
        rep.merge(verify_band_witness_classes(&q));
        let nn = Some(n as u64);
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ n as u64);
        let h = q.heights();
        let (max_b, max_c) = (h.h2 + 3, h.h3 + 3);
        for _ in 0..samples {
            let a = random_poly(&mut rng, max_b, max_c);
            let b = random_poly(&mut rng, max_b, max_c);
            let ra = q.reduce(&a);
            rep.check_eq(format!("nf(nf(a)) = nf(a), a={a}"), nn, ra.clone(), q.reduce(&ra));
            rep.check_eq(
                format!("nf(a+b) = nf(a)+nf(b), a={a}, b={b}"),
                nn,
                &ra + &q.reduce(&b),
                q.reduce(&(&a + &b)),
            );
            let m = Monomial::new(rng.gen_range(0..=max_b), rng.gen_range(0..=max_c));
            if q.profile().is_some() {
                rep.check_eq(
                    format!("fast rewrite of {m}"),
                    nn,
                    q.nf_by_division(m.b, m.c),
                    q.nf_fast(m.b, m.c)?,
                );
            }
            rep.check_eq(
                format!("table normal form of {m}"),
                nn,
                q.nf_by_division(m.b, m.c),
                q.nf_monomial(m.b, m.c),
            );
        }
        Ok(rep)
    })
}

/// The monomial classifications of special degrees, for `t` up to `t_hi`.
pub fn check_classifications(t_hi: u32) -> Result<Report> {
    let mut jobs: Vec<Box<dyn Fn() -> Result<Report> + Sync + Send>> = Vec::new();
    for t in 4..=t_hi {
        jobs.push(Box::new(move || classify_below_power(t)));
    }
    for t in 5..=t_hi {
        for eps in 1..=2 {
            jobs.push(Box::new(move || classify_quarter_plus(t, eps)));
        }
        for s in 1..=t - 3 {
            jobs.push(Box::new(move || classify_last_band(t, s)));
        }
    }
    let parts: Vec<Report> = jobs.par_iter().map(|job| job()).collect::<Result<_>>()?;
    let mut rep = Report::new(format!("degree classifications t<={t_hi}"));
    for part in parts {
        rep.merge(part);
    }
    Ok(rep)
}

/// The two graded pieces quoted as nonvanishing witnesses at `n = 21, 22`.
pub fn check_witness_pieces() -> Result<Report> {
    let mut rep = Report::new("witness pieces");
    let pair = |a: (u32, u32), b: (u32, u32)| format!("{} (x) {}", Monomial::new(a.0, a.1), Monomial::new(b.0, b.1));
    let q = build_quotient(21)?;
    let piece = graded_piece(&q, 15, 6, 24)?;
    rep.check_eq(
        "z(w2)^15 z(w3)^6, left degree 24",
        Some(21),
        format!("{} + {}", pair((6, 4), (3, 6)), pair((3, 6), (6, 4))),
        piece.element.to_string(),
    );
    let q = build_quotient(22)?;
    let piece = graded_piece(&q, 15, 7, 24)?;
    rep.check_eq(
        "z(w2)^15 z(w3)^7, left degree 24",
        Some(22),
        pair((3, 6), (6, 5)),
        piece.element.to_string(),
    );
    Ok(rep)
}

/// Zero-divisor algebra rules and swap symmetry of products at each `n` in `ns`.
pub fn check_tensor_properties(ns: &[u32], trials: usize, seed: u64) -> Result<Report> {
    let parts: Vec<Report> = ns
        .par_iter()
        .map(|&n| {
            let q = build_quotient(n)?;
            let mut rep = verify_zero_divisor_algebra(&q, trials, seed);
            let h = q.heights();
            for (beta, gamma) in [(1, 1), (h.h2, 0), (h.h2 / 2, h.h3 / 2), (h.h2, h.h3)] {
                let x = full_product(&q, beta, gamma);
                rep.check_eq(
                    format!("z(w2)^{beta} z(w3)^{gamma} is swap-symmetric"),
                    Some(n as u64),
                    x.clone(),
                    x.swap(),
                );
            }
            Ok(rep)
        })
        .collect::<Result<_>>()?;
    let mut rep = Report::new("tensor-square properties");
    for part in parts {
        rep.merge(part);
    }
    Ok(rep)
}

/// Searched `zcl(W_n)` against the table and closed formula, monotonicity in `n`,
/// and coverage of all seven bands for every complete `t` in range.
pub fn check_zcl_values(results: &[ZclResult]) -> Report {
    let lo = results.first().map_or(0, |r| r.n);
    let hi = results.last().map_or(0, |r| r.n);
    let mut rep = Report::new(format!("zcl(W_n) n={lo}..{hi}"));
    for r in results {
        let nn = Some(r.n as u64);
        match expected_zcl(r.n) {
            Some(z) => rep.check_eq("zcl(W_n)", nn, z, r.zcl),
            None => rep.check("zcl(W_n)", nn, false, "a tabulated value", r.zcl),
        };
        rep.check_eq(
            "witness exponents sum to zcl",
            nn,
            r.zcl,
            r.witness.beta + r.witness.gamma,
        );
    }
    for w in results.windows(2) {
        rep.check(
            "zcl(W_n) <= zcl(W_(n+1))",
            Some(w[0].n as u64),
            w[0].zcl <= w[1].zcl,
            format!(">= {}", w[0].zcl),
            w[1].zcl,
        );
    }
    let mut t = 4;
    while (1u32 << (t + 1)) - 2 <= hi {
        if (1u32 << t) > lo {
            let mut seen: Vec<u8> = ((1u32 << t) - 1..=(1u32 << (t + 1)) - 2)
                .filter_map(|n| closed_form_case(n).ok())
                .collect();
            seen.dedup();
            rep.check_eq(
                format!("all seven bands present at t={t}"),
                None,
                "1,2,3,4,5,6,7".to_string(),
                seen.iter().map(u8::to_string).collect::<Vec<_>>().join(","),
            );
        }
        t += 1;
    }
    rep
}

/// Inequalities for `t` in `4..=ineq_t_hi`, band table for `t` in `4..=t_hi`
/// with searched values, and bounds rows from searched against closed-form values.
pub fn check_bounds(results: &[ZclResult], t_hi: u32, ineq_t_hi: u32) -> Result<Report> {
    let mut rep = Report::new("bounds layer");
    for t in 4..=ineq_t_hi {
        rep.merge(verify_ineq_arithmetic(t)?);
    }
    let searched = |n: u32| results.iter().find(|r| r.n == n).map(|r| r.zcl);
    for t in 4..=t_hi {
        let missing = ((1u32 << t) - 1..=(1u32 << (t + 1)) - 2).find(|&n| searched(n).is_none());
        if let Some(n) = missing {
            return Err(AlgebraError::OutOfRange(format!("no searched zcl value for n={n}")));
        }
        rep.merge(verify_tc_table(t, |n| searched(n).unwrap())?);
    }
    for r in results.iter().filter(|r| r.n >= 15) {
        let from_search = bounds_row(r.n, r.zcl)?;
        let from_formula = bounds_row(r.n, zcl_closed_form(r.n)?)?;
        rep.check_eq(
            "bounds row from search equals row from formula",
            Some(r.n as u64),
            format!("{from_formula:?}"),
            format!("{from_search:?}"),
        );
    }
    Ok(rep)
}

/// Runs one section, or all of them, at `n <= 2^{t_max+1} - 2` (rings up to
/// `2^{t_max+1}` where the check does not involve `zcl`).
pub fn run(section: Section, t_max: u32, cache: Option<&Cache>) -> Result<Vec<Report>> {
    if !(4..=6).contains(&t_max) {
        return Err(AlgebraError::OutOfRange(format!("t-max {t_max} must lie within 4..6")));
    }
    let ring_hi = 1u32 << (t_max + 1);
    let zcl_hi = ring_hi - 2;
    let want = |s: Section| section == Section::All || section == s;
    let mut out = Vec::new();
    if want(Section::GSeries) {
        out.push(check_g_series(512, 7));
    }
    if want(Section::Groebner) {
        out.push(check_groebner(7, ring_hi)?);
        out.push(check_identities(4, t_max.max(4), ring_hi, 24, 0x5eed));
    }
    if want(Section::Quotient) {
        out.push(check_heights(7, ring_hi)?);
        out.push(check_quotient_properties(6, ring_hi, 200, 0x5eed)?);
        out.push(check_classifications(t_max)?);
    }
    let zcl_results = if want(Section::Zcl) || want(Section::Bounds) {
        zcl_range(6, zcl_hi, cache)?
    } else {
        Vec::new()
    };
    if want(Section::Zcl) {
        out.push(check_zcl_values(&zcl_results));
        out.push(check_witness_pieces()?);
        out.push(check_tensor_properties(&[9, 15, 21, 22, 27], 20, 0x5eed)?);
        let mut rep = Report::new(format!("upper-bound vanishings t=4..{t_max}"));
        for t in 4..=t_max {
            rep.merge(verify_upper_bound_lemmas(t)?);
        }
        out.push(rep);
    }
    if want(Section::Bounds) {
        out.push(check_bounds(&zcl_results, t_max, 10)?);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sections_parse() {
        assert_eq!("all".parse::<Section>(), Ok(Section::All));
        assert_eq!("g-series".parse::<Section>(), Ok(Section::GSeries));
        assert!("everything".parse::<Section>().is_err());
    }

    #[test]
    fn witness_pieces_pass() {
        let rep = check_witness_pieces().unwrap();
        assert!(rep.passed(), "{rep}");
    }

    #[test]
    fn zcl_checks_catch_a_wrong_value() {
        let mut results = zcl_range(15, 18, None).unwrap();
        assert!(check_zcl_values(&results).passed());
        results[1].zcl += 1;
        assert!(!check_zcl_values(&results).passed());
    }

    #[test]
    fn small_ranges_pass() {
        assert!(check_groebner(7, 20).unwrap().passed());
        assert!(check_heights(7, 20).unwrap().passed());
        assert!(check_quotient_properties(6, 16, 20, 1).unwrap().passed());
    }
}
