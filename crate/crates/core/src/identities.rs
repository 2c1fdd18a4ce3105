//! Executable checks of the explicit basis shapes and ideal-membership identities
//! at the special values of `n`.

use rand::Rng;

use crate::groebner::{closed_form_basis_with, generators, ideal_basis, in_w3_ideal, GroebnerBasis};
use crate::gseries::GSeries;
use crate::poly::{Monomial, Poly};
use crate::report::Report;

fn p2(k: u32) -> u32 {
    1u32 << k
}

fn mono(b: u32, c: u32) -> Poly {
    Poly::monomial(b, c)
}

/// `w3^c * g_r^{2^i}`.
fn w3_times_g_power(series: &mut GSeries, c: u32, r: u32, i: u32) -> Poly {
    let mut g = series.get(r as usize).clone();
    for _ in 0..i {
        g = g.square();
    }
    g.shift(Monomial::new(0, c))
}

fn compare_basis(rep: &mut Report, label: &str, gb: &GroebnerBasis, expected: &[(usize, Poly, Option<Monomial>)]) {
    let n = gb.n().map(u64::from);
    for (i, poly, lm) in expected {
        rep.check_eq(format!("{label}: f{i}"), n, poly.clone(), gb.polys()[*i].clone());
        if let Some(lm) = lm {
            rep.check_eq(format!("{label}: LM(f{i})"), n, *lm, gb.lms()[*i]);
        }
    }
}

/// `n = 2^t - 1`: `f_i = g_{2^t+2^i-3}` with `LM = w2^{2^{t-1}-2^i} w3^{2^i-1}`.
pub fn verify_basis_below_power(series: &mut GSeries, t: u32) -> Report {
    let mut rep = Report::new(format!("basis shape n=2^t-1, t={t}"));
    let n = p2(t) - 1;
    let gb = closed_form_basis_with(n, series).expect("n >= 7");
    let expected: Vec<_> = (0..t)
        .map(|i| {
            let f = series.get((p2(t) + p2(i) - 3) as usize).clone();
            (i as usize, f, Some(Monomial::new(p2(t - 1) - p2(i), p2(i) - 1)))
        })
        .collect();
    compare_basis(&mut rep, "2^t-1", &gb, &expected);
    rep
}

/// `n = 2^t + 2^{t-2} + eps` for `eps` in `{0, 1, 2}`.
pub fn verify_basis_quarter(series: &mut GSeries, t: u32, eps: u32) -> Report {
    assert!(t >= 4 && eps <= 2);
    let mut rep = Report::new(format!("basis shape n=2^t+2^(t-2)+{eps}, t={t}"));
    let n = p2(t) + p2(t - 2) + eps;
    let gb = closed_form_basis_with(n, series).expect("n >= 7");
    let mut exp = Vec::new();
    let middle = |series: &mut GSeries, i: u32| {
        (
            i as usize,
            w3_times_g_power(series, p2(i) - 1, p2(t - i) + p2(t - i - 2) - 2, i),
            Some(Monomial::new(p2(t - 1) + p2(t - 3) - p2(i), p2(i) - 1)),
        )
    };
    if eps < 2 {
        exp.push((
            0,
            series.get((p2(t) + p2(t - 2) + 2 * eps - 2) as usize).clone(),
            Some(Monomial::new(p2(t - 1) + p2(t - 3) + eps - 1, 0)),
        ));
        for i in 1..=t - 3 {
            exp.push(middle(series, i));
        }
    } else {
        exp.push((
            0,
            series.get((p2(t) + p2(t - 2)) as usize).clone(),
            Some(Monomial::new(p2(t - 1) + p2(t - 3), 0)),
        ));
        exp.push((
            1,
            w3_times_g_power(series, 2, p2(t - 1) + p2(t - 3) - 2, 1),
            Some(Monomial::new(p2(t - 1) + p2(t - 3) - 2, 2)),
        ));
        for i in 2..=t - 3 {
            exp.push(middle(series, i));
        }
    }
    let f_t3 = if eps == 2 && t == 4 {
        &mono(8, 2) + &mono(2, 6)
    } else {
        &mono(p2(t - 1), p2(t - 3) - 1) + &mono(p2(t - 3), p2(t - 2) + p2(t - 3) - 1)
    };
    exp.push(((t - 3) as usize, f_t3, None));
    exp.push(((t - 2) as usize, mono(p2(t - 2), p2(t - 2) + eps), None));
    exp.push(((t - 1) as usize, mono(0, p2(t - 1) - 1), None));
    compare_basis(&mut rep, "2^t+2^(t-2)+eps", &gb, &exp);
    rep
}

/// `n = 2^t + 2^{t-1} + 1`.
pub fn verify_basis_half_plus_one(series: &mut GSeries, t: u32) -> Report {
    assert!(t >= 4);
    let mut rep = Report::new(format!("basis shape n=2^t+2^(t-1)+1, t={t}"));
    let n = p2(t) + p2(t - 1) + 1;
    let gb = closed_form_basis_with(n, series).expect("n >= 7");
    let mut exp = vec![(
        0usize,
        series.get((p2(t) + p2(t - 1)) as usize).clone(),
        Some(Monomial::new(p2(t - 1) + p2(t - 2), 0)),
    )];
    for i in 1..=t - 2 {
        exp.push((
            i as usize,
            w3_times_g_power(series, p2(i) - 1, p2(t - i) + p2(t - 1 - i) - 2, i),
            Some(Monomial::new(p2(t - 1) + p2(t - 2) - p2(i), p2(i) - 1)),
        ));
    }
    exp.push(((t - 2) as usize, mono(p2(t - 1), p2(t - 2) - 1), None));
    exp.push(((t - 1) as usize, mono(0, p2(t - 1) + 1), None));
    compare_basis(&mut rep, "2^t+2^(t-1)+1", &gb, &exp);
    rep
}

/// `n = 2^{t+1} - 2^{s+1} + 1` for `1 <= s <= t - 3`.
pub fn verify_basis_last_band(series: &mut GSeries, t: u32, s: u32) -> Report {
    assert!(t >= 4 && (1..=t - 3).contains(&s));
    let mut rep = Report::new(format!("basis shape n=2^(t+1)-2^(s+1)+1, t={t}, s={s}"));
    let n = p2(t + 1) - p2(s + 1) + 1;
    let gb = closed_form_basis_with(n, series).expect("n >= 7");
    let mut exp = vec![(
        0usize,
        series.get((p2(t + 1) - p2(s + 1)) as usize).clone(),
        Some(Monomial::new(p2(t) - p2(s), 0)),
    )];
    for i in 1..=s {
        exp.push((
            i as usize,
            w3_times_g_power(series, p2(i) - 1, p2(t + 1 - i) - p2(s + 1 - i) - 2, i),
            Some(Monomial::new(p2(t) - p2(s) - p2(i), p2(i) - 1)),
        ));
    }
    for i in s + 1..t {
        exp.push((
            i as usize,
            w3_times_g_power(series, p2(i + 1) - p2(s + 1) + 1, p2(t + 1 - i) - 4, i),
            Some(Monomial::new(p2(t) - p2(i + 1), p2(i + 1) - p2(s + 1) + 1)),
        ));
    }
    exp.push(((t - 2) as usize, mono(p2(t - 1), p2(t - 1) - p2(s + 1) + 1), None));
    exp.push(((t - 1) as usize, mono(0, p2(t) - p2(s + 1) + 1), None));
    compare_basis(&mut rep, "2^(t+1)-2^(s+1)+1", &gb, &exp);
    rep
}

/// Three relations in the quotient at `n = 2^{t+1} - 2^s`, `1 <= s <= t - 3`.
pub fn verify_last_band_relations(series: &mut GSeries, t: u32, s: u32) -> Report {
    assert!(t >= 4 && (1..=t - 3).contains(&s));
    let mut rep = Report::new(format!("relations n=2^(t+1)-2^s, t={t}, s={s}"));
    let n = p2(t + 1) - p2(s);
    let gb = closed_form_basis_with(n, series).expect("n >= 7");
    let nf = |b, c| gb.normal_form(&mono(b, c));
    let n64 = Some(n as u64);
    rep.check_eq(
        "a: w2^(3*2^(t-2)) w3^(2^(t-2)-2^s) = w3^(3*2^(t-2)-2^s)",
        n64,
        nf(0, p2(t - 1) + p2(t - 2) - p2(s)),
        nf(p2(t - 1) + p2(t - 2), p2(t - 2) - p2(s)),
    );
    rep.check_eq(
        "b: w2^(2^(t-1)) w3^(2^(t-1)-2^s) = 0",
        n64,
        Poly::zero(),
        nf(p2(t - 1), p2(t - 1) - p2(s)),
    );
    rep.check_eq("c: w3^(2^t-2^s) = 0", n64, Poly::zero(), nf(0, p2(t) - p2(s)));
    rep
}

/// Every explicit basis shape and relation for one `t >= 4`.
pub fn verify_case_bases(series: &mut GSeries, t: u32) -> Report {
    let mut rep = Report::new(format!("explicit basis shapes t={t}"));
    rep.merge(verify_basis_below_power(series, t));
    for eps in 0..=2 {
        rep.merge(verify_basis_quarter(series, t, eps));
    }
    rep.merge(verify_basis_half_plus_one(series, t));
    for s in 1..=t.saturating_sub(3) {
        rep.merge(verify_basis_last_band(series, t, s));
        rep.merge(verify_last_band_relations(series, t, s));
    }
    rep
}

/// The two membership identities and their two congruence consequences.
///
/// The identities need `t >= 4`; the first congruence is also checked at `t = 3`.
pub fn verify_membership_lemmas(series: &mut GSeries, t: u32) -> Report {
    let mut rep = Report::new(format!("membership identities t={t}"));
    let quarter_sum = |t: u32| -> Poly {
        Poly::from_terms((1..t.saturating_sub(2)).map(|k| Monomial::new(3 * p2(k - 1), p2(t - 1) - p2(k))))
    };
    if t >= 4 {
        let n = p2(t) + p2(t - 2) + p2(t - 4);
        let x = &(series.get(3 * p2(t - 1) as usize) + &mono(3 * p2(t - 2), 0)) + &quarter_sum(t);
        let gb = ideal_basis(n, series).expect("n >= 7");
        rep.check_eq(
            "g_(3*2^(t-1)) + w2^(3*2^(t-2)) + sum in w3*I",
            Some(n as u64),
            true,
            in_w3_ideal(&x, &gb),
        );

        let n = p2(t) + p2(t - 1) + p2(t - 3) + p2(t - 4);
        let x = &(series.get((p2(t + 1) - 6) as usize) + &mono(p2(t) - 3, 0)) + &mono(p2(t - 2) - 3, p2(t - 1));
        let gb = ideal_basis(n, series).expect("n >= 7");
        rep.check_eq(
            "g_(2^(t+1)-6) + w2^(2^t-3) + w2^(2^(t-2)-3) w3^(2^(t-1)) in w3*I",
            Some(n as u64),
            true,
            in_w3_ideal(&x, &gb),
        );

        let n = 13 * p2(t - 3) + 1;
        let x = &mono(p2(t) - 3, 0) + &mono(p2(t - 2) - 3, p2(t - 1));
        let gb = ideal_basis(n, series).expect("n >= 7");
        rep.check_eq(
            "w2^(2^t-3) = w2^(2^(t-2)-3) w3^(2^(t-1)) mod I",
            Some(n as u64),
            true,
            gb.reduces_to_zero(&x),
        );
    }
    if t >= 3 {
        let n = p2(t) + p2(t - 2) + 2;
        let x = &mono(3 * p2(t - 2), 0) + &quarter_sum(t);
        let gb = ideal_basis(n, series).expect("n >= 7");
        rep.check_eq(
            "w2^(3*2^(t-2)) = sum mod I",
            Some(n as u64),
            true,
            gb.reduces_to_zero(&x),
        );
    }
    rep
}

/// `I_{n+1} ⊆ I_n` and `w3 I_n ⊆ I_{n+1}`, checked on generators.
pub fn verify_ideal_chain(series: &mut GSeries, n: u32) -> Report {
    let mut rep = Report::new(format!("ideal chain n={n}"));
    let here = ideal_basis(n, series).expect("n >= 2");
    let next = ideal_basis(n + 1, series).expect("n >= 2");
    let n64 = Some(n as u64);
    for g in generators(n + 1, series) {
        rep.check_eq("generator of I_(n+1) lies in I_n", n64, true, here.reduces_to_zero(&g));
    }
    for g in generators(n, series) {
        let x = g.shift(Monomial::W3);
        rep.check_eq(
            "w3 * generator of I_n lies in I_(n+1)",
            n64,
            true,
            next.reduces_to_zero(&x),
        );
    }
    rep
}

/// For random `f` in `w3 I_n`: `f^2` lies in `w3 I_{2n+1}` and in `w3 I_{2n}`.
pub fn verify_w3_squaring<R: Rng>(series: &mut GSeries, n: u32, trials: usize, rng: &mut R) -> Report {
    let mut rep = Report::new(format!("squares of w3*I elements n={n}"));
    let gens = generators(n, series);
    let odd = ideal_basis(2 * n + 1, series).expect("n >= 2");
    let even = ideal_basis(2 * n, series).expect("n >= 2");
    for _ in 0..trials {
        let mut f = Poly::zero();
        for g in &gens {
            let coeff = Poly::from_terms(
                (0..rng.gen_range(0..4)).map(|_| Monomial::new(rng.gen_range(0..4), rng.gen_range(0..3))),
            );
            f += &(&coeff * g);
        }
        let f = f.shift(Monomial::W3);
        let sq = f.square();
        let n64 = Some(n as u64);
        rep.check_eq(
            format!("f^2 in w3*I_(2n+1), f = {f}"),
            n64,
            true,
            in_w3_ideal(&sq, &odd),
        );
        rep.check_eq(format!("f^2 in w3*I_(2n), f = {f}"), n64, true, in_w3_ideal(&sq, &even));
    }
    rep
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn case_shapes_hold_for_small_t() {
        let mut s = GSeries::new();
        for t in 4..=5 {
            let rep = verify_case_bases(&mut s, t);
            assert!(rep.passed(), "{rep}");
        }
        assert!(verify_basis_below_power(&mut s, 3).passed());
    }

    #[test]
    fn membership_identities() {
        let mut s = GSeries::new();
        for t in 3..=5 {
            let rep = verify_membership_lemmas(&mut s, t);
            assert!(rep.passed(), "{rep}");
        }
        assert_eq!(verify_membership_lemmas(&mut s, 3).len(), 1);
    }

    #[test]
    fn membership_detects_a_wrong_identity() {
        let mut s = GSeries::new();
        let gb = ideal_basis(20, &mut s).unwrap();
        // Drop one summand from the true identity at t=4; the residue is not in w3*I.
        let x = s.get(24) + &mono(12, 0);
        assert!(!in_w3_ideal(&x, &gb));
    }

    #[test]
    fn chain_and_squares() {
        let mut s = GSeries::new();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for n in 2..=20 {
            assert!(verify_ideal_chain(&mut s, n).passed());
        }
        for n in [2, 5, 9, 13] {
            assert!(verify_w3_squaring(&mut s, n, 5, &mut rng).passed());
        }
    }
}
