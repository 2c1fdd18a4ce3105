//! The quotient ring `W_n`: its monomial basis, normal forms and heights.
//!
//! All normal forms of monomials below the top degree `3n - 9` are computed when
//! the ring is built, one degree at a time, and stored as bitsets over the basis
//! monomials of that degree. A built ring is immutable and can be shared freely
//! across threads.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::error::{AlgebraError, Result};
use crate::groebner::{binary_profile, ideal_basis, t_of, BinaryProfile, GroebnerBasis};
use crate::gseries::GSeries;
use crate::poly::{lucas_binom_mod2, monomials_of_degree, Monomial, Poly};
use crate::report::Report;

/// Largest number of basis monomials a single degree may hold.
pub const MAX_BASIS_PER_DEGREE: usize = 128;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Heights {
    pub h2: u32,
    pub h3: u32,
}

#[derive(Clone, Debug)]
struct DegreeBlock {
    /// Basis monomials of this degree, decreasing lex order.
    basis: Vec<Monomial>,
    /// Normal form of every monomial of this degree, indexed by slot
    /// `(c - d % 2) / 2`, as a bitset over `basis`.
    nf: Vec<u128>,
}

/// `W_n` together with its additive basis and a complete monomial normal-form table.
#[derive(Clone, Debug)]
pub struct QuotientRing {
    n: u32,
    gb: GroebnerBasis,
    profile: Option<BinaryProfile>,
    blocks: Vec<DegreeBlock>,
    heights: Heights,
}

fn slot(m: Monomial) -> usize {
    (m.c as usize - (m.degree() % 2) as usize) / 2
}

pub fn build_quotient(n: u32) -> Result<QuotientRing> {
    build_quotient_with(n, &mut GSeries::new())
}

pub fn build_quotient_with(n: u32, series: &mut GSeries) -> Result<QuotientRing> {
    if n < 6 {
        return Err(AlgebraError::Unsupported { n: n as u64, min: 6 });
    }
    let gb = ideal_basis(n, series)?;
    let profile = binary_profile(n).ok();
    if gb.polys().iter().any(|f| f.homogeneous_degree().is_none()) {
        return Err(AlgebraError::Inconsistent(format!(
            "n={n}: basis element is not homogeneous"
        )));
    }
    let max_b = gb.lms().iter().filter(|m| m.c == 0).map(|m| m.b).min();
    let max_c = gb.lms().iter().filter(|m| m.b == 0).map(|m| m.c).min();
    let (Some(max_b), Some(max_c)) = (max_b, max_c) else {
        return Err(AlgebraError::Inconsistent(format!(
            "n={n}: leading monomials do not include pure powers of both w2 and w3"
        )));
    };
    let top = 3 * n as u64 - 9;
    for b in 0..max_b {
        for c in 0..max_c {
            let m = Monomial::new(b, c);
            if gb.divisor_of(m).is_none() && m.degree() >= top {
                return Err(AlgebraError::Inconsistent(format!(
                    "n={n}: basis monomial {m} has degree {} >= {top}",
                    m.degree()
                )));
            }
        }
    }

    let mut blocks = Vec::with_capacity(top as usize);
    for d in 0..top {
        let monos: Vec<Monomial> = monomials_of_degree(d).collect();
        let basis: Vec<Monomial> = monos.iter().copied().filter(|&m| gb.divisor_of(m).is_none()).collect();
        if basis.len() > MAX_BASIS_PER_DEGREE {
            return Err(AlgebraError::CapacityExceeded {
                degree: d,
                count: basis.len(),
                limit: MAX_BASIS_PER_DEGREE,
            });
        }
        let mut nf = vec![0u128; monos.len()];
        // Slots run from lex-greatest to lex-smallest, so fill in reverse: every
        // monomial produced by a rewrite step is lex-smaller and already known.
        for k in (0..monos.len()).rev() {
            let m = monos[k];
            nf[k] = match gb.divisor_of(m) {
                None => 1u128 << basis.iter().position(|&x| x == m).unwrap(),
                Some(i) => {
                    let q = m.checked_div(gb.lms()[i]).unwrap();
                    gb.polys()[i].terms()[1..]
                        .iter()
                        .fold(0u128, |acc, &t| acc ^ nf[slot(t.times(q))])
                }
            };
        }
        blocks.push(DegreeBlock { basis, nf });
    }

    let mut ring = QuotientRing {
        n,
        gb,
        profile,
        blocks,
        heights: Heights { h2: 0, h3: 0 },
    };
    ring.heights = brute_heights(&ring);
    Ok(ring)
}

impl QuotientRing {
    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn groebner_basis(&self) -> &GroebnerBasis {
        &self.gb
    }

    pub fn profile(&self) -> Option<&BinaryProfile> {
        self.profile.as_ref()
    }

    /// `3n - 9`; every basis monomial has strictly smaller degree.
    pub fn top_degree(&self) -> u64 {
        self.blocks.len() as u64
    }

    pub fn heights(&self) -> Heights {
        self.heights
    }

    pub fn basis_in_degree(&self, d: u64) -> &[Monomial] {
        self.blocks.get(d as usize).map_or(&[], |b| &b.basis)
    }

    /// All basis monomials, by increasing degree.
    pub fn basis(&self) -> impl Iterator<Item = Monomial> + '_ {
        self.blocks.iter().flat_map(|b| b.basis.iter().copied())
    }

    /// Number of basis monomials in each degree `0 .. 3n - 9`.
    pub fn basis_counts(&self) -> Vec<usize> {
        self.blocks.iter().map(|b| b.basis.len()).collect()
    }

    pub fn dim(&self) -> usize {
        self.blocks.iter().map(|b| b.basis.len()).sum()
    }

    pub fn is_basis_monomial(&self, m: Monomial) -> bool {
        self.basis_in_degree(m.degree()).contains(&m)
    }

    /// Normal form of `w2^b w3^c` as a bitset over the basis of its degree.
    pub fn nf_bits(&self, m: Monomial) -> u128 {
        match self.blocks.get(m.degree() as usize) {
            Some(block) => block.nf[slot(m)],
            None => 0,
        }
    }

    /// Expands a bitset over the basis of degree `d`.
    pub fn bits_to_poly(&self, d: u64, bits: u128) -> Poly {
        let basis = self.basis_in_degree(d);
        let terms = (0..basis.len())
            .filter(|&i| bits >> i & 1 == 1)
            .map(|i| basis[i])
            .collect();
        Poly::from_sorted_unchecked(terms)
    }

    pub fn nf_monomial(&self, b: u32, c: u32) -> Poly {
        let m = Monomial::new(b, c);
        self.bits_to_poly(m.degree(), self.nf_bits(m))
    }

    pub fn class_nonzero(&self, b: u32, c: u32) -> bool {
        self.nf_bits(Monomial::new(b, c)) != 0
    }

    /// Normal form of an arbitrary polynomial.
    pub fn reduce(&self, p: &Poly) -> Poly {
        let mut by_degree: HashMap<u64, u128> = HashMap::new();
        for &m in p.terms() {
            *by_degree.entry(m.degree()).or_default() ^= self.nf_bits(m);
        }
        let terms = by_degree
            .into_iter()
            .flat_map(|(d, bits)| self.bits_to_poly(d, bits).into_terms());
        Poly::from_terms(terms)
    }

    pub fn mul(&self, a: &Poly, b: &Poly) -> Poly {
        self.reduce(&(a * b))
    }

    /// Normal form by plain division with the Gröbner basis; the reference path.
    pub fn nf_by_division(&self, b: u32, c: u32) -> Poly {
        self.gb.normal_form(&Poly::monomial(b, c))
    }

    /// Normal form by the closed rewrite rule attached to each closed-form basis
    /// element, always using the largest applicable index.
    pub fn nf_fast(&self, b: u32, c: u32) -> Result<Poly> {
        let profile = self.profile.as_ref().ok_or(AlgebraError::Unsupported {
            n: self.n as u64,
            min: 7,
        })?;
        let mut memo = HashMap::new();
        Ok(fast_rewrite(&self.gb, profile, Monomial::new(b, c), &mut memo))
    }

    /// Nonzero monomials of degree `d` with their normal forms.
    pub fn nonzero_monomials_in_degree(&self, d: u64) -> Vec<(Monomial, Poly)> {
        monomials_of_degree(d)
            .filter_map(|m| {
                let bits = self.nf_bits(m);
                (bits != 0).then(|| (m, self.bits_to_poly(d, bits)))
            })
            .collect()
    }
}

fn fast_rewrite(gb: &GroebnerBasis, profile: &BinaryProfile, m: Monomial, memo: &mut HashMap<Monomial, Poly>) -> Poly {
    if let Some(p) = memo.get(&m) {
        return p.clone();
    }
    let Some(i) = (0..gb.len()).rev().find(|&i| gb.lms()[i].divides(m)) else {
        return Poly::from(m);
    };
    let l = profile.l[i] as i64;
    let step = 1i64 << i;
    let mut acc = Poly::zero();
    // 2d + 3e = 2l with e > 0 forces e even.
    for e in (2..=(2 * l) / 3).step_by(2) {
        let d = (2 * l - 3 * e) / 2;
        if !lucas_binom_mod2(d + e, e) {
            continue;
        }
        let next = Monomial::new((m.b as i64 - step * (l - d)) as u32, (m.c as i64 + step * e) as u32);
        acc += &fast_rewrite(gb, profile, next, memo);
    }
    memo.insert(m, acc.clone());
    acc
}

/// Heights of `w2` and `w3` by raising powers until they vanish.
pub fn brute_heights(q: &QuotientRing) -> Heights {
    let height = |f: &dyn Fn(u32) -> bool| (1..).take_while(|&k| f(k)).last().unwrap_or(0);
    Heights {
        h2: height(&|k| q.class_nonzero(k, 0)),
        h3: height(&|k| q.class_nonzero(0, k)),
    }
}

/// Closed formula for the heights of `w2` and `w3`, valid for `n >= 7`.
pub fn heights_closed_form(n: u32) -> Result<Heights> {
    if n < 7 {
        return Err(AlgebraError::Unsupported { n: n as u64, min: 7 });
    }
    let n = n as i64;
    let t = t_of(n as u64);
    let p = |k: u32| 1i64 << k;
    let h2 = if n <= p(t) + p(t - 1) {
        p(t) - 4
    } else {
        let s = (1..=t - 2)
            .find(|&s| p(t + 1) - p(s + 1) < n && n <= p(t + 1) - p(s))
            .expect("n lies in one of the upper bands");
        p(t + 1) - 3 * p(s) - 1
    };
    let h3 = (p(t - 1) - 2).max(n - p(t) - 1);
    Ok(Heights {
        h2: h2 as u32,
        h3: h3 as u32,
    })
}

/// The nonzero monomials of degree `d` are exactly `expected`, and all of them
/// equal the basis monomial `representative`.
pub fn verify_degree_classification(
    q: &QuotientRing,
    label: &str,
    d: u64,
    expected: &[Monomial],
    representative: Monomial,
) -> Report {
    let mut rep = Report::new(format!("{label}: degree {d} of W_{}", q.n()));
    let n = Some(q.n() as u64);
    let found = q.nonzero_monomials_in_degree(d);
    let mut got: Vec<Monomial> = found.iter().map(|(m, _)| *m).collect();
    let mut want = expected.to_vec();
    got.sort();
    want.sort();
    let show = |v: &[Monomial]| v.iter().map(|m| m.to_string()).collect::<Vec<_>>().join(", ");
    rep.check(
        format!("{label}: nonzero monomials"),
        n,
        got == want,
        show(&want),
        show(&got),
    );
    rep.check_eq(
        format!("{label}: representative in basis"),
        n,
        true,
        q.is_basis_monomial(representative),
    );
    let rep_poly = Poly::from(representative);
    for (m, nf) in &found {
        rep.check_eq(
            format!("{label}: {m} equals {representative}"),
            n,
            rep_poly.clone(),
            nf.clone(),
        );
    }
    rep
}

/// Degree `2^{t+1} - 11` of `W_{2^t - 1}`, `t >= 3`.
pub fn classify_below_power(t: u32) -> Result<Report> {
    let p = |k: u32| 1u32 << k;
    let q = build_quotient(p(t) - 1)?;
    let expected: Vec<Monomial> = (2..t)
        .map(|k| Monomial::new(p(t) - 3 * p(k - 1) - 1, p(k) - 3))
        .collect();
    Ok(verify_degree_classification(
        &q,
        "below power of two",
        (p(t + 1) - 11) as u64,
        &expected,
        Monomial::new(p(t - 2) - 1, p(t - 1) - 3),
    ))
}

/// Degree `2^{t+1} - 8` of `W_{2^t + 2^{t-2} + eps}`, `t >= 5`, `eps` in `{1, 2}`.
pub fn classify_quarter_plus(t: u32, eps: u32) -> Result<Report> {
    let p = |k: u32| 1u32 << k;
    let q = build_quotient(p(t) + p(t - 2) + eps)?;
    let expected: Vec<Monomial> = (1..t)
        .map(|k| Monomial::new(p(t) - 3 * p(k - 1) - 1, p(k) - 2))
        .collect();
    Ok(verify_degree_classification(
        &q,
        "quarter plus",
        (p(t + 1) - 8) as u64,
        &expected,
        Monomial::new(p(t - 2) - 1, p(t - 1) - 2),
    ))
}

/// Degree `2^{t+2} - 3*2^{s+1} - 5` of `W_{2^{t+1} - 2^{s+1} + 1}`, `1 <= s <= t - 3`.
pub fn classify_last_band(t: u32, s: u32) -> Result<Report> {
    let p = |k: u32| 1u32 << k;
    let q = build_quotient(p(t + 1) - p(s + 1) + 1)?;
    let expected: Vec<Monomial> = (s + 2..=t)
        .map(|k| Monomial::new(p(t + 1) - 3 * p(k - 1) - 1, p(k) - p(s + 1) - 1))
        .collect();
    Ok(verify_degree_classification(
        &q,
        "last band",
        (p(t + 2) - 3 * p(s + 1) - 5) as u64,
        &expected,
        Monomial::new(p(t - 1) - 1, p(t) - p(s + 1) - 1),
    ))
}

/// For `2^{t+1} - 2^{s+1} + 1 <= n <= 2^{t+1} - 2^s` with `1 <= s <= t - 2`, the class
/// `w2^{2^{t+1}-3*2^s-1} w3^{n-2^{t+1}+2^{s+1}-1}` is nonzero.
pub fn verify_band_witness_classes(q: &QuotientRing) -> Report {
    let n = q.n() as i64;
    let mut rep = Report::new(format!("band witness classes W_{n}"));
    if n < 7 {
        return rep;
    }
    let t = t_of(n as u64);
    let p = |k: u32| 1i64 << k;
    for s in 1..=t.saturating_sub(2) {
        if p(t + 1) - p(s + 1) < n && n <= p(t + 1) - p(s) {
            let (b, c) = (p(t + 1) - 3 * p(s) - 1, n - p(t + 1) + p(s + 1) - 1);
            rep.check_eq(
                format!("w2^{b}*w3^{c} nonzero (s={s})"),
                Some(n as u64),
                true,
                q.class_nonzero(b as u32, c as u32),
            );
        }
    }
    rep
}

/// Every basis monomial has degree below `3n - 9`, and the table agrees with the
/// staircase of leading monomials.
pub fn verify_top_degree(q: &QuotientRing) -> Report {
    let mut rep = Report::new(format!("top degree W_{}", q.n()));
    let n = Some(q.n() as u64);
    let top = 3 * q.n() as u64 - 9;
    let bad = q.basis().find(|m| m.degree() >= top);
    rep.check(
        "basis degrees below 3n-9",
        n,
        bad.is_none(),
        format!("< {top}"),
        bad.map_or("none".into(), |m| m.to_string()),
    );
    let gb = q.groebner_basis();
    let max_b = gb.lms().iter().filter(|m| m.c == 0).map(|m| m.b).min().unwrap_or(0);
    let max_c = gb.lms().iter().filter(|m| m.b == 0).map(|m| m.c).min().unwrap_or(0);
    let staircase = (0..max_b)
        .flat_map(|b| (0..max_c).map(move |c| Monomial::new(b, c)))
        .filter(|&m| gb.divisor_of(m).is_none())
        .count();
    rep.check_eq("basis size equals staircase size", n, staircase, q.dim());
    rep
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basis_examples() {
        let q15 = build_quotient(15).unwrap();
        assert!(q15.is_basis_monomial(Monomial::new(3, 6)));
        assert!(q15.is_basis_monomial(Monomial::new(3, 5)));
        assert!(q15.is_basis_monomial(Monomial::ONE));
        let q21 = build_quotient(21).unwrap();
        assert!(q21.is_basis_monomial(Monomial::new(3, 6)));
        assert!(q21.is_basis_monomial(Monomial::new(6, 4)));
    }

    #[test]
    fn normal_form_examples() {
        let q22 = build_quotient(22).unwrap();
        assert!(q22.nf_monomial(12, 1).is_zero());
        assert!(q22.nf_monomial(9, 3).is_zero());
        assert_eq!(q22.nf_monomial(9, 2), Poly::monomial(3, 6));
        let q21 = build_quotient(21).unwrap();
        assert_eq!(q21.nf_monomial(9, 2), Poly::monomial(3, 6));
        assert_eq!(q21.nf_monomial(12, 0), Poly::monomial(3, 6));
        assert!(q21.class_nonzero(0, 0));
        let q27 = build_quotient(27).unwrap();
        assert!(q27.class_nonzero(19, 2));
        assert!(!q27.class_nonzero(36, 0));
    }

    #[test]
    fn table_agrees_with_division_and_fast_rewrite() {
        for n in [7u32, 12, 15, 21, 22, 30, 33] {
            let q = build_quotient(n).unwrap();
            for d in 0..q.top_degree() + 6 {
                for m in monomials_of_degree(d) {
                    let nf = q.nf_monomial(m.b, m.c);
                    assert_eq!(nf, q.nf_by_division(m.b, m.c), "n={n} m={m}");
                    assert_eq!(nf, q.nf_fast(m.b, m.c).unwrap(), "n={n} m={m}");
                }
            }
        }
    }

    #[test]
    fn heights_examples() {
        assert_eq!(build_quotient(15).unwrap().heights(), Heights { h2: 12, h3: 6 });
        assert_eq!(build_quotient(24).unwrap().heights(), Heights { h2: 12, h3: 7 });
        assert_eq!(build_quotient(30).unwrap().heights(), Heights { h2: 25, h3: 13 });
        assert_eq!(heights_closed_form(28).unwrap().h2, 19);
        assert_eq!(heights_closed_form(24).unwrap().h3, 7);
        assert!(heights_closed_form(6).is_err());
    }

    #[test]
    fn heights_agree_on_small_range() {
        for n in 7..=40 {
            assert_eq!(
                build_quotient(n).unwrap().heights(),
                heights_closed_form(n).unwrap(),
                "n={n}"
            );
        }
    }

    #[test]
    fn smallest_ring_builds_via_completion() {
        let q = build_quotient(6).unwrap();
        assert_eq!(q.top_degree(), 9);
        assert!(verify_top_degree(&q).passed());
        assert!(build_quotient(5).is_err());
    }

    #[test]
    fn classifications() {
        for t in 3..=5 {
            let rep = classify_below_power(t).unwrap();
            assert!(rep.passed(), "{rep}");
        }
        for eps in 1..=2 {
            let rep = classify_quarter_plus(5, eps).unwrap();
            assert!(rep.passed(), "{rep}");
        }
        let rep = classify_last_band(5, 1).unwrap();
        assert!(rep.passed(), "{rep}");
    }

    #[test]
    fn classification_rejects_wrong_expectation() {
        let q = build_quotient(15).unwrap();
        let rep = verify_degree_classification(&q, "wrong", 21, &[Monomial::new(3, 5)], Monomial::new(3, 5));
        assert!(!rep.passed());
    }

    #[test]
    fn ring_multiplication_is_reduced() {
        let q = build_quotient(21).unwrap();
        let x = q.mul(&Poly::monomial(6, 0), &Poly::monomial(3, 2));
        assert_eq!(x, Poly::monomial(3, 6));
    }
}
