//! Gröbner bases for `I_n = (g_{n-2}, g_{n-1}, g_n)` under lex order with `w2 > w3`.
//!
//! Two constructions are provided: the closed form `F_n` (valid for `n >= 7`) and a
//! plain Buchberger completion used as an independent oracle.

use std::collections::BTreeSet;

use log::trace;
use serde::{Deserialize, Serialize};

use crate::error::{AlgebraError, Result};
use crate::gseries::GSeries;
use crate::poly::{Monomial, Poly};

/// Binary data of `n` that drives the closed-form basis.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BinaryProfile {
    pub n: u32,
    /// `2^t - 1 <= n < 2^{t+1} - 1`.
    pub t: u32,
    /// Bits of `n - 2^t + 1`, least significant first; length `t`.
    pub alpha: Vec<u8>,
    /// Partial sums `s_i = sum_{j <= i} alpha_j 2^j`.
    pub s: Vec<u64>,
    pub l: Vec<u64>,
}

/// `t` with `2^t - 1 <= n < 2^{t+1} - 1`.
pub fn t_of(n: u64) -> u32 {
    63 - (n + 1).leading_zeros()
}

pub fn binary_profile(n: u32) -> Result<BinaryProfile> {
    if n < 7 {
        return Err(AlgebraError::Unsupported { n: n as u64, min: 7 });
    }
    let n64 = n as u64;
    let t = t_of(n64);
    let m = n64 + 1 - (1u64 << t);
    let alpha: Vec<u8> = (0..t).map(|j| ((m >> j) & 1) as u8).collect();
    let mut s = Vec::with_capacity(t as usize);
    let mut acc = 0u64;
    for (j, &a) in alpha.iter().enumerate() {
        acc += (a as u64) << j;
        s.push(acc);
    }
    let l: Vec<u64> = (0..t as usize)
        .map(|i| {
            let tail: u64 = (i + 1..t as usize).map(|j| (alpha[j] as u64) << (j - i - 1)).sum();
            (1u64 << (t as usize - 1 - i)) + tail - 1
        })
        .collect();
    let profile = BinaryProfile { n, t, alpha, s, l };
    for i in 0..t as usize {
        let lhs = (n64 + 1 - profile.s[i]) as i64 / 2 - (1i64 << i);
        if (n64 + 1 - profile.s[i]) % 2 != 0 || lhs != (profile.l[i] << i) as i64 {
            return Err(AlgebraError::Inconsistent(format!(
                "profile integrality fails at n={n}, i={i}"
            )));
        }
    }
    Ok(profile)
}

impl BinaryProfile {
    /// `s_{i-1}`, with `s_{-1} = 0`.
    pub fn s_prev(&self, i: usize) -> u64 {
        if i == 0 {
            0
        } else {
            self.s[i - 1]
        }
    }

    /// Exponent of the `w3` factor of `f_i`.
    pub fn w3_power(&self, i: usize) -> u64 {
        self.alpha[i] as u64 * self.s_prev(i)
    }

    /// Index `r` of the `g_r` factor of `f_i`.
    pub fn g_index(&self, i: usize) -> u64 {
        self.n as u64 - 2 + (1u64 << i) - self.s[i]
    }

    /// Predicted leading monomial of `f_i`.
    pub fn leading_monomial(&self, i: usize) -> Monomial {
        Monomial::new(
            ((1u64 << i) * self.l[i]) as u32,
            (self.w3_power(i) + (1u64 << i) - 1) as u32,
        )
    }
}

/// An ordered list of polynomials together with their leading monomials.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroebnerBasis {
    n: Option<u32>,
    polys: Vec<Poly>,
    lms: Vec<Monomial>,
}

impl GroebnerBasis {
    /// Wraps `polys`, dropping zeros. Does not check the Gröbner property.
    pub fn from_polys(n: Option<u32>, polys: Vec<Poly>) -> Self {
        let polys: Vec<Poly> = polys.into_iter().filter(|p| !p.is_zero()).collect();
        let lms = polys.iter().map(|p| p.terms()[0]).collect();
        GroebnerBasis { n, polys, lms }
    }

    pub fn n(&self) -> Option<u32> {
        self.n
    }

    pub fn polys(&self) -> &[Poly] {
        &self.polys
    }

    pub fn lms(&self) -> &[Monomial] {
        &self.lms
    }

    pub fn len(&self) -> usize {
        self.polys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.polys.is_empty()
    }

    /// Index of the first basis element whose leading monomial divides `m`.
    pub fn divisor_of(&self, m: Monomial) -> Option<usize> {
        self.lms.iter().position(|lm| lm.divides(m))
    }

    pub fn normal_form(&self, p: &Poly) -> Poly {
        reduce_by(p, &self.polys, &self.lms)
    }

    pub fn reduces_to_zero(&self, p: &Poly) -> bool {
        self.normal_form(p).is_zero()
    }

    /// Buchberger's criterion: every S-polynomial reduces to zero.
    pub fn is_groebner_basis(&self) -> bool {
        for i in 0..self.len() {
            for j in i + 1..self.len() {
                if self.lms[i].is_coprime(self.lms[j]) {
                    continue;
                }
                let s = s_polynomial(&self.polys[i], self.lms[i], &self.polys[j], self.lms[j]);
                if !self.reduces_to_zero(&s) {
                    return false;
                }
            }
        }
        true
    }

    /// True iff no leading monomial divides another.
    pub fn is_minimal(&self) -> bool {
        (0..self.len()).all(|i| (0..self.len()).all(|j| i == j || !self.lms[i].divides(self.lms[j])))
    }
}

fn s_polynomial(f: &Poly, lf: Monomial, g: &Poly, lg: Monomial) -> Poly {
    let lcm = lf.lcm(lg);
    &f.shift(lcm.checked_div(lf).unwrap()) + &g.shift(lcm.checked_div(lg).unwrap())
}

/// Full reduction of `p`: repeatedly rewrites the lex-greatest reducible monomial
/// with the lowest-index divisor.
fn reduce_by(p: &Poly, polys: &[Poly], lms: &[Monomial]) -> Poly {
    let mut work: BTreeSet<Monomial> = p.terms().iter().copied().collect();
    let mut out = Vec::new();
    while let Some(m) = work.pop_last() {
        match lms.iter().position(|lm| lm.divides(m)) {
            Some(i) => {
                let q = m.checked_div(lms[i]).unwrap();
                trace!("reduce {m} by f{i} (quotient {q})");
                for &term in &polys[i].terms()[1..] {
                    let x = term.times(q);
                    if !work.remove(&x) {
                        work.insert(x);
                    }
                }
            }
            None => out.push(m),
        }
    }
    Poly::from_sorted_unchecked(out)
}

/// Closed-form basis `f_i = w3^{alpha_i s_{i-1}} g_{n-2+2^i-s_i}` for `0 <= i < t`.
pub fn closed_form_basis(n: u32) -> Result<GroebnerBasis> {
    closed_form_basis_with(n, &mut GSeries::new())
}

pub fn closed_form_basis_with(n: u32, series: &mut GSeries) -> Result<GroebnerBasis> {
    let profile = binary_profile(n)?;
    let mut polys = Vec::with_capacity(profile.t as usize);
    for i in 0..profile.t as usize {
        let g = series.get(profile.g_index(i) as usize);
        let f = g.shift(Monomial::new(0, profile.w3_power(i) as u32));
        let lm = f.leading_monomial()?;
        if lm != profile.leading_monomial(i) {
            return Err(AlgebraError::Inconsistent(format!(
                "n={n}: LM(f{i}) = {lm}, predicted {}",
                profile.leading_monomial(i)
            )));
        }
        polys.push(f);
    }
    Ok(GroebnerBasis::from_polys(Some(n), polys))
}

/// Buchberger completion with the product criterion, selecting the pair with the
/// smallest lcm first.
pub fn buchberger(generators: &[Poly]) -> GroebnerBasis {
    let mut polys: Vec<Poly> = Vec::new();
    let mut lms: Vec<Monomial> = Vec::new();
    for g in generators {
        let r = reduce_by(g, &polys, &lms);
        if !r.is_zero() {
            lms.push(r.terms()[0]);
            polys.push(r);
        }
    }
    let mut pairs: Vec<(usize, usize)> = (0..polys.len()).flat_map(|j| (0..j).map(move |i| (i, j))).collect();
    while !pairs.is_empty() {
        let k = (0..pairs.len())
            .min_by_key(|&k| {
                let (i, j) = pairs[k];
                (lms[i].lcm(lms[j]), i, j)
            })
            .unwrap();
        let (i, j) = pairs.swap_remove(k);
        if lms[i].is_coprime(lms[j]) {
            continue;
        }
        let s = s_polynomial(&polys[i], lms[i], &polys[j], lms[j]);
        let r = reduce_by(&s, &polys, &lms);
        if !r.is_zero() {
            trace!("buchberger: new element with LM {}", r.terms()[0]);
            let new = polys.len();
            lms.push(r.terms()[0]);
            polys.push(r);
            pairs.extend((0..new).map(|i| (i, new)));
        }
    }
    GroebnerBasis { n: None, polys, lms }
}

/// The reduced basis of the same ideal: minimal, tail-reduced, sorted by
/// decreasing leading monomial.
pub fn reduce_basis(gb: &GroebnerBasis) -> GroebnerBasis {
    let mut keep: Vec<usize> = Vec::new();
    for i in 0..gb.len() {
        let redundant =
            (0..gb.len()).any(|j| j != i && gb.lms[j].divides(gb.lms[i]) && (gb.lms[j] != gb.lms[i] || j < i));
        if !redundant {
            keep.push(i);
        }
    }
    let mut polys: Vec<Poly> = keep.iter().map(|&i| gb.polys[i].clone()).collect();
    for i in 0..polys.len() {
        let (others, lms): (Vec<Poly>, Vec<Monomial>) = polys
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i)
            .map(|(_, p)| (p.clone(), p.terms()[0]))
            .unzip();
        polys[i] = reduce_by(&polys[i], &others, &lms);
    }
    polys.sort_by(|a, b| b.terms()[0].cmp(&a.terms()[0]));
    GroebnerBasis::from_polys(gb.n, polys)
}

/// The three generators `g_{n-2}, g_{n-1}, g_n`.
pub fn generators(n: u32, series: &mut GSeries) -> Vec<Poly> {
    (n - 2..=n).map(|r| series.get(r as usize).clone()).collect()
}

/// A Gröbner basis of `I_n`: the closed form for `n >= 7`, Buchberger for `2 <= n < 7`.
pub fn ideal_basis(n: u32, series: &mut GSeries) -> Result<GroebnerBasis> {
    match n {
        0 | 1 => Err(AlgebraError::Unsupported { n: n as u64, min: 2 }),
        2..=6 => {
            let gb = reduce_basis(&buchberger(&generators(n, series)));
            Ok(GroebnerBasis { n: Some(n), ..gb })
        }
        _ => closed_form_basis_with(n, series),
    }
}

pub fn ideal_member(p: &Poly, n: u32) -> Result<bool> {
    Ok(ideal_basis(n, &mut GSeries::new())?.reduces_to_zero(p))
}

/// Membership in `w3 * I` for the ideal with basis `gb`.
pub fn in_w3_ideal(p: &Poly, gb: &GroebnerBasis) -> bool {
    if p.terms().iter().any(|m| m.c == 0) {
        return false;
    }
    let q = Poly::from_sorted_unchecked(p.terms().iter().map(|m| Monomial::new(m.b, m.c - 1)).collect());
    gb.reduces_to_zero(&q)
}

pub fn w3_ideal_member(p: &Poly, n: u32) -> Result<bool> {
    Ok(in_w3_ideal(p, &ideal_basis(n, &mut GSeries::new())?))
}

/// JSON form of a basis: `{n, t, alpha[], s[], polys[{terms[{b,c}], lm{b,c}}]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BasisDocument {
    pub n: u32,
    pub t: Option<u32>,
    pub alpha: Vec<u8>,
    pub s: Vec<u64>,
    pub polys: Vec<BasisEntry>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BasisEntry {
    pub terms: Vec<Monomial>,
    pub lm: Monomial,
}

impl BasisDocument {
    pub fn new(n: u32, gb: &GroebnerBasis) -> Self {
        let profile = binary_profile(n).ok();
        BasisDocument {
            n,
            t: profile.as_ref().map(|p| p.t),
            alpha: profile.as_ref().map(|p| p.alpha.clone()).unwrap_or_default(),
            s: profile.as_ref().map(|p| p.s.clone()).unwrap_or_default(),
            polys: gb
                .polys()
                .iter()
                .zip(gb.lms())
                .map(|(p, &lm)| BasisEntry {
                    terms: p.terms().to_vec(),
                    lm,
                })
                .collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(terms: &[(u32, u32)]) -> Poly {
        Poly::from_terms(terms.iter().map(|&(b, c)| Monomial::new(b, c)))
    }

    #[test]
    fn profiles() {
        let pr = binary_profile(21).unwrap();
        assert_eq!(
            (pr.t, pr.alpha.clone(), pr.s.clone()),
            (4, vec![0, 1, 1, 0], vec![0, 2, 6, 6])
        );
        let pr = binary_profile(15).unwrap();
        assert_eq!((pr.t, pr.alpha.clone(), pr.s.clone()), (4, vec![0; 4], vec![0; 4]));
        for t in 3..=7 {
            let n = (1u32 << (t + 1)) - 2;
            let pr = binary_profile(n).unwrap();
            assert_eq!(pr.alpha, vec![1; t as usize]);
            assert_eq!(*pr.s.last().unwrap(), (1u64 << t) - 1);
        }
        assert!(matches!(binary_profile(6), Err(AlgebraError::Unsupported { .. })));
    }

    #[test]
    fn profile_invariants() {
        for n in 7..=300u32 {
            let pr = binary_profile(n).unwrap();
            assert!((1u64 << pr.t) - 1 <= n as u64 && (n as u64) < (2u64 << pr.t) - 1);
            assert_eq!(*pr.s.last().unwrap(), n as u64 + 1 - (1u64 << pr.t));
            assert!(pr.s.windows(2).all(|w| w[0] <= w[1]));
            for i in 0..pr.t as usize {
                let r = pr.g_index(i);
                assert_eq!(r, (1u64 << i) * (2 * pr.l[i] + 3) - 3);
            }
        }
    }

    #[test]
    fn closed_form_examples() {
        let f21 = closed_form_basis(21).unwrap();
        assert_eq!(f21.polys()[2], p(&[(4, 5)]));
        assert_eq!(f21.polys()[3], p(&[(0, 7)]));
        let f15 = closed_form_basis(15).unwrap();
        assert_eq!(f15.polys()[0].to_string(), "w2^7 + w2^4*w3^2 + w2*w3^4");
        let f22 = closed_form_basis(22).unwrap();
        assert_eq!(f22.polys()[1], p(&[(8, 2), (2, 6)]));
    }

    #[test]
    fn normal_form_examples() {
        let f15 = closed_form_basis(15).unwrap();
        assert!(f15.normal_form(&p(&[(0, 7)])).is_zero());
        let f21 = closed_form_basis(21).unwrap();
        let nf = f21.normal_form(&p(&[(12, 0)]));
        assert_eq!(nf, f21.normal_form(&p(&[(3, 6)])));
        assert_eq!(nf, p(&[(3, 6)]));
        assert_eq!(f21.normal_form(&nf), nf);
    }

    #[test]
    fn buchberger_small_cases() {
        let unit = reduce_basis(&buchberger(&[Poly::one()]));
        assert_eq!(unit.polys(), &[Poly::one()]);
        let principal = reduce_basis(&buchberger(&[p(&[(1, 0)])]));
        assert_eq!(principal.polys(), &[p(&[(1, 0)])]);
        let gb = GroebnerBasis::from_polys(None, vec![p(&[(1, 0)]), p(&[(2, 0), (0, 1)])]);
        let red = reduce_basis(&buchberger(gb.polys()));
        assert_eq!(red.polys(), &[p(&[(1, 0)]), p(&[(0, 1)])]);
    }

    #[test]
    fn reduce_basis_is_idempotent() {
        let red = reduce_basis(&closed_form_basis(21).unwrap());
        assert_eq!(reduce_basis(&red), red);
        assert!(red.is_minimal());
    }

    #[test]
    fn closed_form_matches_buchberger_on_small_range() {
        let mut s = GSeries::new();
        for n in 7..=24 {
            let closed = reduce_basis(&closed_form_basis_with(n, &mut s).unwrap());
            let generic = reduce_basis(&buchberger(&generators(n, &mut s)));
            assert_eq!(closed.polys(), generic.polys(), "n={n}");
        }
    }

    #[test]
    fn membership_examples() {
        let mut s = GSeries::new();
        for n in [7u32, 12, 21, 40] {
            let gb = ideal_basis(n, &mut s).unwrap();
            for r in n - 2..n + 20 {
                assert!(gb.reduces_to_zero(s.get(r as usize)), "g_{r} in I_{n}");
            }
            assert!(!gb.reduces_to_zero(&Poly::one()));
        }
        assert!(ideal_member(&p(&[(6, 0)]), 12).unwrap());
        let x = &(s.get(24) + &p(&[(12, 0)])) + &p(&[(3, 6)]);
        assert!(w3_ideal_member(&x, 21).unwrap());
        assert!(!w3_ideal_member(&p(&[(1, 0)]), 21).unwrap());
        assert!(w3_ideal_member(&Poly::zero(), 21).unwrap());
        assert!(ideal_member(&Poly::one(), 1).is_err());
    }

    #[test]
    fn small_index_ideals_via_buchberger() {
        let mut s = GSeries::new();
        let gb = ideal_basis(6, &mut s).unwrap();
        assert!(gb.is_groebner_basis());
        for r in 4..30 {
            assert!(gb.reduces_to_zero(s.get(r)));
        }
    }

    #[test]
    fn basis_document_round_trip() {
        let gb = closed_form_basis(22).unwrap();
        let doc = BasisDocument::new(22, &gb);
        let json = serde_json::to_string(&doc).unwrap();
        assert_eq!(serde_json::from_str::<BasisDocument>(&json).unwrap(), doc);
        assert_eq!(doc.s, vec![1, 3, 7, 7]);
    }
}
