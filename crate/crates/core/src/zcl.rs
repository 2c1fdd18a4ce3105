//! The tensor square `W_n ⊗ W_n`, zero-divisors `z(a) = a⊗1 + 1⊗a`, and the
//! zero-divisor cup-length of `W_n`.
//!
//! The product `z(w2)^β z(w3)^γ` expands as
//! `Σ C(β,b) C(γ,c) w2^b w3^c ⊗ w2^{β-b} w3^{γ-c}`, and it is nonzero iff one of
//! its pieces of fixed left degree `r = 2b + 3c` is nonzero.

use std::collections::BTreeSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{AlgebraError, Result};
use crate::groebner::t_of;
use crate::poly::{lucas_binom_mod2, monomials_of_degree, Monomial, Poly};
use crate::quotient::QuotientRing;
use crate::report::Report;

/// An element of `W_n ⊗ W_n`: a set of pairs of basis monomials.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct TensorElement {
    pairs: BTreeSet<(Monomial, Monomial)>,
}

impl TensorElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::from_pair(Monomial::ONE, Monomial::ONE)
    }

    /// Wraps a single pair, assumed to consist of basis monomials.
    fn from_pair(a: Monomial, b: Monomial) -> Self {
        TensorElement {
            pairs: BTreeSet::from([(a, b)]),
        }
    }

    pub fn pairs(&self) -> impl Iterator<Item = &(Monomial, Monomial)> {
        self.pairs.iter()
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_zero(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    fn toggle(&mut self, pair: (Monomial, Monomial)) {
        if !self.pairs.remove(&pair) {
            self.pairs.insert(pair);
        }
    }

    /// `a ⊗ b` with both factors reduced in `q`.
    pub fn simple(q: &QuotientRing, a: &Poly, b: &Poly) -> Self {
        let (a, b) = (q.reduce(a), q.reduce(b));
        let mut out = TensorElement::zero();
        for &x in a.terms() {
            for &y in b.terms() {
                out.toggle((x, y));
            }
        }
        out
    }

    /// `z(a) = a ⊗ 1 + 1 ⊗ a`.
    pub fn zero_divisor(q: &QuotientRing, a: &Poly) -> Self {
        &Self::simple(q, a, &Poly::one()) + &Self::simple(q, &Poly::one(), a)
    }

    pub fn mul(&self, other: &TensorElement, q: &QuotientRing) -> TensorElement {
        let mut out = TensorElement::zero();
        for &(a1, a2) in &self.pairs {
            for &(b1, b2) in &other.pairs {
                let left = q.nf_monomial(a1.b + b1.b, a1.c + b1.c);
                if left.is_zero() {
                    continue;
                }
                let right = q.nf_monomial(a2.b + b2.b, a2.c + b2.c);
                for &x in left.terms() {
                    for &y in right.terms() {
                        out.toggle((x, y));
                    }
                }
            }
        }
        out
    }

    pub fn pow(&self, e: u32, q: &QuotientRing) -> TensorElement {
        (0..e).fold(TensorElement::one(), |acc, _| acc.mul(self, q))
    }

    /// The image under `x ⊗ y ↦ y ⊗ x`.
    pub fn swap(&self) -> TensorElement {
        TensorElement {
            pairs: self.pairs.iter().map(|&(a, b)| (b, a)).collect(),
        }
    }
}

impl std::ops::Add for &TensorElement {
    type Output = TensorElement;
    fn add(self, rhs: &TensorElement) -> TensorElement {
        TensorElement {
            pairs: self.pairs.symmetric_difference(&rhs.pairs).copied().collect(),
        }
    }
}

impl std::fmt::Display for TensorElement {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.pairs.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self.pairs.iter().rev().map(|(a, b)| format!("{a} (x) {b}")).collect();
        f.write_str(&parts.join(" + "))
    }
}

/// The part of `z(w2)^β z(w3)^γ` whose left factor has degree `r`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedPiece {
    pub r: u64,
    pub beta: u32,
    pub gamma: u32,
    pub element: TensorElement,
}

/// The piece as a matrix over GF(2): row `i` is the bitset of right basis
/// monomials paired with left basis monomial `i`.
fn piece_rows(q: &QuotientRing, beta: u32, gamma: u32, r: u64) -> Vec<u128> {
    let total = 2 * beta as u64 + 3 * gamma as u64;
    let mut rows = vec![0u128; q.basis_in_degree(r).len()];
    if rows.is_empty() || q.basis_in_degree(total - r).is_empty() {
        return rows;
    }
    for m in monomials_of_degree(r) {
        if m.b > beta || m.c > gamma {
            continue;
        }
        if !lucas_binom_mod2(beta as i64, m.b as i64) || !lucas_binom_mod2(gamma as i64, m.c as i64) {
            continue;
        }
        let u = q.nf_bits(m);
        if u == 0 {
            continue;
        }
        let v = q.nf_bits(Monomial::new(beta - m.b, gamma - m.c));
        if v == 0 {
            continue;
        }
        for (i, row) in rows.iter_mut().enumerate() {
            if u >> i & 1 == 1 {
                *row ^= v;
            }
        }
    }
    rows
}

fn rows_to_element(q: &QuotientRing, r: u64, right_degree: u64, rows: &[u128]) -> TensorElement {
    let left = q.basis_in_degree(r);
    let right = q.basis_in_degree(right_degree);
    let mut out = TensorElement::zero();
    for (i, &row) in rows.iter().enumerate() {
        for (j, &m) in right.iter().enumerate() {
            if row >> j & 1 == 1 {
                out.pairs.insert((left[i], m));
            }
        }
    }
    out
}

pub fn graded_piece(q: &QuotientRing, beta: u32, gamma: u32, r: u64) -> Result<GradedPiece> {
    let total = 2 * beta as u64 + 3 * gamma as u64;
    if r > total {
        return Err(AlgebraError::OutOfRange(format!(
            "r = {r} exceeds 2*beta + 3*gamma = {total}"
        )));
    }
    let rows = piece_rows(q, beta, gamma, r);
    let element = rows_to_element(q, r, total - r, &rows);
    Ok(GradedPiece {
        r,
        beta,
        gamma,
        element,
    })
}

/// Left degrees `0..=total`, starting at the middle and moving outward.
fn middle_out(total: u64) -> impl Iterator<Item = u64> {
    let mid = total / 2;
    std::iter::once(mid).chain(
        (1..=total)
            .flat_map(move |k| [Some(mid + k).filter(|&r| r <= total), mid.checked_sub(k)])
            .flatten(),
    )
}

/// One surviving pair of a nonzero product `z(w2)^β z(w3)^γ`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub beta: u32,
    pub gamma: u32,
    pub r: u64,
    pub left: Monomial,
    pub right: Monomial,
}

/// The first nonzero piece in middle-out order, if any.
pub fn product_witness(q: &QuotientRing, beta: u32, gamma: u32) -> Option<Witness> {
    let total = 2 * beta as u64 + 3 * gamma as u64;
    for r in middle_out(total) {
        let rows = piece_rows(q, beta, gamma, r);
        if let Some(i) = rows.iter().position(|&row| row != 0) {
            let j = rows[i].trailing_zeros() as usize;
            return Some(Witness {
                beta,
                gamma,
                r,
                left: q.basis_in_degree(r)[i],
                right: q.basis_in_degree(total - r)[j],
            });
        }
    }
    None
}

pub fn zero_divisor_product_nonzero(q: &QuotientRing, beta: u32, gamma: u32) -> bool {
    product_witness(q, beta, gamma).is_some()
}

/// `z(w2)^β z(w3)^γ` summed over all pieces.
pub fn full_product(q: &QuotientRing, beta: u32, gamma: u32) -> TensorElement {
    let total = 2 * beta as u64 + 3 * gamma as u64;
    let mut out = TensorElement::zero();
    for r in 0..=total {
        let rows = piece_rows(q, beta, gamma, r);
        out.pairs.extend(rows_to_element(q, r, total - r, &rows).pairs);
    }
    out
}

/// Height of `z(a)` predicted from the height `h` of `a`: `2^{u+1} - 1` where
/// `2^u <= h < 2^{u+1}`.
pub fn zero_divisor_height(h: u32) -> u32 {
    if h == 0 {
        0
    } else {
        (2u32 << (31 - h.leading_zeros())) - 1
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ZclResult {
    pub n: u32,
    pub zcl: u32,
    pub witness: Witness,
    /// Search caps on β and γ.
    pub beta_cap: u32,
    pub gamma_cap: u32,
    /// Number of products evaluated.
    pub evaluations: u64,
}

/// Largest `β + γ` with `z(w2)^β z(w3)^γ ≠ 0`.
///
/// Vanishing is inherited by larger exponents in each variable separately, so the
/// nonzero cells form a staircase; the walk visits each of its corners once.
pub fn zcl_wn(q: &QuotientRing) -> ZclResult {
    let h = q.heights();
    let beta_cap = zero_divisor_height(h.h2);
    let gamma_cap = zero_divisor_height(h.h3);
    let mut best = product_witness(q, 0, 0).expect("1 ⊗ 1 is nonzero");
    let mut evaluations = 1u64;
    let mut gamma = gamma_cap as i64;
    for beta in 0..=beta_cap {
        let mut found = None;
        while gamma >= 0 {
            evaluations += 1;
            if let Some(w) = product_witness(q, beta, gamma as u32) {
                found = Some(w);
                break;
            }
            gamma -= 1;
        }
        let Some(w) = found else { break };
        if w.beta + w.gamma > best.beta + best.gamma {
            best = w;
        }
    }
    ZclResult {
        n: q.n(),
        zcl: best.beta + best.gamma,
        witness: best,
        beta_cap,
        gamma_cap,
        evaluations,
    }
}

/// Values of the zero-divisor cup-length for `6 <= n <= 14`.
pub const SMALL_N_ZCL: [(u32, u32); 9] = [
    (6, 2),
    (7, 7),
    (8, 7),
    (9, 7),
    (10, 8),
    (11, 9),
    (12, 10),
    (13, 15),
    (14, 16),
];

pub fn small_n_zcl(n: u32) -> Option<u32> {
    SMALL_N_ZCL.iter().find(|&&(m, _)| m == n).map(|&(_, z)| z)
}

/// Which of the seven bands of `[2^t - 1, 2^{t+1} - 2]` holds `n`, numbered 1..=7
/// from the bottom; the last band covers every `s`.
pub fn closed_form_case(n: u32) -> Result<u8> {
    if n < 15 {
        return Err(AlgebraError::Unsupported { n: n as u64, min: 15 });
    }
    let n = n as i64;
    let t = t_of(n as u64);
    let p = |k: u32| 1i64 << k;
    Ok(if n <= p(t) + p(t - 2) {
        1
    } else if n == p(t) + p(t - 2) + 1 {
        2
    } else if n <= p(t) + p(t - 1) {
        3
    } else if n == p(t) + p(t - 1) + 1 {
        4
    } else if n <= 13 * p(t - 3) {
        5
    } else if n <= p(t) + p(t - 1) + p(t - 2) {
        6
    } else {
        7
    })
}

/// Closed formula for the zero-divisor cup-length, valid for `n >= 15`.
pub fn zcl_closed_form(n: u32) -> Result<u32> {
    let case = closed_form_case(n)?;
    let n = n as i64;
    let t = t_of(n as u64);
    let p = |k: u32| 1i64 << k;
    let v = match case {
        1 => p(t) + p(t - 1) - 4,
        2 => p(t) + p(t - 1) - 3,
        3 => p(t) + p(t - 1) - 2,
        4 => p(t + 1) + p(t - 3) - 3,
        5 => p(t + 1) + p(t - 3) - 2,
        6 => p(t + 1) + p(t - 2) - 2,
        _ => {
            let s = (1..=t - 3)
                .find(|&s| p(t + 1) - p(s + 1) < n && n <= p(t + 1) - p(s))
                .expect("n lies in one of the last bands");
            3 * p(t) - p(s + 1) - 2
        }
    };
    Ok(v as u32)
}

/// The tabulated or closed-form value, whichever applies.
pub fn expected_zcl(n: u32) -> Option<u32> {
    small_n_zcl(n).or_else(|| zcl_closed_form(n).ok())
}

fn random_homogeneous(q: &QuotientRing, rng: &mut ChaCha8Rng) -> Poly {
    loop {
        let d = rng.gen_range(2..=10u64);
        let terms: Vec<Monomial> = monomials_of_degree(d).filter(|_| rng.gen_bool(0.6)).collect();
        let p = q.reduce(&Poly::from_terms(terms));
        if !p.is_zero() {
            return p;
        }
    }
}

/// Checks `z(a+b) = z(a)+z(b)`, `z(ab) = z(a)z(b) + (1⊗b)z(a) + (1⊗a)z(b)` and
/// `z(a^{2^l}) = z(a)^{2^l}` on random homogeneous elements.
pub fn verify_zero_divisor_algebra(q: &QuotientRing, trials: usize, seed: u64) -> Report {
    let mut rep = Report::new(format!("zero-divisor identities W_{}", q.n()));
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = Some(q.n() as u64);
    let z = |a: &Poly| TensorElement::zero_divisor(q, a);
    let one = Poly::one();
    for _ in 0..trials {
        let a = random_homogeneous(q, &mut rng);
        let b = random_homogeneous(q, &mut rng);
        rep.check_eq(format!("z(a+b), a={a}, b={b}"), n, &z(&a) + &z(&b), z(&(&a + &b)));
        let ab = q.mul(&a, &b);
        let rhs = &(&z(&a).mul(&z(&b), q) + &TensorElement::simple(q, &one, &b).mul(&z(&a), q))
            + &TensorElement::simple(q, &one, &a).mul(&z(&b), q);
        rep.check_eq(format!("z(ab), a={a}, b={b}"), n, rhs, z(&ab));
        let l = rng.gen_range(1..=3u32);
        let power = a.pow(1 << l);
        rep.check_eq(
            format!("z(a^(2^{l})), a={a}"),
            n,
            z(&a).pow(1 << l, q),
            z(&q.reduce(&power)),
        );
    }
    rep
}

/// The stated vanishings of `z(w2)^β z(w3)^γ` at `n = 2^t + 2^{t-2} + ε` and at
/// `n = 2^{t+1} - 2^s` for `1 <= s <= t - 3`.
pub fn verify_upper_bound_lemmas(t: u32) -> Result<Report> {
    use crate::quotient::build_quotient;
    let mut rep = Report::new(format!("upper-bound vanishings t={t}"));
    let p = |k: u32| 1u32 << k;
    let mut expect_zero = |q: &QuotientRing, beta: u32, gamma: u32| {
        let nonzero = zero_divisor_product_nonzero(q, beta, gamma);
        rep.check(
            format!("z(w2)^{beta} z(w3)^{gamma} = 0"),
            Some(q.n() as u64),
            !nonzero,
            "zero",
            if nonzero { "nonzero" } else { "zero" },
        );
    };
    let q = build_quotient(p(t) + p(t - 2))?;
    expect_zero(&q, p(t) - 1, p(t - 1) - 2);
    expect_zero(&q, p(t) - 2, p(t - 1) - 1);
    let q = build_quotient(p(t) + p(t - 2) + 1)?;
    expect_zero(&q, p(t) - 1, p(t - 1) - 1);
    for s in 1..=t.saturating_sub(3) {
        let q = build_quotient(p(t + 1) - p(s))?;
        expect_zero(&q, p(t + 1) - p(s + 1), p(t) - p(s));
        expect_zero(&q, p(t + 1) - p(s), p(t) - p(s + 1));
    }
    Ok(rep)
}
