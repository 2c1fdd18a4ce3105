//! Sparse bivariate polynomials over GF(2) in `w2` (degree 2) and `w3` (degree 3).
//!
//! Monomials are ordered lexicographically with `w2 > w3`. A [`Poly`] keeps its
//! terms strictly decreasing in that order, so equality is plain slice equality.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Mul};

use serde::{Deserialize, Serialize};

use crate::error::{AlgebraError, Result};

/// The monomial `w2^b * w3^c`.
///
/// The derived `Ord` compares `b` first and then `c`, which is exactly the lex
/// order with `w2 > w3`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Serialize, Deserialize)]
pub struct Monomial {
    pub b: u32,
    pub c: u32,
}

impl Monomial {
    pub const ONE: Monomial = Monomial { b: 0, c: 0 };
    pub const W2: Monomial = Monomial { b: 1, c: 0 };
    pub const W3: Monomial = Monomial { b: 0, c: 1 };

    pub const fn new(b: u32, c: u32) -> Self {
        Monomial { b, c }
    }

    /// Graded degree `2b + 3c`.
    pub fn degree(self) -> u64 {
        2 * self.b as u64 + 3 * self.c as u64
    }

    /// True iff `self` divides `other`.
    pub fn divides(self, other: Monomial) -> bool {
        self.b <= other.b && self.c <= other.c
    }

    /// Exponent-wise sum. Panics on `u32` overflow instead of wrapping.
    pub fn times(self, other: Monomial) -> Monomial {
        Monomial {
            b: self.b.checked_add(other.b).expect("exponent overflow"),
            c: self.c.checked_add(other.c).expect("exponent overflow"),
        }
    }

    /// `self / other` when `other` divides `self`.
    pub fn checked_div(self, other: Monomial) -> Option<Monomial> {
        Some(Monomial {
            b: self.b.checked_sub(other.b)?,
            c: self.c.checked_sub(other.c)?,
        })
    }

    /// `self^k`. Panics on overflow.
    pub fn scale(self, k: u32) -> Monomial {
        Monomial {
            b: self.b.checked_mul(k).expect("exponent overflow"),
            c: self.c.checked_mul(k).expect("exponent overflow"),
        }
    }

    pub fn lcm(self, other: Monomial) -> Monomial {
        Monomial::new(self.b.max(other.b), self.c.max(other.c))
    }

    pub fn is_coprime(self, other: Monomial) -> bool {
        self.b.min(other.b) == 0 && self.c.min(other.c) == 0
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let part = |name: &str, e: u32| match e {
            0 => None,
            1 => Some(name.to_string()),
            _ => Some(format!("{name}^{e}")),
        };
        let parts: Vec<String> = [part("w2", self.b), part("w3", self.c)].into_iter().flatten().collect();
        if parts.is_empty() {
            f.write_str("1")
        } else {
            f.write_str(&parts.join("*"))
        }
    }
}

/// A polynomial over GF(2): a set of monomials, stored sorted in decreasing lex order.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(from = "PolyRepr", into = "PolyRepr")]
pub struct Poly {
    terms: Vec<Monomial>,
}

#[derive(Serialize, Deserialize)]
struct PolyRepr {
    terms: Vec<Monomial>,
}

impl From<PolyRepr> for Poly {
    fn from(r: PolyRepr) -> Self {
        Poly::from_terms(r.terms)
    }
}

impl From<Poly> for PolyRepr {
    fn from(p: Poly) -> Self {
        PolyRepr { terms: p.terms }
    }
}

impl From<Monomial> for Poly {
    fn from(m: Monomial) -> Self {
        Poly { terms: vec![m] }
    }
}

impl Poly {
    pub fn zero() -> Self {
        Poly { terms: Vec::new() }
    }

    pub fn one() -> Self {
        Monomial::ONE.into()
    }

    pub fn monomial(b: u32, c: u32) -> Self {
        Monomial::new(b, c).into()
    }

    /// Builds a polynomial from arbitrary terms; repeated monomials cancel in pairs.
    pub fn from_terms<I: IntoIterator<Item = Monomial>>(terms: I) -> Self {
        let mut v: Vec<Monomial> = terms.into_iter().collect();
        v.sort_unstable_by(|a, b| b.cmp(a));
        Poly { terms: cancel_pairs(v) }
    }

    /// Wraps terms already strictly decreasing. Checked in debug builds.
    pub(crate) fn from_sorted_unchecked(terms: Vec<Monomial>) -> Self {
        debug_assert!(terms.windows(2).all(|w| w[0] > w[1]));
        Poly { terms }
    }

    pub fn terms(&self) -> &[Monomial] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<Monomial> {
        self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn contains(&self, m: Monomial) -> bool {
        self.terms.binary_search_by(|x| m.cmp(x)).is_ok()
    }

    pub fn leading_monomial(&self) -> Result<Monomial> {
        self.terms.first().copied().ok_or(AlgebraError::ZeroPolynomial)
    }

    /// The common degree of all terms, or `None` for zero or mixed-degree input.
    pub fn homogeneous_degree(&self) -> Option<u64> {
        let d = self.terms.first()?.degree();
        self.terms.iter().all(|m| m.degree() == d).then_some(d)
    }

    pub fn is_homogeneous(&self) -> bool {
        self.is_zero() || self.homogeneous_degree().is_some()
    }

    /// Multiplies every term by `m`. Order is preserved.
    pub fn shift(&self, m: Monomial) -> Poly {
        Poly {
            terms: self.terms.iter().map(|t| t.times(m)).collect(),
        }
    }

    /// `self^2`, computed term by term.
    pub fn square(&self) -> Poly {
        Poly {
            terms: self.terms.iter().map(|t| t.scale(2)).collect(),
        }
    }

    pub fn pow(&self, mut e: u32) -> Poly {
        let mut base = self.clone();
        let mut acc = Poly::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = base.square();
            }
        }
        acc
    }

    /// Toggles a single monomial.
    pub fn toggle(&mut self, m: Monomial) {
        match self.terms.binary_search_by(|x| m.cmp(x)) {
            Ok(i) => {
                self.terms.remove(i);
            }
            Err(i) => self.terms.insert(i, m),
        }
    }
}

fn cancel_pairs(sorted: Vec<Monomial>) -> Vec<Monomial> {
    let mut out: Vec<Monomial> = Vec::with_capacity(sorted.len());
    for m in sorted {
        if out.last() == Some(&m) {
            out.pop();
        } else {
            out.push(m);
        }
    }
    out
}

fn merge_xor(a: &[Monomial], b: &[Monomial]) -> Vec<Monomial> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            Ordering::Greater => {
                out.push(a[i]);
                i += 1;
            }
            Ordering::Less => {
                out.push(b[j]);
                j += 1;
            }
            Ordering::Equal => {
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
    out
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        Poly {
            terms: merge_xor(&self.terms, &rhs.terms),
        }
    }
}

impl Add for Poly {
    type Output = Poly;
    fn add(self, rhs: Poly) -> Poly {
        &self + &rhs
    }
}

impl AddAssign<&Poly> for Poly {
    fn add_assign(&mut self, rhs: &Poly) {
        self.terms = merge_xor(&self.terms, &rhs.terms);
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        if rhs.terms.len() == 1 {
            return self.shift(rhs.terms[0]);
        }
        if self.terms.len() == 1 {
            return rhs.shift(self.terms[0]);
        }
        let mut acc = Vec::with_capacity(self.terms.len() * rhs.terms.len());
        for &x in &self.terms {
            for &y in &rhs.terms {
                acc.push(x.times(y));
            }
        }
        Poly::from_terms(acc)
    }
}

impl Mul for Poly {
    type Output = Poly;
    fn mul(self, rhs: Poly) -> Poly {
        &self * &rhs
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, m) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "{m}")?;
        }
        Ok(())
    }
}

/// Parity of the binomial coefficient `C(a, k)` by Lucas' theorem.
///
/// Returns false whenever `k < 0`, `a < 0` or `k > a`.
pub fn lucas_binom_mod2(a: i64, k: i64) -> bool {
    a >= 0 && k >= 0 && k <= a && (k & !a) == 0
}

/// All monomials of degree `d`, in decreasing lex order.
pub fn monomials_of_degree(d: u64) -> impl Iterator<Item = Monomial> {
    let c0 = (d % 2) as u32;
    (0..)
        .map(move |k: u32| c0 + 2 * k)
        .take_while(move |&c| 3 * c as u64 <= d)
        .map(move |c| Monomial::new(((d - 3 * c as u64) / 2) as u32, c))
}
