//! The polynomials `g_r`, defined by `g0 = 1`, `g1 = 0`, `g2 = w2` and
//! `g_{r+3} = w2*g_{r+1} + w3*g_r`.

use crate::poly::{lucas_binom_mod2, Monomial, Poly};
use crate::report::Report;

/// Append-only memo of `g_0, g_1, ...` built by the recurrence.
#[derive(Clone, Debug)]
pub struct GSeries {
    cache: Vec<Poly>,
}

impl Default for GSeries {
    fn default() -> Self {
        Self::new()
    }
}

impl GSeries {
    pub fn new() -> Self {
        GSeries {
            cache: vec![Poly::one(), Poly::zero(), Poly::monomial(1, 0)],
        }
    }

    /// Number of cached entries.
    pub fn len(&self) -> usize {
        self.cache.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cache.is_empty()
    }

    pub fn cached(&self, r: usize) -> Option<&Poly> {
        self.cache.get(r)
    }

    pub fn extend_to(&mut self, r: usize) {
        while self.cache.len() <= r {
            let k = self.cache.len();
            let next = &self.cache[k - 2].shift(Monomial::W2) + &self.cache[k - 3].shift(Monomial::W3);
            debug_assert!(
                next.homogeneous_degree().map_or(next.is_zero(), |d| d == k as u64),
                "g_{k} is not homogeneous of degree {k}"
            );
            self.cache.push(next);
        }
    }

    pub fn get(&mut self, r: usize) -> &Poly {
        self.extend_to(r);
        &self.cache[r]
    }
}

/// `g_r` by the recurrence, without any shared state.
pub fn g_recurrence(r: usize) -> Poly {
    let mut s = GSeries::new();
    s.extend_to(r);
    s.cache.swap_remove(r)
}

/// `g_r` as the sum of `C(d+e, e) w2^d w3^e` over `2d + 3e = r`.
pub fn g_explicit(r: usize) -> Poly {
    let r = r as u64;
    let terms = (0..=r / 3)
        .filter(|e| (r - 3 * e) % 2 == 0)
        .map(|e| ((r - 3 * e) / 2, e))
        .filter(|&(d, e)| lucas_binom_mod2((d + e) as i64, e as i64))
        .map(|(d, e)| Monomial::new(d as u32, e as u32))
        .collect();
    Poly::from_sorted_unchecked(terms)
}

/// Checks that `(1 + w2 + w3) * (g_0 + ... + g_R)` equals 1 in every degree up to `R`.
pub fn power_series_prefix_ok(series: &mut GSeries, max_r: usize) -> bool {
    series.extend_to(max_r);
    let sum = series.cache[..=max_r].iter().fold(Poly::zero(), |acc, g| &acc + g);
    let unit = Poly::from_terms([Monomial::ONE, Monomial::W2, Monomial::W3]);
    let prod = &unit * &sum;
    let low: Vec<Monomial> = prod
        .terms()
        .iter()
        .copied()
        .filter(|m| m.degree() <= max_r as u64)
        .collect();
    low == [Monomial::ONE]
}

/// Checks the five closed values of `g_r` at indices near powers of two.
///
/// Parts (a)-(d) need `t >= 2`; part (e) is checked only when `t >= 3`.
pub fn verify_g_near_powers(series: &mut GSeries, t: u32) -> Report {
    let mut rep = Report::new(format!("g closed values t={t}"));
    assert!(t >= 2, "t must be at least 2");
    let p = |k: u32| 1usize << k;
    let mut case = |label: &str, r: usize, expected: Poly| {
        let got = series.get(r).clone();
        rep.check_eq(format!("{label}: g_{r}"), None, expected, got);
    };
    case("a", p(t) - 3, Poly::zero());
    case("b", p(t) + p(t - 1) - 3, Poly::monomial(0, (p(t - 1) - 1) as u32));
    case(
        "c",
        p(t) + p(t - 2) - 3,
        Poly::monomial(p(t - 2) as u32, (p(t - 2) - 1) as u32),
    );
    case(
        "d",
        p(t) + p(t - 1) + p(t - 2) - 3,
        Poly::monomial(p(t - 1) as u32, (p(t - 2) - 1) as u32),
    );
    if t >= 3 {
        case(
            "e",
            p(t) + p(t - 1) + p(t - 3) - 3,
            Poly::monomial((p(t - 1) + p(t - 3)) as u32, (p(t - 3) - 1) as u32),
        );
    }
    rep
}

/// `g_{2^i (r+3) - 3} == w3^{2^i - 1} * g_r^{2^i}`.
pub fn verify_power_squaring(series: &mut GSeries, i: u32, r: usize) -> bool {
    let k = 1usize << i;
    let lhs = series.get(k * (r + 3) - 3).clone();
    let mut rhs = series.get(r).clone();
    for _ in 0..i {
        rhs = rhs.square();
    }
    lhs == rhs.shift(Monomial::new(0, (k - 1) as u32))
}

/// `g_{2n} == g_n^2 + w2 * g_{n-1}^2`.
pub fn verify_doubling(series: &mut GSeries, n: usize) -> bool {
    assert!(n >= 1, "n must be positive");
    let lhs = series.get(2 * n).clone();
    let rhs = &series.get(n).square() + &series.get(n - 1).square().shift(Monomial::W2);
    lhs == rhs
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seeds_and_small_values() {
        assert_eq!(g_recurrence(0), Poly::one());
        assert_eq!(g_recurrence(1), Poly::zero());
        assert_eq!(g_recurrence(6).to_string(), "w2^3 + w3^2");
        assert_eq!(g_recurrence(13), Poly::zero());
        assert_eq!(g_explicit(8).to_string(), "w2^4 + w2*w3^2");
        assert_eq!(g_explicit(0), Poly::one());
        assert_eq!(g_explicit(26).to_string(), "w2^13 + w2*w3^8");
    }

    #[test]
    fn constructions_agree() {
        let mut s = GSeries::new();
        for r in 0..=512 {
            assert_eq!(s.get(r), &g_explicit(r), "r={r}");
        }
    }

    #[test]
    fn homogeneous_of_degree_r() {
        let mut s = GSeries::new();
        s.extend_to(300);
        for r in 0..=300 {
            let g = s.cached(r).unwrap();
            assert!(g.terms().iter().all(|m| m.degree() == r as u64));
        }
    }

    #[test]
    fn power_series_inverse() {
        let mut s = GSeries::new();
        for r in 0..=64 {
            assert!(power_series_prefix_ok(&mut s, r), "R={r}");
        }
    }

    #[test]
    fn closed_values_near_powers_of_two() {
        let mut s = GSeries::new();
        for t in 2..=7 {
            let rep = verify_g_near_powers(&mut s, t);
            assert!(rep.passed(), "{rep}");
        }
        assert_eq!(verify_g_near_powers(&mut s, 2).len(), 4);
        assert_eq!(verify_g_near_powers(&mut s, 3).len(), 5);
    }

    #[test]
    fn squaring_identity() {
        let mut s = GSeries::new();
        for i in 0..=4 {
            for r in 0..=40 {
                assert!(verify_power_squaring(&mut s, i, r), "i={i} r={r}");
            }
        }
        assert_eq!(s.get(17).to_string(), "w2^4*w3^3");
    }

    #[test]
    fn doubling_identity() {
        let mut s = GSeries::new();
        for n in 1..=200 {
            assert!(verify_doubling(&mut s, n), "n={n}");
        }
    }

    #[test]
    fn squaring_identity_detects_wrong_index() {
        // g_{2(r+3)-3} for r=3 is g_9; shifting the index must break equality.
        let mut s = GSeries::new();
        let rhs = s.get(3).square().shift(Monomial::W3);
        assert_eq!(s.get(9), &rhs);
        assert_ne!(s.get(10), &rhs);
    }
}
