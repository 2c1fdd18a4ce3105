//! Integer bounds on the zero-divisor cup-length of the full Grassmannian
//! cohomology and on topological complexity, derived from `zcl(W_n)`.

use serde::{Deserialize, Serialize};

use crate::error::{AlgebraError, Result};
use crate::groebner::t_of;
use crate::report::Report;
use crate::zcl::zcl_closed_form;

fn p(k: u32) -> i64 {
    1i64 << k
}

/// Degrees of the two indecomposable classes outside `W_n`; the second one is
/// absent for `n` in `{2^t - 1, 2^t, 2^{t+1} - 3, 2^{t+1} - 2}`.
pub fn exceptional_degrees(n: u32) -> Result<(u32, Option<u32>)> {
    if n < 15 {
        return Err(AlgebraError::Unsupported { n: n as u64, min: 15 });
    }
    let t = t_of(n as u64);
    let n = n as i64;
    let x = 3 * n - p(t + 1) - 1;
    let y = p(t + 1) - 4;
    let a = x.min(y);
    let missing = [p(t) - 1, p(t), p(t + 1) - 3, p(t + 1) - 2].contains(&n);
    Ok((a as u32, (!missing).then_some(x.max(y) as u32)))
}

/// `|a|` read off the table of bands: `3n - 2^{t+1} - 1` up to `2^t + floor(2^t/3) - 1`,
/// and `2^{t+1} - 4` from there on.
#[allow(clippy::int_plus_one)]
pub fn a_degree_by_band(n: u32) -> u32 {
    let t = t_of(n as u64);
    let n = n as i64;
    let v = if n <= p(t) + p(t) / 3 - 1 {
        3 * n - p(t + 1) - 1
    } else {
        p(t + 1) - 4
    };
    v as u32
}

/// Height of `z(w2)` as tabulated: `2^t - 1` up to `2^t + 2^{t-1}`, `2^{t+1} - 1` after.
pub fn zero_divisor_height_w2(n: u32) -> u32 {
    let t = t_of(n as u64);
    if (n as i64) <= p(t) + p(t - 1) {
        (p(t) - 1) as u32
    } else {
        (p(t + 1) - 1) as u32
    }
}

/// True when `n` lies in a range where the lower bound is known to be exact:
/// `2^t - 1 <= n < 2^t + 2^{t-1}/3 + 1` (rational comparison) or
/// `2^t + 2^{t-1} + 2^{t-2} + 1 <= n <= 2^{t+1} - 2`.
#[allow(clippy::int_plus_one)]
pub fn lower_bound_is_exact(n: u32) -> bool {
    let t = t_of(n as u64);
    let n = n as i64;
    // n < 2^t + 2^{t-1}/3 + 1  <=>  3n < 3*2^t + 2^{t-1} + 3
    3 * n < 3 * p(t) + p(t - 1) + 3 || n >= p(t) + p(t - 1) + p(t - 2) + 1
}

/// True at the one `n` per `t` where reading the exactness edge with a floor,
/// `n < 2^t + floor(2^{t-1}/3) + 1`, would disagree with the rational reading.
pub fn exactness_edge_ambiguous(n: u32) -> bool {
    let t = t_of(n as u64);
    let n = n as i64;
    let floored = n < p(t) + p(t - 1) / 3 + 1;
    let rational = 3 * n < 3 * p(t) + p(t - 1) + 3;
    floored != rational
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundsRow {
    pub n: u32,
    pub zcl_wn: u32,
    pub zcl_oriented_lo: u32,
    pub zcl_oriented_hi: u32,
    pub zcl_oriented_exact: Option<u32>,
    pub tc_lower: u32,
    pub a_deg: u32,
    pub b_deg: Option<u32>,
    pub exactness_edge_ambiguous: bool,
}

pub fn bounds_row(n: u32, zcl_value: u32) -> Result<BoundsRow> {
    let (a_deg, b_deg) = exceptional_degrees(n)?;
    let lo = zcl_value + 1;
    Ok(BoundsRow {
        n,
        zcl_wn: zcl_value,
        zcl_oriented_lo: lo,
        zcl_oriented_hi: zcl_value + 2,
        zcl_oriented_exact: lower_bound_is_exact(n).then_some(lo),
        tc_lower: lo + 1,
        a_deg,
        b_deg,
        exactness_edge_ambiguous: exactness_edge_ambiguous(n),
    })
}

/// Checks `6n + height(z(w2)) < 3(|a| + zcl(W_n)) + 16` for every `n` in
/// `[2^t - 1, 2^{t+1} - 2]`, plus `3n + height(z(w2)) < 3 zcl(W_n) + 14` on the
/// exact ranges where the second class exists.
pub fn verify_ineq_arithmetic(t: u32) -> Result<Report> {
    let mut rep = Report::new(format!("bound inequalities t={t}"));
    for n in (p(t) - 1) as u32..=(p(t + 1) - 2) as u32 {
        let (a, b) = exceptional_degrees(n)?;
        rep.check_eq("|a| agrees with band table", Some(n as u64), a_degree_by_band(n), a);
        if let Some(b) = b {
            rep.check(
                "|a| < |b| and |a| + |b| = 3n - 5",
                Some(n as u64),
                a < b && a + b == 3 * n - 5,
                3 * n - 5,
                a + b,
            );
        }
        let z = zcl_closed_form(n)? as i64;
        let h = zero_divisor_height_w2(n) as i64;
        let (lhs, rhs) = (6 * n as i64 + h, 3 * (a as i64 + z) + 16);
        rep.check(
            "6n + height(z(w2)) < 3(|a| + zcl) + 16",
            Some(n as u64),
            lhs < rhs,
            format!("< {rhs}"),
            lhs,
        );
        if lower_bound_is_exact(n) && b.is_some() {
            let (lhs, rhs) = (3 * n as i64 + h, 3 * z + 14);
            rep.check(
                "3n + height(z(w2)) < 3 zcl + 14",
                Some(n as u64),
                lhs < rhs,
                format!("< {rhs}"),
                lhs,
            );
        }
    }
    Ok(rep)
}

/// One band of consecutive `n` sharing the same formulas.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TcBand {
    pub t: u32,
    pub n_lo: u32,
    pub n_hi: u32,
    pub zcl_wn: u32,
    /// `zcl` of the full ring: exact value when `exact`, otherwise a lower bound.
    pub zcl_oriented: u32,
    pub exact: bool,
    pub tc_lower: u32,
}

/// The bands with their closed-form values, for `t >= 4`.
pub fn tc_bands(t: u32) -> Vec<TcBand> {
    let band = |lo: i64, hi: i64, z: i64, exact: bool| TcBand {
        t,
        n_lo: lo as u32,
        n_hi: hi as u32,
        zcl_wn: z as u32,
        zcl_oriented: (z + 1) as u32,
        exact,
        tc_lower: (z + 2) as u32,
    };
    let third = p(t - 1) / 3;
    let mut v = vec![
        band(p(t) - 1, p(t) + third + 1, p(t) + p(t - 1) - 4, true),
        band(p(t) + third + 2, p(t) + p(t - 2), p(t) + p(t - 1) - 4, false),
        band(p(t) + p(t - 2) + 1, p(t) + p(t - 2) + 1, p(t) + p(t - 1) - 3, false),
        band(p(t) + p(t - 2) + 2, p(t) + p(t - 1), p(t) + p(t - 1) - 2, false),
        band(p(t) + p(t - 1) + 1, p(t) + p(t - 1) + 1, p(t + 1) + p(t - 3) - 3, false),
        band(
            p(t) + p(t - 1) + 2,
            p(t) + p(t - 1) + p(t - 3),
            p(t + 1) + p(t - 3) - 2,
            false,
        ),
        band(
            p(t) + p(t - 1) + p(t - 3) + 1,
            p(t) + p(t - 1) + p(t - 2),
            p(t + 1) + p(t - 2) - 2,
            false,
        ),
    ];
    for s in (1..=t - 3).rev() {
        v.push(band(
            p(t + 1) - p(s + 1) + 1,
            p(t + 1) - p(s),
            p(t + 1) + p(t) - p(s + 1) - 2,
            true,
        ));
    }
    v
}

/// Compares rows built from supplied `zcl` values with the band formulas.
pub fn verify_tc_table(t: u32, zcl_of: impl Fn(u32) -> u32) -> Result<Report> {
    let mut rep = Report::new(format!("bounds table t={t}"));
    let bands = tc_bands(t);
    let mut next = (p(t) - 1) as u32;
    for band in &bands {
        rep.check_eq("bands are contiguous", Some(band.n_lo as u64), next, band.n_lo);
        next = band.n_hi + 1;
        for n in band.n_lo..=band.n_hi {
            let row = bounds_row(n, zcl_of(n))?;
            let nn = Some(n as u64);
            rep.check_eq("zcl(W_n)", nn, band.zcl_wn, row.zcl_wn);
            rep.check_eq(
                "lower bound for the full ring",
                nn,
                band.zcl_oriented,
                row.zcl_oriented_lo,
            );
            rep.check_eq("exactness", nn, band.exact, row.zcl_oriented_exact.is_some());
            rep.check_eq("TC lower bound", nn, band.tc_lower, row.tc_lower);
        }
    }
    rep.check_eq("bands end at 2^(t+1)-2", None, (p(t + 1) - 1) as u32, next);
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn degree_examples() {
        assert_eq!(exceptional_degrees(15).unwrap(), (12, None));
        assert_eq!(exceptional_degrees(24).unwrap().0, 28);
        assert_eq!(exceptional_degrees(20).unwrap(), (27, Some(28)));
        assert!(exceptional_degrees(14).is_err());
        for n in [15, 16, 29, 30] {
            assert!(exceptional_degrees(n).unwrap().1.is_none());
        }
    }

    #[test]
    fn row_examples() {
        let r = bounds_row(15, 20).unwrap();
        assert_eq!(
            (r.zcl_oriented_lo, r.zcl_oriented_hi, r.zcl_oriented_exact, r.tc_lower),
            (21, 22, Some(21), 22)
        );
        let r = bounds_row(30, 42).unwrap();
        assert_eq!((r.zcl_oriented_exact, r.tc_lower), (Some(43), 44));
        let r = bounds_row(22, 22).unwrap();
        assert_eq!(
            (r.zcl_oriented_lo, r.zcl_oriented_hi, r.zcl_oriented_exact),
            (23, 24, None)
        );
    }

    #[test]
    fn exactness_edges() {
        // t=4: 2^3/3 = 8/3, so n < 19.67.
        assert!(lower_bound_is_exact(19));
        assert!(!lower_bound_is_exact(20));
        assert!(!lower_bound_is_exact(28));
        assert!(lower_bound_is_exact(29));
        let flagged: Vec<u32> = (15..=1022).filter(|&n| exactness_edge_ambiguous(n)).collect();
        assert_eq!(flagged, vec![19, 38, 75, 150, 299, 598]);
    }

    #[test]
    fn inequalities_hold() {
        for t in 4..=10 {
            let rep = verify_ineq_arithmetic(t).unwrap();
            assert!(rep.passed(), "{rep}");
        }
    }

    #[test]
    fn bands_tile_the_range() {
        for t in 4..=8 {
            let rep = verify_tc_table(t, |n| zcl_closed_form(n).unwrap()).unwrap();
            assert!(rep.passed(), "{rep}");
        }
    }

    #[test]
    fn wrong_zcl_is_caught() {
        let rep = verify_tc_table(4, |n| zcl_closed_form(n).unwrap() + u32::from(n == 22)).unwrap();
        assert!(!rep.passed());
    }
}
