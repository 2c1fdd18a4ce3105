//! Row types for the reproduced tables and their text, CSV and JSON renderings.

use std::fmt::Write as _;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bounds::{bounds_row, BoundsRow};
use crate::cache::Cache;
use crate::error::{AlgebraError, Result};
use crate::gseries::GSeries;
use crate::quotient::{build_quotient, Heights};
use crate::zcl::{zcl_wn, ZclResult, SMALL_N_ZCL};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Text,
    Csv,
    Json,
}

impl FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "text" => Ok(Format::Text),
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            other => Err(format!("unknown format '{other}' (expected text, csv or json)")),
        }
    }
}

/// A row that can be written as a tab-separated text line and as a CSV record.
pub trait TableRow: Serialize {
    const COLUMNS: &'static [&'static str];
    fn fields(&self) -> Vec<String>;
}

/// Renders rows; text output has no header, CSV output does.
pub fn render<T: TableRow>(rows: &[T], format: Format) -> String {
    let mut out = String::new();
    match format {
        Format::Json => {
            out = serde_json::to_string_pretty(rows).expect("rows serialize");
            out.push('\n');
        }
        Format::Text => {
            for row in rows {
                let _ = writeln!(out, "{}", row.fields().join("\t"));
            }
        }
        Format::Csv => {
            let _ = writeln!(out, "{}", T::COLUMNS.join(","));
            for row in rows {
                let _ = writeln!(out, "{}", row.fields().join(","));
            }
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GRow {
    pub r: u32,
    pub poly: String,
}

impl TableRow for GRow {
    const COLUMNS: &'static [&'static str] = &["r", "g"];
    fn fields(&self) -> Vec<String> {
        vec![self.r.to_string(), self.poly.clone()]
    }
}

pub fn g_table(lo: u32, hi: u32) -> Vec<GRow> {
    let mut series = GSeries::new();
    (lo..=hi)
        .map(|r| GRow {
            r,
            poly: series.get(r as usize).to_string(),
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HeightsRow {
    pub n: u32,
    pub h2: u32,
    pub h3: u32,
}

impl TableRow for HeightsRow {
    const COLUMNS: &'static [&'static str] = &["n", "height_w2", "height_w3"];
    fn fields(&self) -> Vec<String> {
        vec![self.n.to_string(), self.h2.to_string(), self.h3.to_string()]
    }
}

/// Heights computed from the quotient ring, in `n` order.
pub fn heights_table(lo: u32, hi: u32) -> Result<Vec<HeightsRow>> {
    (lo..=hi)
        .into_par_iter()
        .map(|n| {
            let Heights { h2, h3 } = build_quotient(n)?.heights();
            Ok(HeightsRow { n, h2, h3 })
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ZclRow {
    pub n: u32,
    pub zcl: u32,
    pub witness_beta: u32,
    pub witness_gamma: u32,
}

impl TableRow for ZclRow {
    const COLUMNS: &'static [&'static str] = &["n", "zcl", "witness_beta", "witness_gamma"];
    fn fields(&self) -> Vec<String> {
        [self.n, self.zcl, self.witness_beta, self.witness_gamma]
            .iter()
            .map(u32::to_string)
            .collect()
    }
}

impl From<&ZclResult> for ZclRow {
    fn from(r: &ZclResult) -> Self {
        ZclRow {
            n: r.n,
            zcl: r.zcl,
            witness_beta: r.witness.beta,
            witness_gamma: r.witness.gamma,
        }
    }
}

/// `zcl(W_n)` by search, read from and written to `cache` when one is given.
pub fn zcl_cached(n: u32, cache: Option<&Cache>) -> Result<ZclResult> {
    if let Some(hit) = cache.and_then(|c| c.load::<ZclResult>("zcl", n)) {
        return Ok(hit);
    }
    let res = zcl_wn(&build_quotient(n)?);
    if let Some(c) = cache {
        if let Err(e) = c.store("zcl", n, &res) {
            log::warn!("could not write cache entry for n={n}: {e}");
        }
    }
    Ok(res)
}

/// Search results for every `n` in `lo..=hi`, computed in parallel, in `n` order.
pub fn zcl_range(lo: u32, hi: u32, cache: Option<&Cache>) -> Result<Vec<ZclResult>> {
    (lo..=hi).into_par_iter().map(|n| zcl_cached(n, cache)).collect()
}

pub fn small_n_table(cache: Option<&Cache>) -> Result<Vec<ZclRow>> {
    let (lo, hi) = (SMALL_N_ZCL[0].0, SMALL_N_ZCL[SMALL_N_ZCL.len() - 1].0);
    Ok(zcl_range(lo, hi, cache)?.iter().map(ZclRow::from).collect())
}

impl TableRow for BoundsRow {
    const COLUMNS: &'static [&'static str] = &[
        "n",
        "zcl_wn",
        "zcl_lo",
        "zcl_hi",
        "zcl_exact",
        "tc_lower",
        "a_deg",
        "b_deg",
        "edge_ambiguous",
    ];
    fn fields(&self) -> Vec<String> {
        let opt = |v: Option<u32>| v.map_or(String::new(), |x| x.to_string());
        vec![
            self.n.to_string(),
            self.zcl_wn.to_string(),
            self.zcl_oriented_lo.to_string(),
            self.zcl_oriented_hi.to_string(),
            opt(self.zcl_oriented_exact),
            self.tc_lower.to_string(),
            self.a_deg.to_string(),
            opt(self.b_deg),
            self.exactness_edge_ambiguous.to_string(),
        ]
    }
}

/// Bounds rows for `2^t - 1 <= n <= 2^{t+1} - 2` over `t` in `t_lo..=t_hi`,
/// using searched values of `zcl(W_n)`.
pub fn tc_table(t_lo: u32, t_hi: u32, cache: Option<&Cache>) -> Result<Vec<BoundsRow>> {
    if t_lo < 4 || t_lo > t_hi || t_hi > 8 {
        return Err(AlgebraError::OutOfRange(format!(
            "t range {t_lo}..{t_hi} must lie within 4..8"
        )));
    }
    let (lo, hi) = ((1u32 << t_lo) - 1, (1u32 << (t_hi + 1)) - 2);
    zcl_range(lo, hi, cache)?
        .iter()
        .map(|r| bounds_row(r.n, r.zcl))
        .collect()
}

/// Parses `a..b` or `a..=b` as an inclusive range.
pub fn parse_range(s: &str) -> std::result::Result<(u32, u32), String> {
    let (a, b) = s
        .split_once("..")
        .ok_or_else(|| format!("expected a range like 0..26, got '{s}'"))?;
    let b = b.strip_prefix('=').unwrap_or(b);
    let a: u32 = a.trim().parse().map_err(|_| format!("bad range start in '{s}'"))?;
    let b: u32 = b.trim().parse().map_err(|_| format!("bad range end in '{s}'"))?;
    if a > b {
        return Err(format!("empty range '{s}'"));
    }
    Ok((a, b))
}
