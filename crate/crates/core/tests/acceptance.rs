//! Acceptance criteria 1-8. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any fails.

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use oriented_zcl::gseries::{g_explicit, g_recurrence};
use oriented_zcl::report::Report;
use oriented_zcl::suite::{
    check_bounds, check_classifications, check_g_series, check_groebner, check_heights, check_identities,
    check_quotient_properties, check_tensor_properties, check_witness_pieces, check_zcl_values,
};
use oriented_zcl::tables::{g_table, heights_table, render, small_n_table, tc_table, Format};
use oriented_zcl::zcl::{verify_upper_bound_lemmas, ZclResult};
use oriented_zcl::Result;

const SEED: u64 = 0x0a11_ce5e;

fn golden(name: &str) -> String {
    let path: PathBuf = [env!("CARGO_MANIFEST_DIR"), "tests", "golden", name].iter().collect();
    std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()))
}

fn compare_golden(rep: &mut Report, name: &str, rendered: String) {
    let want = golden(name);
    let (mut w, mut g) = (want.lines(), rendered.lines());
    let mut line = 1u64;
    loop {
        match (w.next(), g.next()) {
            (None, None) => break,
            (a, b) => {
                let (a, b) = (a.unwrap_or("<end>"), b.unwrap_or("<end>"));
                rep.check_eq(format!("{name} line {line}"), None, a.to_string(), b.to_string());
            }
        }
        line += 1;
    }
}

struct Criterion {
    id: u32,
    name: &'static str,
    budget: Option<Duration>,
}

fn run(c: Criterion, body: impl FnOnce() -> Result<Report>) -> bool {
    let start = Instant::now();
    let outcome = body();
    let elapsed = start.elapsed();
    let over = c.budget.is_some_and(|b| elapsed > b);
    let (ok, detail) = match &outcome {
        Ok(rep) => {
            let failed = rep.failures().count();
            let mut d = format!("{} checks, {failed} failed", rep.len());
            if let Some(f) = rep.first_failure() {
                d.push_str(&format!("; first counterexample: {f}"));
            }
            (failed == 0 && !rep.is_empty() && !over, d)
        }
        Err(e) => (false, format!("error: {e}")),
    };
    let budget = c.budget.map_or(String::new(), |b| format!(" (budget {:.0?})", b));
    let verdict = if ok { "PASS" } else { "FAIL" };
    println!("{verdict} {}. {} [{:.2?}{budget}] {detail}", c.id, c.name, elapsed);
    ok
}

fn main() -> ExitCode {
    let secs = |s| Some(Duration::from_secs(s));
    let mut zcl_results: Vec<ZclResult> = Vec::new();
    let mut all = true;

    all &= run(
        Criterion {
            id: 1,
            name: "g-series table and explicit formula",
            budget: secs(1),
        },
        || {
            let mut rep = Report::new("table g");
            compare_golden(&mut rep, "table_g.txt", render(&g_table(0, 26), Format::Text));
            for r in 0..=512 {
                rep.check_eq(
                    "recurrence equals explicit formula",
                    Some(r as u64),
                    g_explicit(r),
                    g_recurrence(r),
                );
            }
            Ok(rep)
        },
    );

    all &= run(
        Criterion {
            id: 2,
            name: "Groebner differential n=7..64",
            budget: secs(30),
        },
        || check_groebner(7, 64),
    );

    all &= run(
        Criterion {
            id: 3,
            name: "heights n=7..64",
            budget: secs(30),
        },
        || {
            let mut rep = check_heights(7, 64)?;
            compare_golden(&mut rep, "heights.txt", render(&heights_table(7, 64)?, Format::Text));
            Ok(rep)
        },
    );

    all &= run(
        Criterion {
            id: 4,
            name: "zcl(W_n) n=6..62",
            budget: secs(600),
        },
        || {
            zcl_results = oriented_zcl::tables::zcl_range(6, 62, None)?;
            let mut rep = check_zcl_values(&zcl_results);
            let small: String = small_n_table(None)?
                .iter()
                .map(|r| format!("{}\t{}\n", r.n, r.zcl))
                .collect();
            compare_golden(&mut rep, "small_n.txt", small);
            Ok(rep)
        },
    );

    all &= run(
        Criterion {
            id: 5,
            name: "identity suite",
            budget: secs(60),
        },
        || {
            let mut rep = check_g_series(512, 7);
            rep.merge(check_identities(4, 6, 64, 24, SEED));
            Ok(rep)
        },
    );

    all &= run(
        Criterion {
            id: 6,
            name: "proof witnesses",
            budget: None,
        },
        || {
            let mut rep = check_witness_pieces()?;
            for t in 4..=5 {
                rep.merge(verify_upper_bound_lemmas(t)?);
            }
            rep.merge(check_classifications(6)?);
            Ok(rep)
        },
    );

    all &= run(
        Criterion {
            id: 7,
            name: "property suite",
            budget: None,
        },
        || {
            // 59 rings x 170 samples > 10^4 inputs for each property.
            let mut rep = check_quotient_properties(6, 64, 170, SEED)?;
            rep.merge(check_tensor_properties(&[9, 15, 21, 22, 27, 40], 20, SEED)?);
            if zcl_results.is_empty() {
                zcl_results = oriented_zcl::tables::zcl_range(6, 62, None)?;
            }
            rep.merge(check_zcl_values(&zcl_results));
            Ok(rep)
        },
    );

    all &= run(
        Criterion {
            id: 8,
            name: "bounds layer",
            budget: secs(5),
        },
        || {
            let mut rep = check_bounds(&zcl_results, 5, 10)?;
            compare_golden(&mut rep, "tc_t4_5.csv", render(&tc_table(4, 5, None)?, Format::Csv));
            Ok(rep)
        },
    );

    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
