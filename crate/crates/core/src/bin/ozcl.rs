use std::fmt::Write as _;
use std::io::{self, Write as _};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use oriented_zcl::bounds::bounds_row;
use oriented_zcl::cache::{Cache, CACHE_DIR_ENV};
use oriented_zcl::groebner::{ideal_basis, reduce_basis, BasisDocument};
use oriented_zcl::gseries::GSeries;
use oriented_zcl::quotient::{build_quotient, heights_closed_form, Heights};
use oriented_zcl::suite::{self, Section};
use oriented_zcl::tables::{self, parse_range, render, Format, TableRow, ZclRow};
use oriented_zcl::zcl::{expected_zcl, graded_piece};
use oriented_zcl::{AlgebraError, Monomial};

#[derive(Parser)]
#[command(
    name = "ozcl",
    version,
    about = "Exact algebra of W_n = Z2[w2,w3]/I_n and its zero-divisor cup-length"
)]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Global {
    /// Output format.
    #[arg(long, global = true, default_value = "text", value_parser = parse_format)]
    format: Format,
    /// Directory for cached results.
    #[arg(long, global = true, env = CACHE_DIR_ENV)]
    cache_dir: Option<PathBuf>,
    /// Worker threads; defaults to the number of CPUs.
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// Log more; repeat for more detail.
    #[arg(short, long, global = true, action = clap::ArgAction::Count)]
    verbose: u8,
}

#[derive(Subcommand)]
enum Command {
    /// Print g_r.
    G { r: u32 },
    /// Print the Gröbner basis of I_n with leading monomials.
    Groebner {
        n: u32,
        /// Interreduce the basis first.
        #[arg(long)]
        reduced: bool,
    },
    /// Print the monomial basis of W_n.
    Basis {
        n: u32,
        /// Only this degree.
        #[arg(long)]
        degree: Option<u64>,
    },
    /// Normal form of w2^b w3^c in W_n.
    Nf { n: u32, b: u32, c: u32 },
    /// Heights of w2 and w3 in W_n.
    Height {
        n: u32,
        /// By raising powers (default).
        #[arg(long, conflicts_with = "closed")]
        brute: bool,
        /// From the closed formula.
        #[arg(long)]
        closed: bool,
    },
    /// Zero-divisor cup-length of W_n.
    Zcl {
        n: u32,
        /// Also print the nonzero product and one surviving pair.
        #[arg(long)]
        witness: bool,
        /// Compare with the tabulated or closed-form value.
        #[arg(long)]
        closed_form_check: bool,
    },
    /// Zero-divisor cup-length for every n in lo..=hi.
    ZclRange { lo: u32, hi: u32 },
    /// Bounds derived from zcl(W_n).
    Bounds { n: u32 },
    /// Reproduce a table.
    Table {
        #[command(subcommand)]
        table: Table,
    },
    /// Run a verification section.
    Verify {
        #[arg(value_parser = parse_section)]
        section: Section,
        /// Largest t; rings run up to n = 2^(t-max+1).
        #[arg(long, default_value_t = 5)]
        t_max: u32,
    },
}

#[derive(Subcommand)]
enum Table {
    /// g_r over a range of r.
    G {
        #[arg(long, default_value = "0..26", value_parser = parse_range)]
        range: (u32, u32),
    },
    /// zcl(W_n) for 6 <= n <= 14.
    SmallN,
    /// Heights of w2 and w3 over a range of n.
    Heights {
        #[arg(long, default_value = "7..64", value_parser = parse_range)]
        range: (u32, u32),
    },
    /// Bounds rows for every n with t in the range.
    Tc {
        #[arg(long, default_value = "4..5", value_parser = parse_range)]
        t: (u32, u32),
    },
}

fn parse_format(s: &str) -> Result<Format, String> {
    s.parse()
}

fn parse_section(s: &str) -> Result<Section, String> {
    s.parse()
}

macro_rules! emit {
    ($out:expr, $($arg:tt)*) => {{
        let _ = writeln!($out, $($arg)*);
    }};
}

enum Failure {
    Usage(String),
    Verification,
}

impl From<AlgebraError> for Failure {
    fn from(e: AlgebraError) -> Self {
        Failure::Usage(e.to_string())
    }
}

type Outcome = Result<(), Failure>;

fn print_json<T: Serialize>(out: &mut String, value: &T) {
    emit!(
        out,
        "{}",
        serde_json::to_string_pretty(value).expect("value serializes")
    );
}

fn print_rows<T: TableRow>(out: &mut String, rows: &[T], format: Format) {
    out.push_str(&render(rows, format));
}

fn run(cli: Cli, out: &mut String) -> Outcome {
    let fmt = cli.global.format;
    let cache = cli.global.cache_dir.map(Cache::new);
    let cache = cache.as_ref();
    match cli.command {
        Command::G { r } => {
            let g = GSeries::new().get(r as usize).clone();
            match fmt {
                Format::Json => print_json(out, &g),
                _ => emit!(out, "{g}"),
            }
        }
        Command::Groebner { n, reduced } => {
            let mut gb = ideal_basis(n, &mut GSeries::new())?;
            if reduced {
                gb = reduce_basis(&gb);
            }
            match fmt {
                Format::Json => print_json(out, &BasisDocument::new(n, &gb)),
                _ => {
                    for (i, (f, lm)) in gb.polys().iter().zip(gb.lms()).enumerate() {
                        emit!(out, "f{i}\tLM {lm}\t{f}");
                    }
                }
            }
        }
        Command::Basis { n, degree } => {
            let q = build_quotient(n)?;
            let degrees: Vec<u64> = match degree {
                Some(d) => vec![d],
                None => (0..q.top_degree()).collect(),
            };
            match fmt {
                Format::Json => {
                    #[derive(Serialize)]
                    struct Doc {
                        n: u32,
                        dim: usize,
                        counts: Vec<usize>,
                        basis: Vec<Vec<Monomial>>,
                    }
                    let basis = degrees.iter().map(|&d| q.basis_in_degree(d).to_vec()).collect();
                    print_json(
                        out,
                        &Doc {
                            n,
                            dim: q.dim(),
                            counts: q.basis_counts(),
                            basis,
                        },
                    );
                }
                _ => {
                    for d in degrees {
                        let ms: Vec<String> = q.basis_in_degree(d).iter().map(Monomial::to_string).collect();
                        emit!(out, "{d}\t{}", ms.join(" "));
                    }
                }
            }
        }
        Command::Nf { n, b, c } => {
            let nf = build_quotient(n)?.nf_monomial(b, c);
            match fmt {
                Format::Json => print_json(out, &nf),
                _ => emit!(out, "{nf}"),
            }
        }
        Command::Height { n, brute: _, closed } => {
            let h: Heights = if closed {
                heights_closed_form(n)?
            } else {
                build_quotient(n)?.heights()
            };
            match fmt {
                Format::Json => print_json(out, &h),
                _ => emit!(out, "height(w2) = {}\nheight(w3) = {}", h.h2, h.h3),
            }
        }
        Command::Zcl {
            n,
            witness,
            closed_form_check,
        } => {
            let res = tables::zcl_cached(n, cache)?;
            match fmt {
                Format::Json => print_json(out, &res),
                _ => {
                    emit!(out, "zcl(W_{n}) = {}", res.zcl);
                    if witness {
                        let w = res.witness;
                        emit!(out, "z(w2)^{} z(w3)^{} != 0", w.beta, w.gamma);
                        emit!(out, "left degree {}: {} (x) {}", w.r, w.left, w.right);
                        let q = build_quotient(n)?;
                        emit!(out, "piece: {}", graded_piece(&q, w.beta, w.gamma, w.r)?.element);
                    }
                }
            }
            if closed_form_check {
                let Some(expected) = expected_zcl(n) else {
                    return Err(Failure::Usage(format!("no closed form or table value for n={n}")));
                };
                if expected != res.zcl {
                    eprintln!("n={n} zcl(W_n): expected {expected}, got {}", res.zcl);
                    return Err(Failure::Verification);
                }
                if fmt == Format::Text {
                    emit!(out, "matches closed form");
                }
            }
        }
        Command::ZclRange { lo, hi } => {
            if lo > hi {
                return Err(Failure::Usage(format!("empty range {lo}..{hi}")));
            }
            let rows: Vec<ZclRow> = tables::zcl_range(lo, hi, cache)?.iter().map(ZclRow::from).collect();
            print_rows(out, &rows, fmt);
        }
        Command::Bounds { n } => {
            let res = tables::zcl_cached(n, cache)?;
            let row = bounds_row(n, res.zcl)?;
            match fmt {
                Format::Text => {
                    let exact = row
                        .zcl_oriented_exact
                        .map_or("not established".to_string(), |v| v.to_string());
                    let b = row.b_deg.map_or("none".to_string(), |v| v.to_string());
                    emit!(out, "zcl(W_{n}) = {}", row.zcl_wn);
                    emit!(
                        out,
                        "{} <= zcl(G~({n},3)) <= {}",
                        row.zcl_oriented_lo,
                        row.zcl_oriented_hi
                    );
                    emit!(out, "exact value: {exact}");
                    emit!(out, "TC(G~({n},3)) >= {}", row.tc_lower);
                    emit!(out, "|a| = {}, |b| = {b}", row.a_deg);
                    if row.exactness_edge_ambiguous {
                        emit!(
                            out,
                            "note: n sits on the exactness edge; a floored reading of the edge disagrees"
                        );
                    }
                }
                _ => print_rows(out, &[row], fmt),
            }
        }
        Command::Table { table } => match table {
            Table::G { range: (lo, hi) } => print_rows(out, &tables::g_table(lo, hi), fmt),
            Table::SmallN => print_rows(out, &tables::small_n_table(cache)?, fmt),
            Table::Heights { range: (lo, hi) } => {
                if lo < 6 {
                    return Err(Failure::Usage("heights need n >= 6".into()));
                }
                print_rows(out, &tables::heights_table(lo, hi)?, fmt)
            }
            Table::Tc { t: (lo, hi) } => print_rows(out, &tables::tc_table(lo, hi, cache)?, fmt),
        },
        Command::Verify { section, t_max } => {
            let reports = suite::run(section, t_max, cache)?;
            let mut ok = true;
            for rep in &reports {
                emit!(out, "{rep}");
                ok &= rep.passed();
            }
            if !ok {
                return Err(Failure::Verification);
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let level = match cli.global.verbose {
        0 => "warn",
        1 => "info",
        2 => "debug",
        _ => "trace",
    };
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or(level)).init();
    if let Some(jobs) = cli.global.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(jobs).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    let mut out = String::new();
    let outcome = run(cli, &mut out);
    if let Err(e) = io::stdout().lock().write_all(out.as_bytes()) {
        if e.kind() != io::ErrorKind::BrokenPipe {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verification) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
