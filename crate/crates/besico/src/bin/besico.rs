//! Command-line surface: spectra and identity reports, exhaustive
//! enumeration, Monte Carlo sampling, exact expectation tables, named
//! constructions, the real-plane bridge, and region-plot data.
//!
//! Exit codes: 0 success, 1 a verification check failed, 2 usage or
//! input error. All randomized commands take `--seed`; when omitted a
//! seed is generated and printed so the run can be reproduced. The
//! enumeration guard can be overridden with `--guard` or the
//! `BESICO_GUARD` environment variable.

use besico::arrangement::MinimalArrangement;
use besico::constructions;
use besico::field::make_field;
use besico::identities;
use besico::probability::{self, rational_to_f64};
use besico::real_bridge::{self, fixtures, RealArrangement};
use besico::sampling;
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;
use std::fmt::Display;
use std::process::ExitCode;

const SCHEMA_VERSION: u32 = 1;

#[derive(Parser)]
#[command(name = "besico", version, about = "Minimal Besicovitch arrangements over F_q")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Table,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ExampleKind {
    Concurrent,
    Parabola,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum EnumReport {
    Summary,
    MaxX0,
    MaxX1,
}

#[derive(Subcommand)]
enum Command {
    /// Spectrum and full identity report for one arrangement.
    ///
    /// Intercepts are canonical element indices, finite slopes in
    /// canonical order first, then the vertical slope last.
    Spectrum {
        #[arg(long)]
        q: u64,
        /// Comma-separated list of q+1 intercept indices.
        #[arg(long, value_delimiter = ',')]
        intercepts: Vec<u64>,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Exhaustively enumerate Omega and report exact statistics.
    Enumerate {
        #[arg(long)]
        q: u64,
        #[arg(long, value_enum, default_value = "summary")]
        report: EnumReport,
        /// Override the enumeration guard (also env BESICO_GUARD).
        #[arg(long)]
        guard: Option<u128>,
    },
    /// Monte Carlo statistics over N uniform samples.
    Sample {
        #[arg(long)]
        q: u64,
        #[arg(long, default_value_t = 2000)]
        samples: u64,
        /// Seed for reproducibility; generated and printed if omitted.
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, default_value_t = 6)]
        mmax: u64,
        /// Fix the rayon worker count (default: all cores).
        #[arg(long)]
        threads: Option<usize>,
    },
    /// Exact expectation table E(X_m) for one q.
    Expect {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        mmax: Option<u64>,
        #[arg(long, value_enum, default_value = "table")]
        format: Format,
    },
    /// A named construction: arrangement, computed and predicted
    /// spectrum, identity report.
    Example {
        #[arg(long, value_enum)]
        kind: ExampleKind,
        #[arg(long)]
        q: u64,
    },
    /// Cross-validate a finite-field arrangement against a real-plane
    /// realization (one "a b c" rational line per file line).
    Bridge {
        #[arg(long)]
        q: u64,
        /// Comma-separated intercept indices of the F_q arrangement.
        #[arg(long, value_delimiter = ',')]
        field_arrangement: Vec<u64>,
        /// Path to the real arrangement file; defaults to the shipped
        /// q=5 worked-example realization when omitted and q = 5.
        #[arg(long)]
        real: Option<std::path::PathBuf>,
    },
    /// Normalized (x0,x1,x2)/q² triples plus the limit-region metadata
    /// for external plotting.
    Region {
        #[arg(long)]
        q: u64,
        #[arg(long, default_value_t = 500)]
        samples: u64,
        #[arg(long)]
        seed: Option<u64>,
    },
}

/// Anything that should abort with exit code 2.
struct UsageError(String);

impl<E: Display> From<E> for UsageError {
    fn from(e: E) -> Self {
        UsageError(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(all_checks_passed) => {
            if all_checks_passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(UsageError(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn guard_from_env(explicit: Option<u128>) -> Option<u128> {
    explicit.or_else(|| {
        std::env::var("BESICO_GUARD").ok().and_then(|v| v.parse().ok())
    })
}

fn seed_or_generate(seed: Option<u64>) -> u64 {
    seed.unwrap_or_else(|| {
        let s = std::time::SystemTime::now()
            .duration_since(std::time::UNIX_EPOCH)
            .map(|d| d.as_nanos() as u64)
            .unwrap_or(0);
        eprintln!("generated seed: {s}");
        s
    })
}

fn trim6(v: f64) -> String {
    format!("{v:.6}")
}

fn spectrum_report_json(arr: &MinimalArrangement) -> serde_json::Value {
    let sp = arr.spectrum();
    let report = identities::full_report(&sp);
    let triple = identities::normalized_triple(&sp);
    json!({
        "schema_version": SCHEMA_VERSION,
        "q": sp.q,
        "intercepts": arr.to_indices(),
        "spectrum": sp.counts,
        "besicovitch_set_size": sp.covered_points(),
        "incidence_class": sp.incidence_class(),
        "report": report,
        "normalized_triple": triple.iter().map(|r| json!({
            "exact": r.to_string(),
            "decimal": rational_to_f64(r),
        })).collect::<Vec<_>>(),
    })
}

fn run(command: Command) -> Result<bool, UsageError> {
    match command {
        Command::Spectrum { q, intercepts, format } => {
            let spec = make_field(q)?;
            let arr = MinimalArrangement::from_indices(&spec, &intercepts)?;
            let sp = arr.spectrum();
            let report = identities::full_report(&sp);
            match format {
                Format::Json => {
                    println!(
                        "{}",
                        serde_json::to_string_pretty(&spectrum_report_json(&arr)).unwrap()
                    );
                }
                Format::Csv => {
                    println!("{}", identities::csv_header(q));
                    println!("{}", identities::csv_row(&sp));
                }
                Format::Table => {
                    println!("q = {q}, intercepts = {:?}", arr.to_indices());
                    println!("spectrum: {:?}", sp.counts);
                    println!(
                        "moments: {} / {} / {} (expected {} / {} / {})",
                        report.moments.count_sum.lhs,
                        report.moments.first_moment.lhs,
                        report.moments.second_moment.lhs,
                        report.moments.count_sum.rhs,
                        report.moments.first_moment.rhs,
                        report.moments.second_moment.rhs,
                    );
                    println!("third moment: {}", report.third_moment);
                    let t = identities::normalized_triple(&sp);
                    println!(
                        "normalized triple: ({}, {}, {})",
                        trim6(rational_to_f64(&t[0])),
                        trim6(rational_to_f64(&t[1])),
                        trim6(rational_to_f64(&t[2])),
                    );
                    println!(
                        "equalities pass: {}, bounds pass: {}, inequalities pass: {}",
                        report.all_equalities_pass,
                        report.bounds.all_pass,
                        report.ze.all_pass()
                    );
                }
            }
            Ok(report.all_equalities_pass && report.bounds.all_pass && report.ze.all_pass())
        }

        Command::Enumerate { q, report, guard } => {
            let spec = make_field(q)?;
            let stats = sampling::enumerate_stats(&spec, guard_from_env(guard))?;
            match report {
                EnumReport::MaxX0 => println!("{}", stats.max_x0),
                EnumReport::MaxX1 => println!("{}", stats.max_x1),
                EnumReport::Summary => {
                    let out = json!({
                        "schema_version": SCHEMA_VERSION,
                        "q": q,
                        "count": stats.count.to_string(),
                        "mean_xm": stats.mean_xm.iter().map(|r| json!({
                            "exact": r.to_string(),
                            "decimal": rational_to_f64(r),
                        })).collect::<Vec<_>>(),
                        "max_x0": stats.max_x0,
                        "max_x1": stats.max_x1,
                        "third_moment_values": stats.third_moments,
                        "identity_failures": stats.identity_failures,
                    });
                    println!("{}", serde_json::to_string_pretty(&out).unwrap());
                }
            }
            Ok(stats.identity_failures == 0)
        }

        Command::Sample { q, samples, seed, mmax, threads } => {
            if samples == 0 {
                return Err(UsageError("--samples must be >= 1".into()));
            }
            let spec = make_field(q)?;
            let seed = seed_or_generate(seed);
            let (stats, _) = match threads {
                Some(t) => {
                    let pool = rayon::ThreadPoolBuilder::new()
                        .num_threads(t)
                        .build()
                        .map_err(|e| UsageError(e.to_string()))?;
                    pool.install(|| sampling::monte_carlo(&spec, samples, seed, mmax, false))
                }
                None => sampling::monte_carlo(&spec, samples, seed, mmax, false),
            };
            println!("{}", serde_json::to_string_pretty(&stats).unwrap());
            Ok(stats.identity_failures == 0)
        }

        Command::Expect { q, mmax, format } => {
            make_field(q)?;
            let mmax = mmax.unwrap_or(q + 1).min(q + 1);
            let rows: Vec<_> = (0..=mmax)
                .map(|m| {
                    let e = probability::expected_xm(q, m as i64).unwrap();
                    let mfact: f64 = (1..=m.max(1)).product::<u64>() as f64;
                    let asym = (q * q) as f64 / (mfact * std::f64::consts::E);
                    (m, e, asym)
                })
                .collect();
            match format {
                Format::Json => {
                    let out = json!({
                        "schema_version": SCHEMA_VERSION,
                        "q": q,
                        "expectations": rows.iter().map(|(m, e, asym)| json!({
                            "m": m,
                            "exact": e.to_string(),
                            "decimal": rational_to_f64(e),
                            "asymptotic": asym,
                        })).collect::<Vec<_>>(),
                    });
                    println!("{}", serde_json::to_string_pretty(&out).unwrap());
                }
                Format::Csv => {
                    println!("m,exact,decimal,asymptotic");
                    for (m, e, asym) in &rows {
                        println!("{m},{e},{},{asym}", rational_to_f64(e));
                    }
                }
                Format::Table => {
                    println!("{:>3} {:>24} {:>14} {:>14}", "m", "E(X_m)", "decimal", "q²/(m!e)");
                    for (m, e, asym) in &rows {
                        println!(
                            "{m:>3} {:>24} {:>14} {:>14}",
                            e.to_string(),
                            trim6(rational_to_f64(e)),
                            trim6(*asym)
                        );
                    }
                }
            }
            Ok(true)
        }

        Command::Example { kind, q } => {
            let spec = make_field(q)?;
            let (arr, predicted) = match kind {
                ExampleKind::Concurrent => constructions::concurrent(&spec),
                ExampleKind::Parabola => constructions::parabola(&spec),
            };
            let computed = arr.spectrum();
            let matches = computed == predicted;
            let out = json!({
                "schema_version": SCHEMA_VERSION,
                "q": q,
                "kind": match kind {
                    ExampleKind::Concurrent => "concurrent",
                    ExampleKind::Parabola => "parabola",
                },
                "intercepts": arr.to_indices(),
                "computed_spectrum": computed.counts,
                "predicted_spectrum": predicted.counts,
                "prediction_matches": matches,
                "report": identities::full_report(&computed),
            });
            println!("{}", serde_json::to_string_pretty(&out).unwrap());
            Ok(matches)
        }

        Command::Bridge { q, field_arrangement, real } => {
            let spec = make_field(q)?;
            let arr = MinimalArrangement::from_indices(&spec, &field_arrangement)?;
            let sp = arr.spectrum();
            let real_arr: RealArrangement = match real {
                Some(path) => {
                    let text = std::fs::read_to_string(&path)
                        .map_err(|e| UsageError(format!("{}: {e}", path.display())))?;
                    RealArrangement::parse(&text)?
                }
                None if q == 5 => fixtures::q5_example_realization(),
                None => {
                    return Err(UsageError(
                        "--real is required (the built-in realization only covers q = 5)".into(),
                    ))
                }
            };
            let report = real_bridge::cross_validate(&sp, &real_arr)?;
            let out = json!({
                "schema_version": SCHEMA_VERSION,
                "q": q,
                "field_spectrum": sp.counts,
                "report": report,
            });
            println!("{}", serde_json::to_string_pretty(&out).unwrap());
            Ok(report.all_match)
        }

        Command::Region { q, samples, seed } => {
            let spec = make_field(q)?;
            let seed = seed_or_generate(seed);
            let (stats, triples) = sampling::monte_carlo(&spec, samples, seed, 2, true);
            let out = json!({
                "schema_version": SCHEMA_VERSION,
                "q": q,
                "samples": samples,
                "seed": seed,
                // limit polytope of the three inequalities in the unit cube
                "region_constraints": [
                    "x + y + z <= 1",
                    "3x - z <= 1",
                    "3x + 2y + z >= 2",
                ],
                "reference_points": {
                    "typical": [1.0 / std::f64::consts::E, 1.0 / std::f64::consts::E,
                                1.0 / (2.0 * std::f64::consts::E)],
                    "parabola_limit": [0.5, 0.0, 0.5],
                    "concurrent_limit": [0.0, 1.0, 0.0],
                },
                "triples": triples,
            });
            println!("{}", serde_json::to_string_pretty(&out).unwrap());
            Ok(stats.identity_failures == 0)
        }
    }
}
