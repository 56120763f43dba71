//! `lel`: batch verification campaigns for Laplacian spectral invariants
//! over exhaustively enumerated trees and seeded random root vectors.
//!
//! Every subcommand prints one JSON report to stdout with the shape
//! `{check, params, cases_checked, violations, status}` and exits 0 when the
//! check passed, 1 when a violation was found, 2 on usage errors. Reports
//! are byte-identical across runs given the same flags and seed.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use lel_cli::campaigns::{verify_gradient, verify_identities, verify_jacobian, verify_lemmas};
use lel_cli::dominance::{hunt_lee, verify_extremal, verify_lel_order};
use lel_cli::probe::closure_probe;
use lel_cli::records::coefficient_table;
use lel_cli::report::{fmt_f64, records_to_csv, records_to_json, Report};
use lel_core::enumerate::free_trees;
use lel_core::spectra::DEFAULT_TOL;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Parser)]
#[command(
    name = "lel",
    version,
    about = "Laplacian spectral invariants over trees: enumeration, exact coefficients, and order-theorem verification"
)]
struct Cli {
    /// Worker threads for parallel campaigns (default: all cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// Output format for the invariants table.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Suppress progress lines on stderr.
    #[arg(long, global = true)]
    quiet: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Enumerate all free trees of an order, optionally dumping level
    /// sequences ("n:levels" per line).
    Enum {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        dump: Option<PathBuf>,
    },
    /// Materialize the per-tree invariant table for one order.
    Invariants {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        out: PathBuf,
    },
    /// Verification campaigns.
    #[command(subcommand)]
    Verify(VerifyCmd),
    /// Searches for order violations that are expected to exist.
    #[command(subcommand)]
    Hunt(HuntCmd),
    /// Boundary probes.
    #[command(subcommand)]
    Probe(ProbeCmd),
}

#[derive(Subcommand)]
enum VerifyCmd {
    /// Product identity of the forward and closed-form inverse Jacobians.
    Jacobian {
        #[arg(long, default_value_t = 2)]
        n_min: usize,
        #[arg(long, default_value_t = 8)]
        n_max: usize,
        #[arg(long, default_value_t = 200)]
        samples: usize,
        #[arg(long, default_value_t = 0.3)]
        min_gap: f64,
        #[arg(long, default_value_t = 1e-7)]
        tol: f64,
        #[arg(long, default_value_t = 42)]
        seed: u64,
    },
    /// Weighted power-sum lemmas and the shifted Newton recurrence.
    Lemmas {
        #[arg(long, default_value_t = 2)]
        n_min: usize,
        #[arg(long, default_value_t = 8)]
        n_max: usize,
        #[arg(long, default_value_t = 200)]
        samples: usize,
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
        #[arg(long, default_value_t = 42)]
        seed: u64,
    },
    /// Exact coefficient identities over every tree up to an order.
    Identities {
        #[arg(long, default_value_t = 16)]
        n_max: usize,
    },
    /// Extremal coefficient bounds (star below, path above), exact.
    Extremal {
        #[arg(long, default_value_t = 14)]
        n_max: usize,
    },
    /// LEL order over all coefficient-comparable pairs of one order.
    Order {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 1e-9)]
        slack: f64,
    },
    /// Closed-form coefficient gradient of LEL vs central finite differences.
    Gradient {
        #[arg(long, default_value_t = 500)]
        samples: usize,
        #[arg(long, default_value_t = 1e-6)]
        fd_step: f64,
        #[arg(long, default_value_t = 1e-4)]
        tol: f64,
        #[arg(long, default_value_t = 42)]
        seed: u64,
    },
}

#[derive(Subcommand)]
enum HuntCmd {
    /// LEE order inversions among strictly dominance-comparable pairs.
    Lee {
        #[arg(long, default_value_t = 6)]
        n_min: usize,
        #[arg(long, default_value_t = 15)]
        n_max: usize,
        #[arg(long, default_value_t = 1e-9)]
        slack: f64,
    },
}

#[derive(Subcommand)]
enum ProbeCmd {
    /// Walk a root vector with one coincident pair toward its limit.
    Closure {
        /// Comma-separated root list, e.g. "4,1,1".
        #[arg(long)]
        mu: String,
        #[arg(long, default_value_t = 20)]
        steps: usize,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(jobs) = cli.jobs {
        // Ignore the error when a pool already exists (tests, repeat calls).
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build_global();
    }
    match run(&cli) {
        Ok(passed) => {
            if passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: &Cli) -> Result<bool> {
    let quiet = cli.quiet;
    match &cli.command {
        Command::Enum { n, dump } => {
            let sequences: Vec<_> = free_trees(*n)?.collect();
            if let Some(path) = dump {
                let mut out = String::new();
                for seq in &sequences {
                    out.push_str(&format!("{n}:{seq}\n"));
                }
                fs::write(path, out).with_context(|| format!("writing {}", path.display()))?;
            }
            if !quiet {
                eprintln!("enum n={n}: {} isomorphism classes", sequences.len());
            }
            #[derive(Serialize)]
            struct P {
                n: usize,
            }
            let report: Report<P, String> =
                Report::passing("enum", P { n: *n }, sequences.len() as u64, vec![]);
            println!("{}", report.to_json());
            Ok(report.passed())
        }

        Command::Invariants { n, out } => {
            let records = coefficient_table(*n, DEFAULT_TOL)?;
            let body = match cli.format {
                Format::Csv => records_to_csv(&records, *n),
                Format::Json => records_to_json(&records),
            };
            fs::write(out, body).with_context(|| format!("writing {}", out.display()))?;
            if !quiet {
                eprintln!(
                    "invariants n={n}: {} records written to {}",
                    records.len(),
                    out.display()
                );
            }
            #[derive(Serialize)]
            struct P {
                n: usize,
                out: String,
                format: &'static str,
            }
            let report: Report<P, String> = Report::passing(
                "invariants",
                P {
                    n: *n,
                    out: out.display().to_string(),
                    format: match cli.format {
                        Format::Csv => "csv",
                        Format::Json => "json",
                    },
                },
                records.len() as u64,
                vec![],
            );
            println!("{}", report.to_json());
            Ok(report.passed())
        }

        Command::Verify(v) => run_verify(v, quiet),
        Command::Hunt(h) => run_hunt(h, quiet),
        Command::Probe(p) => run_probe(p, quiet),
    }
}

fn run_verify(cmd: &VerifyCmd, quiet: bool) -> Result<bool> {
    match cmd {
        VerifyCmd::Jacobian {
            n_min,
            n_max,
            samples,
            min_gap,
            tol,
            seed,
        } => {
            let out = verify_jacobian(*n_min, *n_max, *samples, *min_gap, *tol, *seed)?;
            if !quiet {
                eprintln!(
                    "verify jacobian: {} samples, max residual {:.3e}",
                    out.cases, out.max_residual
                );
            }
            #[derive(Serialize)]
            struct P {
                n_min: usize,
                n_max: usize,
                samples: usize,
                min_gap: f64,
                tol: f64,
                seed: u64,
            }
            let report = Report::passing(
                "jacobian",
                P {
                    n_min: *n_min,
                    n_max: *n_max,
                    samples: *samples,
                    min_gap: *min_gap,
                    tol: *tol,
                    seed: *seed,
                },
                out.cases,
                out.violations,
            );
            println!("{}", report.to_json());
            Ok(report.passed())
        }

        VerifyCmd::Lemmas {
            n_min,
            n_max,
            samples,
            tol,
            seed,
        } => {
            let out = verify_lemmas(*n_min, *n_max, *samples, *tol, *seed)?;
            if !quiet {
                eprintln!(
                    "verify lemmas: {} assertions, max |value|/bound {:.3e}",
                    out.cases, out.max_ratio
                );
            }
            #[derive(Serialize)]
            struct P {
                n_min: usize,
                n_max: usize,
                samples: usize,
                tol: f64,
                seed: u64,
            }
            let report = Report::passing(
                "lemmas",
                P {
                    n_min: *n_min,
                    n_max: *n_max,
                    samples: *samples,
                    tol: *tol,
                    seed: *seed,
                },
                out.cases,
                out.violations,
            );
            println!("{}", report.to_json());
            Ok(report.passed())
        }

        VerifyCmd::Identities { n_max } => {
            let out = verify_identities(*n_max)?;
            if !quiet {
                eprintln!(
                    "verify identities: {} trees through n={}",
                    out.trees_checked, out.n_max
                );
            }
            #[derive(Serialize)]
            struct P {
                n_max: usize,
            }
            let report = Report::passing(
                "identities",
                P { n_max: *n_max },
                out.trees_checked,
                out.violations,
            );
            println!("{}", report.to_json());
            Ok(report.passed())
        }

        VerifyCmd::Extremal { n_max } => {
            let out = verify_extremal(*n_max)?;
            if !quiet {
                eprintln!(
                    "verify extremal: {} trees through n={}",
                    out.trees_checked, out.n_max
                );
            }
            #[derive(Serialize)]
            struct P {
                n_max: usize,
            }
            let report = Report::passing(
                "extremal",
                P { n_max: *n_max },
                out.trees_checked,
                out.violations,
            );
            println!("{}", report.to_json());
            Ok(report.passed())
        }

        VerifyCmd::Order { n, slack } => {
            let out = verify_lel_order(*n, *slack, DEFAULT_TOL)?;
            if !quiet {
                eprintln!(
                    "verify order n={}: {} classes, {} pairs ({} comparable), min strict gap {}, star/path gap {}",
                    out.n,
                    out.classes,
                    out.pairs,
                    out.comparable_pairs,
                    out.min_strict_gap.map_or("n/a".into(), fmt_f64),
                    out.star_path_gap.map_or("n/a".into(), fmt_f64),
                );
            }
            #[derive(Serialize)]
            struct P {
                n: usize,
                slack: f64,
            }
            let report = Report::passing(
                "order",
                P {
                    n: *n,
                    slack: *slack,
                },
                out.comparable_pairs,
                out.violations,
            );
            println!("{}", report.to_json());
            Ok(report.passed())
        }

        VerifyCmd::Gradient {
            samples,
            fd_step,
            tol,
            seed,
        } => {
            let out = verify_gradient(*samples, *fd_step, *tol, *seed)?;
            if !quiet {
                eprintln!(
                    "verify gradient: {} spectra / {} entries, min entry {:.3e}, max rel err {:.3e}",
                    out.cases, out.entries_checked, out.min_entry, out.max_rel_error
                );
            }
            #[derive(Serialize)]
            struct P {
                samples: usize,
                fd_step: f64,
                tol: f64,
                seed: u64,
            }
            let report = Report::passing(
                "gradient",
                P {
                    samples: *samples,
                    fd_step: *fd_step,
                    tol: *tol,
                    seed: *seed,
                },
                out.entries_checked,
                out.violations,
            );
            println!("{}", report.to_json());
            Ok(report.passed())
        }
    }
}

fn run_hunt(cmd: &HuntCmd, quiet: bool) -> Result<bool> {
    match cmd {
        HuntCmd::Lee {
            n_min,
            n_max,
            slack,
        } => {
            let out = hunt_lee(*n_min, *n_max, *slack, DEFAULT_TOL)?;
            if !quiet {
                eprintln!(
                    "hunt lee: {} pairs checked, {} inversions found, predicted (S_n, P_n) pairs {}",
                    out.pairs_checked,
                    out.inversions.len(),
                    if out.all_predicted_found() { "all present" } else { "MISSING" },
                );
            }
            #[derive(Serialize)]
            struct P {
                n_min: usize,
                n_max: usize,
                slack: f64,
            }
            // The listed inversions are the hunt's findings; the check passes
            // exactly when the predicted (S_n, P_n) pair appears for every
            // n >= 6 in range.
            let pass = out.all_predicted_found();
            let report = Report::with_status(
                "hunt-lee",
                P {
                    n_min: *n_min,
                    n_max: *n_max,
                    slack: *slack,
                },
                out.pairs_checked,
                out.inversions,
                pass,
            );
            println!("{}", report.to_json());
            Ok(report.passed())
        }
    }
}

fn run_probe(cmd: &ProbeCmd, quiet: bool) -> Result<bool> {
    match cmd {
        ProbeCmd::Closure { mu, steps } => {
            let roots: Vec<f64> = mu
                .split(',')
                .map(|s| s.trim().parse::<f64>())
                .collect::<Result<_, _>>()
                .context("parsing --mu as comma-separated reals")?;
            let out = closure_probe(&roots, *steps)?;
            if !quiet {
                for step in &out.steps {
                    match &step.refusal {
                        None => eprintln!(
                            "delta {} lel {} min gradient {} positive {}",
                            step.delta,
                            step.lel,
                            step.min_gradient_entry.as_deref().unwrap_or("n/a"),
                            step.gradient_positive
                                .map_or("n/a".into(), |b| b.to_string()),
                        ),
                        Some(r) => eprintln!("delta {}: refused ({r})", step.delta),
                    }
                }
                if let Some(refusal) = &out.limit_refusal {
                    eprintln!("limit point: refused as expected ({refusal})");
                }
                eprintln!(
                    "lel at limit {} cauchy gap {}",
                    fmt_f64(out.lel_at_limit),
                    out.final_cauchy_gap.map_or("n/a".into(), fmt_f64),
                );
            }
            #[derive(Serialize)]
            struct P {
                mu: String,
                steps: usize,
            }
            #[derive(Serialize)]
            struct ProbeViolation {
                kind: &'static str,
                detail: String,
            }
            let mut violations = Vec::new();
            if !out.positive_above_threshold {
                violations.push(ProbeViolation {
                    kind: "gradient-not-positive",
                    detail: "a gradient entry was non-positive at delta >= 1e-6".into(),
                });
            }
            if !out.cauchy_ok {
                violations.push(ProbeViolation {
                    kind: "lel-not-cauchy",
                    detail: format!(
                        "last two LEL values differ by {}",
                        out.final_cauchy_gap.map_or("n/a".into(), fmt_f64)
                    ),
                });
            }
            let report = Report::passing(
                "closure-probe",
                P {
                    mu: mu.clone(),
                    steps: *steps,
                },
                out.steps.len() as u64,
                violations,
            );
            println!("{}", report.to_json());
            Ok(report.passed())
        }
    }
}
