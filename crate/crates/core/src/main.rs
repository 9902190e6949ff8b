use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crl::atom::{atom_probability_with, bound_report, AtomMethod, AtomResult, AtomVector, BoundReport};
use crl::classify::{classify_common_roots_1d, classify_point, decompose_terms};
use crl::dunomial::{
    count_satisfied, enumerate_dunomials, enumerate_reduced_by_order, r_of_x, DunomialMode,
    DunomialPoint, DEFAULT_TOL,
};
use crl::experiment::{
    asymptotic_table, bound_suite, estimate_p, exact_p_bruteforce, to_json, CampaignConfig,
};
use crl::poly::{BernoulliPolyUni, ComplexPoint};
use crl::Error;

/// Common roots of random ±1 polynomials: exact decisions, Monte Carlo
/// estimates, Littlewood–Offord atoms and dunomial counts.
#[derive(Parser)]
#[command(name = "crl", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Output {
    /// Write to this file instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Monte Carlo estimate of the common-root probability.
    Estimate {
        #[arg(long, default_value_t = 1)]
        d: usize,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 2)]
        ell: usize,
        #[arg(long, default_value_t = 100_000)]
        trials: u64,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Skip the ±1 evaluation shortcut.
        #[arg(long)]
        no_filter: bool,
        #[arg(long, default_value_t = 2)]
        prime_budget: usize,
        /// Residual tolerance for accepting a lifted root (d = 2).
        #[arg(long, default_value_t = 1e-8)]
        tol: f64,
        /// Record wall time (makes output run-dependent).
        #[arg(long)]
        timing: bool,
        /// Exit with status 3 unless the pessimistic p̂·n lies in LO,HI.
        #[arg(long, value_name = "LO,HI")]
        check_scaled: Option<String>,
        #[command(flatten)]
        output: Output,
    },
    /// Exact p(n) over all coefficient pairs (d = 1, ell = 2, n ≤ 10).
    Exact {
        #[arg(long)]
        n: usize,
        /// Exit with status 3 on an oracle discrepancy or a tally that
        /// differs from the exact decomposition terms.
        #[arg(long)]
        check: bool,
        #[command(flatten)]
        output: Output,
    },
    /// CSV table of estimates over several n.
    Table {
        /// Comma-separated degrees.
        #[arg(long, value_delimiter = ',', required = true)]
        n: Vec<usize>,
        #[arg(long, default_value_t = 1)]
        d: usize,
        #[arg(long, default_value_t = 2)]
        ell: usize,
        #[arg(long, default_value_t = 100_000)]
        trials: u64,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value_t = 2)]
        prime_budget: usize,
        #[arg(long)]
        timing: bool,
        #[command(flatten)]
        output: Output,
    },
    /// Atom probability and concentration ratios of a vector file.
    Lo {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, value_enum, default_value_t = Method::Dp)]
        method: Method,
        #[command(flatten)]
        output: Output,
    },
    /// Dunomial queries.
    Dunomial {
        #[command(subcommand)]
        query: DunomialQuery,
    },
    /// Classify the common roots of two univariate ±1 polynomials.
    Classify {
        /// Sign string, constant term first, e.g. "+-+".
        #[arg(long)]
        p: String,
        #[arg(long)]
        q: String,
        #[command(flatten)]
        output: Output,
    },
    /// Zone of a point of ℂ^d.
    ClassifyPoint {
        /// Comma-separated coordinates, each `re` or `re:im`.
        #[arg(long)]
        point: String,
        #[arg(long)]
        n: u32,
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
        #[command(flatten)]
        output: Output,
    },
    /// Concentration-bound maxima over the built-in corpus.
    Bounds {
        /// Exit with status 3 if the sharp Erdős ratio exceeds 1 or the
        /// Hálász ratio exceeds 4.
        #[arg(long)]
        check: bool,
        #[command(flatten)]
        output: Output,
    },
    /// Exact decomposition terms I, II, III for degree n.
    Terms {
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        output: Output,
    },
}

#[derive(Subcommand)]
enum DunomialQuery {
    /// Minimal order of a vanishing dunomial of degree ≤ cap.
    ROfX {
        #[arg(long)]
        point: String,
        #[arg(long)]
        cap: u32,
        /// Decide vanishing numerically even for rational points.
        #[arg(long)]
        numeric: bool,
        #[arg(long, default_value_t = DEFAULT_TOL)]
        tol: f64,
        #[command(flatten)]
        output: Output,
    },
    /// Number of dunomials of degree ≤ n vanishing at the point.
    Count {
        #[arg(long)]
        point: String,
        #[arg(long)]
        n: u32,
        #[arg(long)]
        numeric: bool,
        #[arg(long, default_value_t = DEFAULT_TOL)]
        tol: f64,
        #[command(flatten)]
        output: Output,
    },
    /// List dunomials of degree ≤ n, or reduced ones of a given order.
    Enumerate {
        #[arg(long)]
        d: usize,
        #[arg(long, conflicts_with = "order", required_unless_present = "order")]
        n: Option<usize>,
        #[arg(long)]
        order: Option<u32>,
        #[command(flatten)]
        output: Output,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Method {
    Dp,
    Enumerate,
}

enum Failure {
    Config(Error),
    Runtime(Error),
    Check(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Io(_) | Error::Json(_) => Failure::Runtime(e),
            _ => Failure::Config(e),
        }
    }
}

fn emit(output: &Output, text: &str) -> Result<(), Failure> {
    match &output.out {
        Some(path) => std::fs::write(path, text).map_err(|e| Failure::Runtime(e.into())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn emit_json<T: Serialize>(output: &Output, v: &T) -> Result<(), Failure> {
    emit(output, &to_json(v)?)
}

fn parse_range(s: &str) -> Result<(f64, f64), Failure> {
    let bad = || Failure::Config(Error::Parse(format!("expected LO,HI, got {s:?}")));
    let (lo, hi) = s.split_once(',').ok_or_else(bad)?;
    Ok((lo.trim().parse().map_err(|_| bad())?, hi.trim().parse().map_err(|_| bad())?))
}

fn mode(numeric: bool, tol: f64) -> DunomialMode {
    if numeric {
        DunomialMode::Numeric { tol }
    } else {
        DunomialMode::ExactRational
    }
}

/// Points with decimal coordinates are handled numerically unless exact
/// mode is forced by a rational form.
fn dunomial_point(s: &str, numeric: bool) -> Result<(DunomialPoint, bool), Failure> {
    let p: DunomialPoint = s.parse()?;
    let numeric = numeric || matches!(p, DunomialPoint::Approx(_));
    Ok((p, numeric))
}

#[derive(Serialize)]
struct LoReport {
    #[serde(flatten)]
    atom: AtomResult,
    bounds: BoundReport,
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Estimate {
            d,
            n,
            ell,
            trials,
            seed,
            no_filter,
            prime_budget,
            tol,
            timing,
            check_scaled,
            output,
        } => {
            let range = check_scaled.as_deref().map(parse_range).transpose()?;
            let mut config = CampaignConfig::monte_carlo(d, n, ell, trials, seed);
            config.pm1_filter = !no_filter;
            config.prime_budget = prime_budget;
            config.tol = tol;
            let start = Instant::now();
            let mut report = estimate_p(&config)?;
            if timing {
                report.wall_time_seconds = Some(start.elapsed().as_secs_f64());
            }
            emit_json(&output, &report)?;
            if let Some((lo, hi)) = range {
                let s = report.pessimistic.scaled_n;
                if !(lo..=hi).contains(&s) {
                    return Err(Failure::Check(format!("p̂·n = {s} outside [{lo}, {hi}]")));
                }
            }
        }
        Command::Exact { n, check, output } => {
            let report = exact_p_bruteforce(&CampaignConfig::exhaustive(n))?;
            emit_json(&output, &report)?;
            if check {
                let t = &report.terms;
                if report.oracle_discrepancies != 0 {
                    return Err(Failure::Check(format!(
                        "{} oracle discrepancies",
                        report.oracle_discrepancies
                    )));
                }
                if report.both_vanish_at_one.probability != t.i
                    || report.both_vanish_at_minus_one.probability != t.ii
                    || report.both_vanish_at_both.probability != -t.iii.clone()
                {
                    return Err(Failure::Check("event tallies differ from I, II, |III|".into()));
                }
            }
        }
        Command::Table {
            n,
            d,
            ell,
            trials,
            seed,
            prime_budget,
            timing,
            output,
        } => {
            let mut base = CampaignConfig::monte_carlo(d, n[0], ell, trials, seed);
            base.prime_budget = prime_budget;
            emit(&output, &asymptotic_table(&base, &n, timing)?)?;
        }
        Command::Lo {
            input,
            method,
            output,
        } => {
            let text = std::fs::read_to_string(&input).map_err(|e| Failure::Config(e.into()))?;
            let xi = AtomVector::from_text(&text)?;
            let method = match method {
                Method::Dp => AtomMethod::Dp,
                Method::Enumerate => AtomMethod::Enumerate,
            };
            let report = LoReport {
                atom: atom_probability_with(&xi, method)?,
                bounds: bound_report(&xi),
            };
            emit_json(&output, &report)?;
        }
        Command::Dunomial { query } => match query {
            DunomialQuery::ROfX {
                point,
                cap,
                numeric,
                tol,
                output,
            } => {
                let (p, numeric) = dunomial_point(&point, numeric)?;
                emit_json(&output, &r_of_x(&p, cap, mode(numeric, tol))?)?;
            }
            DunomialQuery::Count {
                point,
                n,
                numeric,
                tol,
                output,
            } => {
                let (p, numeric) = dunomial_point(&point, numeric)?;
                let count = count_satisfied(&p, n, mode(numeric, tol))?;
                emit_json(&output, &serde_json::json!({ "n": n, "count": count }))?;
            }
            DunomialQuery::Enumerate { d, n, order, output } => {
                let list = match (n, order) {
                    (Some(n), _) => enumerate_dunomials(d, n)?,
                    (None, Some(r)) => enumerate_reduced_by_order(d, r)?,
                    (None, None) => unreachable!("clap requires one of them"),
                };
                let lines: Vec<String> = list.iter().map(ToString::to_string).collect();
                emit_json(&output, &serde_json::json!({ "count": list.len(), "dunomials": lines }))?;
            }
        },
        Command::Classify { p, q, output } => {
            let p: BernoulliPolyUni = p.parse()?;
            let q: BernoulliPolyUni = q.parse()?;
            let factors: Vec<serde_json::Value> = classify_common_roots_1d(&p, &q)?
                .into_iter()
                .map(|(f, c)| serde_json::json!({ "factor": f.to_string(), "class": c }))
                .collect();
            emit_json(&output, &factors)?;
        }
        Command::ClassifyPoint {
            point,
            n,
            tol,
            output,
        } => {
            let coords = match point.parse::<DunomialPoint>()? {
                DunomialPoint::Exact(v) => v.iter().map(|g| g.to_complex()).collect(),
                DunomialPoint::Approx(p) => p.coords().to_vec(),
            };
            let x = ComplexPoint::new(coords)?;
            emit_json(&output, &classify_point(&x, n, tol)?)?;
        }
        Command::Bounds { check, output } => {
            let report = bound_suite();
            emit_json(&output, &report)?;
            if check && (report.erdos_sharp_ratio.value > 1.0 || report.halasz_ratio.value > 4.0) {
                return Err(Failure::Check("corpus ratio above its bound".into()));
            }
        }
        Command::Terms { n, output } => emit_json(&output, &decompose_terms(n))?,
    }
    Ok(())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Config(e)) => {
            eprintln!("crl: {e}");
            ExitCode::from(2)
        }
        Err(Failure::Runtime(e)) => {
            eprintln!("crl: {e}");
            ExitCode::from(1)
        }
        Err(Failure::Check(msg)) => {
            eprintln!("crl: check failed: {msg}");
            ExitCode::from(3)
        }
    }
}
