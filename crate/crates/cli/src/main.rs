use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use kwsum_core::codes::{punctured_c1_weights, weight_distribution, Code, WeightStrategy};
use kwsum_core::distributions::{s_report, t_report, SStrategy, TStrategy};
use kwsum_core::exp_sums::curve_samples;
use kwsum_core::sequences::{compare_correlation_table, correlation_distribution, CorrStrategy};
use kwsum_core::verify::verify;
use kwsum_core::{Context, Error};

#[derive(Parser, Debug)]
#[command(name = "kwsum", version, about = "Kasami-Welch exponential sums, codes and sequence correlations")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[arg(long, global = true)]
    n: Option<u32>,
    #[arg(long, global = true)]
    k: Option<u32>,
    #[arg(long, global = true, value_enum)]
    strategy: Option<Strategy>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Worker threads (default: available parallelism).
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Write the output here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Lift the per-strategy size guards.
    #[arg(long, global = true)]
    allow_large: bool,
}

#[derive(Subcommand, Debug, Clone, Copy)]
enum Command {
    /// Derived parameters and validity flags.
    Params,
    /// Value distribution of T against its closed form.
    Tdist,
    /// Value distribution of S against its closed form.
    Sdist,
    /// Weight distributions of C1 and C2 (and C1' when n/d is even).
    Weights,
    /// Correlation distribution of the sequence family and its cmax.
    Corr,
    /// Artin-Schreier point counts for sampled pairs.
    Curve {
        #[arg(long, default_value_t = 20)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Every applicable check; exits 1 on any failure or uncertified table.
    Verify,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
enum Strategy {
    Naive,
    Fast,
    Reduced,
    Brute,
    Lemma2,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
enum Format {
    Json,
    Csv,
}

enum Failure {
    /// Exit 1.
    Check(String),
    /// Exit 2.
    Invalid(String),
    /// Exit 3.
    Guard(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        match e {
            Error::SizeGuard(_) => Failure::Guard(e.to_string()),
            Error::InvalidParams { .. }
            | Error::DegreeOutOfRange(_)
            | Error::Unsupported(_)
            | Error::InvalidSequence(_)
            | Error::ShiftOutOfRange { .. } => Failure::Invalid(e.to_string()),
            other => Failure::Check(other.to_string()),
        }
    }
}

fn to_json<T: serde::Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable");
    s.push('\n');
    s
}

fn bad_strategy(command: &str, s: Strategy) -> Failure {
    Failure::Invalid(format!("strategy {s:?} does not apply to {command}").to_lowercase())
}

/// Returns the text to emit and whether the run counts as a success.
fn run(cli: &Cli) -> Result<(String, bool), Failure> {
    let (Some(n), Some(k)) = (cli.n, cli.k) else {
        return Err(Failure::Invalid("--n and --k are required".into()));
    };
    let ctx = Context::new(n, k)?.allow_large(cli.allow_large);
    let csv = cli.format == Format::Csv;
    match cli.command {
        Command::Params => {
            let p = &ctx.params;
            if csv {
                return Err(Failure::Invalid("params has no csv form".into()));
            }
            let value = json!({
                "params": p,
                "modulus": format!("{:#b}", ctx.field.modulus()),
                "family_size": p.sequence_valid.then(|| p.family_size()),
            });
            Ok((to_json(&value), true))
        }
        Command::Tdist => {
            let strategy = match cli.strategy.unwrap_or(Strategy::Fast) {
                Strategy::Naive => TStrategy::Naive,
                Strategy::Fast => TStrategy::RankFast,
                s => return Err(bad_strategy("tdist", s)),
            };
            let r = t_report(&ctx, strategy)?;
            let text = if csv { r.empirical.to_csv() } else { to_json(&r) };
            Ok((text, true))
        }
        Command::Sdist => {
            let strategy = match cli.strategy.unwrap_or(Strategy::Lemma2) {
                Strategy::Naive => SStrategy::Naive,
                Strategy::Lemma2 => SStrategy::Lemma2,
                s => return Err(bad_strategy("sdist", s)),
            };
            let r = s_report(&ctx, strategy)?;
            let text = if csv { r.empirical.to_csv() } else { to_json(&r) };
            Ok((text, true))
        }
        Command::Weights => {
            let strategy = match cli.strategy {
                None | Some(Strategy::Fast) | Some(Strategy::Lemma2) => WeightStrategy::ViaSums,
                Some(Strategy::Naive) | Some(Strategy::Brute) => WeightStrategy::Direct,
                Some(s) => return Err(bad_strategy("weights", s)),
            };
            let c1 = weight_distribution(&ctx, Code::C1, strategy)?;
            let c2 = weight_distribution(&ctx, Code::C2, strategy)?;
            let punctured = if ctx.params.s_even {
                Some(punctured_c1_weights(&ctx, &c1)?)
            } else {
                None
            };
            if csv {
                let mut text = format!("# C1\n{}# C2\n{}", c1.to_csv(), c2.to_csv());
                if let Some(p) = &punctured {
                    text.push_str(&format!("# C1'\n{}", p.to_csv()));
                }
                return Ok((text, true));
            }
            Ok((to_json(&json!({ "c1": c1, "c2": c2, "c1_punctured": punctured })), true))
        }
        Command::Corr => {
            let strategy = match cli.strategy.unwrap_or(Strategy::Reduced) {
                Strategy::Reduced => CorrStrategy::Reduced,
                Strategy::Brute | Strategy::Naive => CorrStrategy::Brute,
                s => return Err(bad_strategy("corr", s)),
            };
            let dist = correlation_distribution(&ctx, strategy)?;
            if csv {
                return Ok((dist.to_csv(), true));
            }
            let table = compare_correlation_table(&ctx, &dist);
            Ok((to_json(&json!({ "distribution": dist, "table": table })), true))
        }
        Command::Curve { samples, seed } => {
            let rows = curve_samples(&ctx, samples, seed)?;
            let ok = rows.iter().all(|r| r.formula.is_none_or(|f| f == r.brute));
            if csv {
                let mut text = String::from("alpha,beta,brute,formula\n");
                for r in &rows {
                    let f = r.formula.map(|f| f.to_string()).unwrap_or_default();
                    text.push_str(&format!("{},{},{},{f}\n", r.alpha.0, r.beta.0, r.brute));
                }
                return Ok((text, ok));
            }
            Ok((to_json(&json!({ "params": ctx.params.header(), "samples": rows })), ok))
        }
        Command::Verify => {
            let report = verify(&ctx);
            let text = if csv {
                return Err(Failure::Invalid("verify has no csv form".into()));
            } else if cli.out.is_some() {
                to_json(&report)
            } else {
                let mut t = report.lines().join("\n");
                t.push_str(&format!("\n{}\n", if report.ok() { "VERIFIED" } else { "NOT VERIFIED" }));
                t
            };
            Ok((text, report.ok()))
        }
    }
}

fn emit(cli: &Cli, text: &str) -> std::io::Result<()> {
    match &cli.out {
        Some(path) => fs::write(path, text),
        None => std::io::stdout().write_all(text.as_bytes()),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(t) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(t).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    match run(&cli) {
        Ok((text, ok)) => {
            if let Err(e) = emit(&cli, &text) {
                eprintln!("error: {e}");
                return ExitCode::from(1);
            }
            if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(Failure::Check(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(1)
        }
        Err(Failure::Invalid(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
        Err(Failure::Guard(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(3)
        }
    }
}
