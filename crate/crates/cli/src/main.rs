//! `aqp`: verification suites, point evaluations, coefficient tables and
//! mode brackets for the elliptic algebra, reported as JSON.

mod commands;
mod config;

use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::anyhow;
use aqp_core::Complex64;
use clap::{Args, Parser, Subcommand};

use commands::{CliError, Suite, TableObject, Target};
use config::RunConfig;

#[derive(Parser)]
#[command(name = "aqp", version, about = "Numerical checks for the elliptic algebra A_{q,p}(sl(2)_c)")]
struct Cli {
    #[command(flatten)]
    run: RunFlags,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct RunFlags {
    /// Elliptic nome, 0 < |p| < 1.
    #[arg(long, global = true, allow_hyphen_values = true)]
    p: Option<f64>,
    /// Deformation parameter, 0 < |q| < 1.
    #[arg(long, global = true, allow_hyphen_values = true)]
    q: Option<f64>,
    /// Elliptic modulus, instead of p.
    #[arg(long, global = true)]
    modulus: Option<f64>,
    /// Crossing parameter, instead of q.
    #[arg(long, global = true, allow_hyphen_values = true)]
    lambda: Option<f64>,
    #[arg(long, global = true)]
    samples: Option<usize>,
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Largest sector in the telescoping check.
    #[arg(long, global = true)]
    k_max: Option<u32>,
    /// Structure constants F(s) are kept for |s| up to this.
    #[arg(long, global = true)]
    s_cutoff: Option<i64>,
    /// JSON file with run configuration fields; flags take precedence.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Write the JSON document here instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Run a verification suite.
    Verify {
        #[arg(long, value_enum, default_value = "all")]
        suite: Suite,
    },
    /// Evaluate one object at a point.
    Eval {
        #[arg(value_enum)]
        target: Target,
        /// Point as `re` or `re,im`.
        #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
        x: Complex64,
        /// Level, for Y and T.
        #[arg(long, allow_hyphen_values = true)]
        c: Option<f64>,
        /// Nome of the theta function; defaults to p².
        #[arg(long)]
        p2: Option<f64>,
    },
    /// Tabulate F_k(s), or contour coefficients next to them.
    Table {
        #[arg(value_enum)]
        object: TableObject,
        #[arg(long, default_value_t = 0)]
        k: u32,
        #[arg(long, default_value_t = 5)]
        smax: i64,
    },
    /// Print the bracket {t_n, t_m} of sector k.
    Bracket {
        #[arg(long, allow_hyphen_values = true)]
        n: i64,
        #[arg(long, allow_hyphen_values = true)]
        m: i64,
        #[arg(long, default_value_t = 0)]
        k: u32,
    },
}

fn parse_complex(s: &str) -> Result<Complex64, String> {
    let parts: Vec<&str> = s.split(',').collect();
    let num = |t: &str| t.trim().parse::<f64>().map_err(|e| format!("{t:?}: {e}"));
    match parts.as_slice() {
        [re] => Ok(Complex64::new(num(re)?, 0.0)),
        [re, im] => Ok(Complex64::new(num(re)?, num(im)?)),
        _ => Err(format!("expected `re` or `re,im`, got {s:?}")),
    }
}

impl RunFlags {
    fn config(&self) -> anyhow::Result<RunConfig> {
        let flags = RunConfig {
            p: self.p,
            q: self.q,
            modulus: self.modulus,
            lambda: self.lambda,
            tolerances: None,
            samples: self.samples,
            seed: self.seed,
            k_max: self.k_max,
            s_cutoff: self.s_cutoff,
            out: self.out.clone(),
        };
        let base = match &self.config {
            Some(path) => RunConfig::load(path)?,
            None => RunConfig::default(),
        };
        Ok(base.merged(flags))
    }
}

fn write(doc: &serde_json::Value, config: &RunConfig) -> anyhow::Result<()> {
    let text = serde_json::to_string_pretty(doc)? + "\n";
    match &config.out {
        Some(path) => std::fs::write(path, text).map_err(|e| anyhow!("writing {}: {e}", path.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let config = match cli.run.config() {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {e:#}");
            return ExitCode::from(2);
        }
    };
    let outcome = match cli.command {
        Command::Verify { suite } => commands::verify(&config, suite),
        Command::Eval { target, x, c, p2 } => commands::eval(&config, target, x, c, p2),
        Command::Table { object, k, smax } => commands::table(&config, object, k, smax),
        Command::Bracket { n, m, k } => commands::bracket(&config, n, m, k),
    };
    match outcome {
        Ok((doc, pass)) => match write(&doc, &config) {
            Ok(()) if pass => ExitCode::SUCCESS,
            Ok(()) => ExitCode::from(1),
            Err(e) => {
                eprintln!("error: {e:#}");
                ExitCode::from(1)
            }
        },
        Err(CliError::Usage(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
        Err(CliError::Evaluation(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
