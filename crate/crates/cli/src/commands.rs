//! The subcommands. Each returns a JSON document and whether it passed.

use anyhow::anyhow;
use aqp_core::center::{
    structure_function_closed, structure_function_series, t_prefactor, verify_center, y_matrix, CRITICAL_LEVEL,
};
use aqp_core::modes::{
    f_coefficient, poisson_bracket, sector_radius, symmetrized_contour_coefficient, verify_modes, BracketFamily,
    ModePolynomial, CONTOUR_TOL,
};
use aqp_core::report::ParamsEcho;
use aqp_core::rmatrix::{r_matrix, rplus, tau, verify_rmatrix_properties};
use aqp_core::special::jacobi_theta;
use aqp_core::{CheckReport, Complex64, Error, TensorMatrix};
use clap::ValueEnum;
use serde_json::{json, Value};

use crate::config::RunConfig;

/// Failure classes, mapped to exit codes by `main`.
#[derive(Debug)]
pub enum CliError {
    /// Bad flags, configuration or parameter domain.
    Usage(anyhow::Error),
    /// An evaluation failed inside the library.
    Evaluation(anyhow::Error),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::Domain(_) | Error::Config(_) => CliError::Usage(e.into()),
            _ => CliError::Evaluation(e.into()),
        }
    }
}

fn usage(e: anyhow::Error) -> CliError {
    CliError::Usage(e)
}

pub type Outcome = Result<(Value, bool), CliError>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Rmatrix,
    Center,
    Modes,
    All,
}

pub fn verify(config: &RunConfig, suite: Suite) -> Outcome {
    let cfg = config.tolerances().map_err(usage)?;
    let (samples, seed) = (config.samples(), config.seed());
    let report = match suite {
        Suite::Rmatrix => verify_rmatrix_properties(&config.params().map_err(usage)?, &cfg, samples, seed),
        Suite::Center => verify_center(&config.params().map_err(usage)?, &cfg, samples, seed),
        Suite::Modes => {
            let q = config.q().map_err(usage)?;
            verify_modes(q, &config.mode_suite().map_err(usage)?, &cfg, samples, seed)
        }
        Suite::All => {
            let params = config.params().map_err(usage)?;
            let modes = config.mode_suite().map_err(usage)?;
            let mut all = CheckReport::new("all", ParamsEcho::new(Some(&params), &cfg), seed);
            all.absorb(verify_rmatrix_properties(&params, &cfg, samples, seed));
            all.absorb(verify_center(&params, &cfg, samples, seed));
            all.absorb(verify_modes(params.q(), &modes, &cfg, samples, seed));
            all
        }
    };
    let pass = report.all_passed();
    let value = serde_json::to_value(&report).map_err(|e| CliError::Evaluation(e.into()))?;
    Ok((value, pass))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Target {
    #[value(name = "R")]
    R,
    #[value(name = "Rplus")]
    Rplus,
    #[value(name = "Y")]
    Y,
    #[value(name = "T")]
    T,
    #[value(name = "f_closed")]
    FClosed,
    #[value(name = "f_series")]
    FSeries,
    #[value(name = "tau")]
    Tau,
    #[value(name = "theta")]
    Theta,
}

fn matrix_json(m: &TensorMatrix) -> Value {
    json!(m.entries())
}

pub fn eval(config: &RunConfig, target: Target, x: Complex64, c: Option<f64>, p2: Option<f64>) -> Outcome {
    let cfg = config.tolerances().map_err(usage)?;
    let c = c.unwrap_or(CRITICAL_LEVEL);
    let value = match target {
        Target::Theta => {
            let p2 = match p2 {
                Some(v) => Complex64::new(v, 0.0),
                None => {
                    let p = config.params().map_err(usage)?.p();
                    p * p
                }
            };
            json!(jacobi_theta(x, p2, &cfg)?)
        }
        Target::FClosed | Target::FSeries | Target::Tau | Target::T => {
            let params = config.params().map_err(usage)?;
            let v = match target {
                Target::FClosed => structure_function_closed(x, &params, &cfg)?,
                Target::FSeries => structure_function_series(x, &params, &cfg)?,
                Target::Tau => tau(x, &params, &cfg)?,
                _ => t_prefactor(x, c, &params, &cfg)?,
            };
            json!(v)
        }
        Target::R | Target::Rplus | Target::Y => {
            let params = config.params().map_err(usage)?;
            let m = match target {
                Target::R => r_matrix(x, &params, &cfg)?,
                Target::Rplus => rplus(x, &params, &cfg)?,
                _ => y_matrix(x, c, &params, &cfg)?,
            };
            matrix_json(&m)
        }
    };
    let name = target.to_possible_value().map(|v| v.get_name().to_owned()).unwrap_or_default();
    let mut doc = json!({ "target": name, "x": x, "value": value });
    if matches!(target, Target::Y | Target::T) {
        doc["c"] = json!(c);
    }
    Ok((doc, true))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TableObject {
    #[value(name = "Fk")]
    Fk,
    #[value(name = "contour")]
    Contour,
}

fn family(config: &RunConfig, k: u32, extent: i64) -> Result<BracketFamily, CliError> {
    let q = config.q().map_err(usage)?;
    let s_cutoff = config.mode_suite().map_err(usage)?.s_cutoff;
    Ok(BracketFamily::new(k, q, s_cutoff, extent + 2 * s_cutoff)?)
}

pub fn table(config: &RunConfig, object: TableObject, k: u32, s_max: i64) -> Outcome {
    let cfg = config.tolerances().map_err(usage)?;
    let fam = family(config, k, 0)?;
    if s_max < 0 || s_max > fam.s_cutoff {
        return Err(usage(anyhow!("smax must lie in 0..={}, got {s_max}", fam.s_cutoff)));
    }
    let mut rows = Vec::new();
    let mut pass = true;
    for s in -s_max..=s_max {
        let f = f_coefficient(&fam, s)?;
        match object {
            TableObject::Fk => rows.push(json!({ "s": s, "f": f })),
            TableObject::Contour => {
                let c = symmetrized_contour_coefficient(&fam, s, sector_radius(&fam), &cfg)?;
                let residual = (c - f).norm() / c.norm().max(f.norm()).max(1.0);
                pass &= residual < CONTOUR_TOL;
                rows.push(json!({ "s": s, "f": f, "contour": c, "residual": residual }));
            }
        }
    }
    let mut doc = json!({ "object": object_name(object), "k": k, "q": fam.q, "rows": rows });
    if object == TableObject::Contour {
        doc["radius"] = json!(sector_radius(&fam));
        doc["tolerance"] = json!(CONTOUR_TOL);
        doc["pass"] = json!(pass);
    }
    Ok((doc, pass))
}

fn object_name(o: TableObject) -> &'static str {
    match o {
        TableObject::Fk => "Fk",
        TableObject::Contour => "contour",
    }
}

pub fn bracket(config: &RunConfig, n: i64, m: i64, k: u32) -> Outcome {
    if n % 2 != 0 || m % 2 != 0 {
        return Err(usage(anyhow!("mode indices must be even, got n = {n}, m = {m}")));
    }
    let fam = family(config, k, n.abs().max(m.abs()))?;
    let b = poisson_bracket(&ModePolynomial::mode(n)?, &ModePolynomial::mode(m)?, &fam)?;
    let terms: Vec<Value> = b.terms().map(|(mono, c)| json!({ "a": mono[0], "b": mono[1], "coefficient": c })).collect();
    let doc = json!({ "n": n, "m": m, "k": k, "q": fam.q, "s_cutoff": fam.s_cutoff, "terms": terms });
    Ok((doc, true))
}
