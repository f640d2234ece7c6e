//! Named residuals with pass/fail verdicts.

use alloc::string::{String, ToString};
use alloc::vec::Vec;

use crate::config::ToleranceConfig;
use crate::error::Error;
use crate::rmatrix::ModularParams;
use crate::C64;

/// One named check: the largest residual seen over its samples.
///
/// `pass` is always `max_residual < tolerance`. An evaluation failure inside
/// a check is recorded in `error` and pins `max_residual` to `f64::MAX`.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct CheckEntry {
    pub name: String,
    pub samples: usize,
    pub max_residual: f64,
    pub tolerance: f64,
    pub pass: bool,
    #[cfg_attr(feature = "serde", serde(default, skip_serializing_if = "Option::is_none"))]
    pub error: Option<String>,
}

impl CheckEntry {
    pub fn new(name: impl Into<String>, tolerance: f64) -> Self {
        Self {
            name: name.into(),
            samples: 0,
            max_residual: 0.0,
            tolerance,
            pass: true,
            error: None,
        }
    }

    /// Fold in one sample.
    pub fn record(&mut self, residual: Result<f64, Error>) {
        self.samples += 1;
        match residual {
            Ok(r) if r.is_finite() => self.max_residual = self.max_residual.max(r),
            Ok(r) => self.fail(alloc::format!("non-finite residual {r}")),
            Err(e) => self.fail(e.to_string()),
        }
        self.pass = self.max_residual < self.tolerance;
    }

    fn fail(&mut self, msg: String) {
        self.max_residual = f64::MAX;
        if self.error.is_none() {
            self.error = Some(msg);
        }
    }
}

/// Parameters the report was computed with.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct ParamsEcho {
    pub p: Option<C64>,
    pub q: Option<C64>,
    pub modulus: Option<C64>,
    pub big_k: Option<C64>,
    pub big_k_prime: Option<C64>,
    pub lambda: Option<C64>,
    pub tolerances: ToleranceConfig,
}

impl ParamsEcho {
    pub fn new(params: Option<&ModularParams>, tolerances: &ToleranceConfig) -> Self {
        Self {
            p: params.map(|m| m.p()),
            q: params.map(|m| m.q()),
            modulus: params.map(|m| m.modulus()),
            big_k: params.map(|m| m.big_k()),
            big_k_prime: params.map(|m| m.big_k_prime()),
            lambda: params.map(|m| m.lambda()),
            tolerances: *tolerances,
        }
    }

    /// Echo for suites that only depend on `q`.
    pub fn with_q(q: C64, tolerances: &ToleranceConfig) -> Self {
        Self { q: Some(q), ..Self::new(None, tolerances) }
    }
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct CheckReport {
    pub suite: String,
    pub checks: Vec<CheckEntry>,
    pub params_echo: ParamsEcho,
    pub seed: u64,
}

impl CheckReport {
    pub fn new(suite: impl Into<String>, params_echo: ParamsEcho, seed: u64) -> Self {
        Self { suite: suite.into(), checks: Vec::new(), params_echo, seed }
    }

    pub fn push(&mut self, entry: CheckEntry) {
        self.checks.push(entry);
    }

    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn get(&self, name: &str) -> Option<&CheckEntry> {
        self.checks.iter().find(|c| c.name == name)
    }

    /// Append another report's checks, prefixing their names with its suite.
    pub fn absorb(&mut self, other: CheckReport) {
        for mut c in other.checks {
            c.name = alloc::format!("{}/{}", other.suite, c.name);
            self.checks.push(c);
        }
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckEntry> {
        self.checks.iter().filter(|c| !c.pass)
    }
}

/// Residual of `lhs ≈ rhs` relative to the size of the operands, floored
/// at 1 so that small quantities are compared absolutely.
pub fn relative_residual(diff: f64, lhs: f64, rhs: f64) -> f64 {
    diff / lhs.max(rhs).max(1.0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pass_tracks_residual() {
        let mut e = CheckEntry::new("x", 1e-9);
        e.record(Ok(1e-12));
        assert!(e.pass);
        e.record(Ok(1e-3));
        assert!(!e.pass);
        assert_eq!(e.samples, 2);
        assert_eq!(e.max_residual, 1e-3);
    }

    #[test]
    fn error_fails_check() {
        let mut e = CheckEntry::new("x", 1e-9);
        e.record(Err(Error::Singularity("pole".into())));
        e.record(Ok(0.0));
        assert!(!e.pass);
        assert_eq!(e.max_residual, f64::MAX);
        assert!(e.error.as_deref().unwrap().contains("pole"));
    }
}
