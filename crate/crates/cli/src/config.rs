//! Run configuration: JSON file, then command-line overrides.

use std::path::{Path, PathBuf};

use anyhow::{bail, Context};
use aqp_core::modes::ModeSuiteConfig;
use aqp_core::{Complex64, ModularParams, ToleranceConfig};
use serde::{Deserialize, Serialize};

pub const DEFAULT_P: f64 = 0.3;
pub const DEFAULT_Q: f64 = -0.5;
pub const DEFAULT_SAMPLES: usize = 25;
pub const DEFAULT_SEED: u64 = 7;

/// Everything a run depends on. Missing fields take the defaults above.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    pub p: Option<f64>,
    pub q: Option<f64>,
    /// Elliptic modulus, used with `lambda` instead of `(p, q)`.
    pub modulus: Option<f64>,
    pub lambda: Option<f64>,
    pub tolerances: Option<ToleranceConfig>,
    pub samples: Option<usize>,
    pub seed: Option<u64>,
    /// Largest sector in the telescoping check.
    pub k_max: Option<u32>,
    pub s_cutoff: Option<i64>,
    pub out: Option<PathBuf>,
}

impl RunConfig {
    pub fn load(path: &Path) -> anyhow::Result<Self> {
        let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))
    }

    /// Fields set in `other` replace those in `self`.
    pub fn merged(self, other: RunConfig) -> Self {
        Self {
            p: other.p.or(self.p),
            q: other.q.or(self.q),
            modulus: other.modulus.or(self.modulus),
            lambda: other.lambda.or(self.lambda),
            tolerances: other.tolerances.or(self.tolerances),
            samples: other.samples.or(self.samples),
            seed: other.seed.or(self.seed),
            k_max: other.k_max.or(self.k_max),
            s_cutoff: other.s_cutoff.or(self.s_cutoff),
            out: other.out.or(self.out),
        }
    }

    pub fn tolerances(&self) -> anyhow::Result<ToleranceConfig> {
        let t = self.tolerances.unwrap_or_default();
        t.validate()?;
        Ok(t)
    }

    pub fn samples(&self) -> usize {
        self.samples.unwrap_or(DEFAULT_SAMPLES)
    }

    pub fn seed(&self) -> u64 {
        self.seed.unwrap_or(DEFAULT_SEED)
    }

    /// The deformation parameter alone, for the mode layer.
    pub fn q(&self) -> anyhow::Result<Complex64> {
        if self.modulus.is_some() || self.lambda.is_some() {
            return Ok(self.params()?.q());
        }
        let q = self.q.unwrap_or(DEFAULT_Q);
        if !(q.abs() > 0.0 && q.abs() < 1.0) {
            bail!("deformation q = {q} must satisfy 0 < |q| < 1");
        }
        Ok(Complex64::new(q, 0.0))
    }

    pub fn params(&self) -> anyhow::Result<ModularParams> {
        let cfg = self.tolerances()?;
        let params = match (self.modulus, self.lambda) {
            (Some(k), Some(l)) => {
                if self.p.is_some() || self.q.is_some() {
                    bail!("give either (p, q) or (modulus, lambda), not both");
                }
                ModularParams::from_modulus_lambda(k, Complex64::new(l, 0.0), &cfg)?
            }
            (None, None) => {
                let p = self.p.unwrap_or(DEFAULT_P);
                let q = self.q.unwrap_or(DEFAULT_Q);
                ModularParams::new(Complex64::new(p, 0.0), Complex64::new(q, 0.0), &cfg)?
            }
            _ => bail!("modulus and lambda must be given together"),
        };
        Ok(params)
    }

    pub fn mode_suite(&self) -> anyhow::Result<ModeSuiteConfig> {
        let mut m = ModeSuiteConfig::default();
        if let Some(k) = self.k_max {
            m.k_max = k;
        }
        if let Some(s) = self.s_cutoff {
            if s < 1 {
                bail!("s_cutoff must be positive, got {s}");
            }
            m.s_cutoff = s;
        }
        Ok(m)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn flags_override_file() {
        let file = RunConfig { p: Some(0.1), seed: Some(3), ..Default::default() };
        let flags = RunConfig { p: Some(0.2), ..Default::default() };
        let m = file.merged(flags);
        assert_eq!(m.p, Some(0.2));
        assert_eq!(m.seed(), 3);
    }

    #[test]
    fn domain_checked() {
        assert!(RunConfig { q: Some(1.5), ..Default::default() }.params().is_err());
        assert!(RunConfig { q: Some(1.5), ..Default::default() }.q().is_err());
        assert!(RunConfig { modulus: Some(0.5), ..Default::default() }.params().is_err());
        assert!(RunConfig::default().params().is_ok());
    }

    #[test]
    fn unknown_fields_rejected() {
        assert!(serde_json::from_str::<RunConfig>(r#"{"p": 0.3, "nome": 1}"#).is_err());
        let c: RunConfig = serde_json::from_str(r#"{"q": -0.4, "samples": 5}"#).unwrap();
        assert_eq!((c.q, c.samples()), (Some(-0.4), 5));
    }
}
