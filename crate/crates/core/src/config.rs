use alloc::format;

use crate::error::{Error, Result};

/// Truncation thresholds, test tolerances and numeric-differentiation steps.
///
/// Invariants: `0 < trunc_eps < test_tol < 1`, `max_terms >= 64`,
/// `contour_points >= 64` and even. Use [`ToleranceConfig::validate`] after
/// building one by hand.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct ToleranceConfig {
    /// Stop criterion for infinite products and series.
    pub trunc_eps: f64,
    /// Largest accepted identity residual.
    pub test_tol: f64,
    /// Step in the level parameter `c` for numeric derivatives.
    pub diff_step: f64,
    /// Hard cap on terms per product index or series.
    pub max_terms: usize,
    /// Quadrature nodes per contour.
    pub contour_points: usize,
}

impl Default for ToleranceConfig {
    fn default() -> Self {
        Self {
            trunc_eps: 1e-14,
            test_tol: 1e-9,
            diff_step: 1e-4,
            max_terms: 4096,
            contour_points: 1024,
        }
    }
}

impl ToleranceConfig {
    pub fn validate(&self) -> Result<()> {
        let bad = |msg| Err(Error::Config(msg));
        if !(self.trunc_eps > 0.0 && self.trunc_eps < self.test_tol && self.test_tol < 1.0) {
            return bad(format!(
                "need 0 < trunc_eps ({}) < test_tol ({}) < 1",
                self.trunc_eps, self.test_tol
            ));
        }
        if !(self.diff_step > 0.0 && self.diff_step.is_finite()) {
            return bad(format!("diff_step must be positive, got {}", self.diff_step));
        }
        if self.max_terms < 64 {
            return bad(format!("max_terms must be >= 64, got {}", self.max_terms));
        }
        if self.contour_points < 64 || self.contour_points % 2 != 0 {
            return bad(format!(
                "contour_points must be even and >= 64, got {}",
                self.contour_points
            ));
        }
        Ok(())
    }

    /// Distance to a pole below which evaluations are refused.
    pub fn pole_guard(&self) -> f64 {
        num_traits::Float::sqrt(self.trunc_eps)
    }
}
