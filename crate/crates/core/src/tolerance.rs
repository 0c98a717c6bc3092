//! Numerical tolerances shared by every module.
//!
//! All thresholds are derived from a handful of base constants scaled by the
//! size of the structure constants, so rescaling a basis does not change
//! which checks pass.

use serde::Serialize;

/// Base constants for every tolerance used by the crate.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Tolerances {
    /// Associativity / unit residual base, scaled by `(1 + max|c|)^3`.
    pub assoc_base: f64,
    /// Character certification base, scaled by `(1 + max|c|)`.
    pub char_base: f64,
    /// Nilpotency base, scaled by `‖L_x‖^m`.
    pub nilp_base: f64,
    /// Deduplication base, scaled by `(1 + max|v_i|)`.
    pub sep_base: f64,
    /// Largest input asymmetry that is silently symmetrized.
    pub max_asymmetry: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances { assoc_base: 1e-9, char_base: 1e-8, nilp_base: 1e-8, sep_base: 1e-6, max_asymmetry: 1e-12 }
    }
}

impl Tolerances {
    /// Defaults with the character tolerance base replaced (the CLI `--tol` flag).
    pub fn with_char_base(char_base: f64) -> Self {
        Tolerances { char_base, ..Default::default() }
    }

    pub fn assoc(&self, max_abs_c: f64) -> f64 {
        self.assoc_base * (1.0 + max_abs_c).powi(3)
    }

    pub fn character(&self, max_abs_c: f64) -> f64 {
        self.char_base * (1.0 + max_abs_c)
    }

    /// Separation threshold for two value vectors whose largest entry is `max_abs_v`.
    pub fn separation(&self, max_abs_v: f64) -> f64 {
        self.sep_base * (1.0 + max_abs_v)
    }

    /// Threshold below which `x^m` counts as zero, given `‖L_x‖₂`.
    pub fn nilpotent(&self, regular_norm: f64, m: usize) -> f64 {
        self.nilp_base * regular_norm.max(f64::MIN_POSITIVE).powi(m as i32)
    }
}

/// Relative slack used when comparing a norm ratio against 1.
pub const CONTRACTION_SLACK: f64 = 1e-9;

/// Relative singular-value threshold for rank decisions.
pub const RANK_REL_TOL: f64 = 1e-9;
