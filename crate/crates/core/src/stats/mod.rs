//! Nonparametric and normality testing primitives.

mod battery;
mod mann_whitney;
mod normality;

pub use battery::{normality_battery, BatteryRow, NormalityTable};
pub use mann_whitney::{mann_whitney, midranks, MWMethod, MWResult, DEFAULT_EXACT_CUTOFF, MAX_EXACT_CUTOFF};
pub use normality::{
    anderson_darling, anderson_darling_critical_value, chi_square_normality, shapiro_wilk,
    shapiro_wilk_seeded, NormalityTest, NormalityVerdict, SHAPIRO_WILK_MAX_N,
};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum StatsError {
    #[error("sample is empty")]
    EmptySample,
    #[error("sample contains a non-finite value")]
    NonFinite,
    #[error("sample has zero variance")]
    DegenerateSample,
    #[error("sample too small: {given} values, at least {needed} required")]
    TooSmall { given: usize, needed: usize },
    #[error("significance level {0} is outside the supported range")]
    UnsupportedAlpha(f64),
    #[error("exact cutoff {0} exceeds the supported maximum")]
    ExactCutoffTooLarge(usize),
}

/// Standard normal CDF, accurate far into both tails.
pub(crate) fn norm_cdf(z: f64) -> f64 {
    0.5 * statrs::function::erf::erfc(-z / std::f64::consts::SQRT_2)
}

/// Upper tail of the standard normal.
pub(crate) fn norm_sf(z: f64) -> f64 {
    0.5 * statrs::function::erf::erfc(z / std::f64::consts::SQRT_2)
}

pub(crate) fn check_finite(sample: &[f64]) -> Result<(), StatsError> {
    if sample.iter().all(|v| v.is_finite()) {
        Ok(())
    } else {
        Err(StatsError::NonFinite)
    }
}

pub(crate) fn mean_and_sd(sample: &[f64]) -> (f64, f64) {
    let n = sample.len() as f64;
    let mean = sample.iter().sum::<f64>() / n;
    let ss = sample.iter().map(|v| (v - mean).powi(2)).sum::<f64>();
    (mean, (ss / (n - 1.0)).sqrt())
}
