//! Variational resummation by the square-root trick.
//!
//! Two variants are provided. The plain one rewrites the weak-coupling energy
//! series with a trial frequency `Ω` and optimizes it in the strong-coupling
//! limit. The effective-potential one applies the same trick to the loop
//! expansion in `ħ` and optimizes jointly in `Ω` and the background.

mod jet;
mod naive;
mod roots;
mod trick;
mod veff;

use serde::Serialize;

pub use jet::Jet2;
pub use naive::{naive_b0, naive_b0_from, subleading_order1, NaiveConfig, NaiveRule, StrongCouplingFunction, Subleading};
pub use roots::{bisect, isolate_roots, log_grid};
pub use trick::{trick_reexpand_energy, TrickSeries};
pub use veff::{
    veff_b0, veff_b0_from, veff_optimize, veff_strong_coupling_x1, veff_trick, veff_x1_residual, TrickedVeff, VeffConfig,
    VeffStrongCoupling,
};

/// Reference strong-coupling coefficient of `p²/2 + i x³`.
pub const B0_REFERENCE: f64 = 0.762851773;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Variant {
    Naive,
    Veff,
}

impl std::fmt::Display for Variant {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Variant::Naive => "naive",
            Variant::Veff => "veff",
        })
    }
}

/// Whether a stationary point is a true extremum in `Ω` or only a turning
/// point (vanishing second derivative).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Criticality {
    Extremum,
    TurningPoint,
}

/// One stationary point found by the optimizer.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Candidate {
    pub omega_var: f64,
    /// Background `y` with `X = −i y`; absent for the plain variant.
    pub y: Option<f64>,
    pub b0: f64,
    pub criticality: Criticality,
    /// Second derivative in `Ω` at an extremum, third at a turning point.
    pub curvature: f64,
}

/// Result of one PMS optimization.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VptSolution {
    pub variant: Variant,
    #[serde(rename = "N")]
    pub order: usize,
    pub omega_var: f64,
    pub y: Option<f64>,
    pub b0: f64,
    pub criticality: Criticality,
    /// Absolute values of the stationarity conditions at the solution.
    pub residuals: Vec<f64>,
    pub candidates: Vec<Candidate>,
}

impl VptSolution {
    pub fn relative_deviation(&self) -> f64 {
        (self.b0 - B0_REFERENCE).abs() / B0_REFERENCE
    }
}
