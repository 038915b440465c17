pub mod algebra;
pub mod bender_wu;
pub mod cli;
pub mod convergence;
pub mod effective_potential;
pub mod error;
pub mod verification;
pub mod vpt;
