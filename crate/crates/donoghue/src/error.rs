//! Error vocabulary shared by all modules.

use thiserror::Error;

#[derive(Error, Debug, Clone, PartialEq)]
pub enum Error {
    #[error("evaluation point lies within the guard radius of the point mass at {location}")]
    PoleHit { location: f64 },

    #[error("impedance function carries no point masses")]
    DegenerateMeasure,

    #[error("Cayley transform is singular at this value")]
    SingularCayley,

    #[error("amplitude vector is not normalized: sum of |c_j|^2 = {norm_sq}")]
    NotNormalized { norm_sq: f64 },

    #[error("matrix model has {eigenvalues} eigenvalues but {amplitudes} amplitudes")]
    DimensionMismatch { eigenvalues: usize, amplitudes: usize },

    #[error("point mass at {location} must have a finite location and a strictly positive finite mass (got {mass})")]
    InvalidPointMass { location: f64, mass: f64 },

    #[error("shift must be a finite real number (got {shift})")]
    InvalidShift { shift: f64 },

    #[error("normalization constant a = {a} is outside the admissible range for this operation")]
    InvalidA { a: f64 },

    #[error("von Neumann parameter kappa = {kappa} is outside the admissible range")]
    InvalidKappa { kappa: f64 },

    #[error("Q = 0 is excluded from the perturbation formulas; use the limit accessors")]
    ZeroQ,

    #[error("slope formula is stated for Q > 0 (got {q})")]
    NonPositiveQ { q: f64 },

    #[error("kappa = 0 has no finite parameter U; use the unperturbed-class branch")]
    ZeroKappa,

    #[error("c-entropy is infinite; the requested quantity has no finite-entropy form")]
    InfiniteEntropy,

    #[error("computed kappa = {kappa} fell below zero beyond the roundoff clamp")]
    NumericalInstability { kappa: f64 },

    #[error("1 + kappa*U is numerically zero; channel coefficients are undefined")]
    DegenerateDenominator,

    #[error("parameter U has modulus {modulus}, expected a unimodular value")]
    NonUnimodular { modulus: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;
