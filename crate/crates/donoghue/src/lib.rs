//! Invariants of perturbed conservative L-systems.
//!
//! The library works with impedance functions
//! `V(z) = Q + Σ_j m_j (1/(λ_j − z) − λ_j/(1 + λ_j²))`
//! built from finite point-mass measures, classifies them into the three
//! Donoghue families by the normalization constant `a = Σ_j m_j/(1 + λ_j²)`,
//! and computes how the von Neumann parameters `(κ, U)`, the c-entropy
//! `S = −ln κ` and the dissipation coefficient `D = 1 − e^{−2S}` respond to a
//! real shift `Q` of the impedance.
//!
//! Two independent computation routes are provided and cross-checked:
//! closed-form quotients in the X/Y/Z decomposition ([`perturbation`],
//! [`entropy`]) and a transfer-function oracle that reads the same invariants
//! off `|W(−i)|` of a constant impedance ([`transfer`]). The [`channel`]
//! module carries the coefficient calculus for the rank-one coupling that
//! realizes a prescribed `(κ, U)` pair in a model system.

pub mod channel;
pub mod classify;
pub mod entropy;
pub mod error;
pub mod herglotz;
pub mod perturbation;
pub mod transfer;

pub use channel::{ChiCoefficients, CouplingCoefficient, USign};
pub use classify::{DonoghueClass, Family};
pub use entropy::{DissipationCoefficient, Entropy};
pub use error::{Error, Result};
pub use herglotz::{ImpedanceFunction, MatrixModel, PointMass, TransferValue};
pub use perturbation::{VonNeumannPair, XyzDecomposition};
pub use transfer::ConstantImpedance;

/// Default absolute tolerance for numeric comparisons and input validation.
pub const DEFAULT_TOLERANCE: f64 = 1e-10;

/// Guard radius around point masses and Cayley singularities.
pub const SINGULARITY_GUARD: f64 = 1e-12;

/// Tie-break width for classification decisions (a near 1, Q near 0).
pub const CLASSIFY_TOLERANCE: f64 = 1e-12;

/// Width of the roundoff clamp applied to κ values marginally below zero.
pub const KAPPA_CLAMP: f64 = 1e-13;
