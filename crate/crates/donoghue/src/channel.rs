//! Coefficient calculus of the channel vector χ in the deficiency basis
//! (φ, ψ) for the rank-one coupling that realizes a prescribed (κ, U) pair,
//! together with the two self-adjoint reference specializations U = ∓1.

use num_complex::Complex64;
use std::f64::consts::SQRT_2;

use crate::error::{Error, Result};
use crate::{DEFAULT_TOLERANCE, SINGULARITY_GUARD};

/// Coordinates of the channel vector `χ = c_φ·φ + c_ψ·ψ`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChiCoefficients {
    pub c_phi: Complex64,
    pub c_psi: Complex64,
}

impl ChiCoefficients {
    /// `‖χ‖²` under the orthonormal-basis assumption (identity Gram matrix).
    pub fn norm_sq(&self) -> f64 {
        self.c_phi.norm_sqr() + self.c_psi.norm_sqr()
    }

    /// `‖χ‖² = cᴴ G c` for a general Gram matrix `G` of the basis (φ, ψ).
    pub fn norm_sq_with_gram(&self, gram: [[Complex64; 2]; 2]) -> f64 {
        let c = [self.c_phi, self.c_psi];
        let mut acc = Complex64::new(0.0, 0.0);
        for (i, ci) in c.iter().enumerate() {
            for (j, cj) in c.iter().enumerate() {
                acc += ci.conj() * gram[i][j] * cj;
            }
        }
        acc.re
    }
}

/// Scalar multiplying `(·, κφ + ψ)χ` in the state-space operator of the
/// coupled model.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CouplingCoefficient {
    pub value: Complex64,
}

/// Sign of the unimodular reference parameter U = ∓1 that selects the
/// self-adjoint extension branch.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum USign {
    Minus,
    Plus,
}

fn check_kappa(kappa: f64) -> Result<()> {
    if !kappa.is_finite() || !(0.0..1.0).contains(&kappa) {
        return Err(Error::InvalidKappa { kappa });
    }
    Ok(())
}

fn check_unimodular(u: Complex64) -> Result<()> {
    let modulus = u.norm();
    if (modulus - 1.0).abs() > DEFAULT_TOLERANCE {
        return Err(Error::NonUnimodular { modulus });
    }
    Ok(())
}

/// Channel-vector coefficients for a general unimodular U:
/// `c_φ = (κ² + 1 + 2κU) / (√2 |1 + κU| √(1 − κ²))`,
/// `c_ψ = (κ²U + 2κ + U) / (√2 |1 + κU| √(1 − κ²))`.
pub fn chi_coefficients(kappa: f64, u: Complex64) -> Result<ChiCoefficients> {
    check_kappa(kappa)?;
    check_unimodular(u)?;
    let scale = (1.0 + kappa * u).norm();
    if scale < SINGULARITY_GUARD {
        return Err(Error::DegenerateDenominator);
    }
    let denom = SQRT_2 * scale * (1.0 - kappa * kappa).sqrt();
    Ok(ChiCoefficients {
        c_phi: (kappa * kappa + 1.0 + 2.0 * kappa * u) / denom,
        c_psi: ((kappa * kappa) * u + 2.0 * kappa + u) / denom,
    })
}

/// Specialization to U = −1: `χ₁ = t(φ − ψ)` with `t = √((1−κ)/(2+2κ))`.
pub fn chi1_coefficients(kappa: f64) -> Result<ChiCoefficients> {
    check_kappa(kappa)?;
    let t = ((1.0 - kappa) / (2.0 + 2.0 * kappa)).sqrt();
    Ok(ChiCoefficients {
        c_phi: Complex64::new(t, 0.0),
        c_psi: Complex64::new(-t, 0.0),
    })
}

/// Specialization to U = +1: `χ₂ = t(φ + ψ)` with `t = √((1+κ)/(2−2κ))`.
pub fn chi2_coefficients(kappa: f64) -> Result<ChiCoefficients> {
    check_kappa(kappa)?;
    let t = ((1.0 + kappa) / (2.0 - 2.0 * kappa)).sqrt();
    Ok(ChiCoefficients {
        c_phi: Complex64::new(t, 0.0),
        c_psi: Complex64::new(t, 0.0),
    })
}

/// Coupling scalar `√2 i (κ + conj(U)) / (|1 + κU| √(1 − κ²))`.
pub fn coupling_coefficient(kappa: f64, u: Complex64) -> Result<CouplingCoefficient> {
    check_kappa(kappa)?;
    check_unimodular(u)?;
    let scale = (1.0 + kappa * u).norm();
    if scale < SINGULARITY_GUARD {
        return Err(Error::DegenerateDenominator);
    }
    Ok(CouplingCoefficient {
        value: SQRT_2 * Complex64::i() * (kappa + u.conj())
            / (scale * (1.0 - kappa * kappa).sqrt()),
    })
}

/// Height of the imaginary part of the state-space operator:
/// `½(1−κ)/(1+κ)` for U = −1 and `½(1+κ)/(1−κ)` for U = +1. Equals `‖χ‖²/…`
/// only through the matching χ: the factor is `t²` of the corresponding
/// specialization.
pub fn im_a_factor(kappa: f64, u_sign: USign) -> Result<f64> {
    check_kappa(kappa)?;
    Ok(match u_sign {
        USign::Minus => 0.5 * (1.0 - kappa) / (1.0 + kappa),
        USign::Plus => 0.5 * (1.0 + kappa) / (1.0 - kappa),
    })
}
