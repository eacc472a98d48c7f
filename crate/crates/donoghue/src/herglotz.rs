//! Impedance functions with finite point-mass measures, the Cayley bridge
//! between impedance and transfer values, and class-M functions generated
//! from finite matrix models.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::{DEFAULT_TOLERANCE, SINGULARITY_GUARD};

/// One point mass of the spectral measure.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PointMass {
    pub location: f64,
    pub mass: f64,
}

/// `V(z) = Q + Σ_j m_j (1/(λ_j − z) − λ_j/(1 + λ_j²))` for a real shift `Q`
/// and finitely many point masses `m_j > 0` at real `λ_j`.
#[derive(Debug, Clone, PartialEq)]
pub struct ImpedanceFunction {
    shift: f64,
    masses: Vec<PointMass>,
}

impl ImpedanceFunction {
    pub fn new(shift: f64, masses: Vec<PointMass>) -> Result<Self> {
        if !shift.is_finite() {
            return Err(Error::InvalidShift { shift });
        }
        for pm in &masses {
            if !pm.location.is_finite() || !pm.mass.is_finite() || pm.mass <= 0.0 {
                return Err(Error::InvalidPointMass {
                    location: pm.location,
                    mass: pm.mass,
                });
            }
        }
        Ok(Self { shift, masses })
    }

    /// Convenience constructor from `(location, mass)` pairs.
    pub fn from_pairs(shift: f64, pairs: &[(f64, f64)]) -> Result<Self> {
        Self::new(
            shift,
            pairs
                .iter()
                .map(|&(location, mass)| PointMass { location, mass })
                .collect(),
        )
    }

    /// Bypasses validation; parts must already satisfy the invariants.
    pub(crate) fn from_valid_parts(shift: f64, masses: Vec<PointMass>) -> Self {
        Self { shift, masses }
    }

    pub fn shift(&self) -> f64 {
        self.shift
    }

    pub fn masses(&self) -> &[PointMass] {
        &self.masses
    }
}

/// Value of a transfer function on the unit-disk side of the Cayley bridge.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TransferValue {
    pub value: Complex64,
}

/// Evaluates `V(z)`. Points in the lower half-plane are routed through the
/// reflection `V(z) = conj(V(conj z))`, so the symmetry holds bit for bit.
pub fn eval_impedance(v: &ImpedanceFunction, z: Complex64) -> Result<Complex64> {
    if z.im < 0.0 {
        return eval_impedance(v, z.conj()).map(|w| w.conj());
    }
    let mut acc = Complex64::new(v.shift, 0.0);
    for pm in &v.masses {
        let d = Complex64::new(pm.location, 0.0) - z;
        if d.norm() < SINGULARITY_GUARD {
            return Err(Error::PoleHit {
                location: pm.location,
            });
        }
        let centering = pm.location / (1.0 + pm.location * pm.location);
        acc += pm.mass * (d.inv() - centering);
    }
    Ok(acc)
}

/// `W = (1 − iV)/(1 + iV)`, the impedance-to-transfer direction of the bridge.
pub fn cayley_v_to_w(v_value: Complex64) -> Result<TransferValue> {
    let i = Complex64::i();
    let denom = 1.0 + i * v_value;
    if denom.norm() < SINGULARITY_GUARD {
        return Err(Error::SingularCayley);
    }
    Ok(TransferValue {
        value: (1.0 - i * v_value) / denom,
    })
}

/// `V = i(W − 1)/(W + 1)`, inverse to [`cayley_v_to_w`].
pub fn cayley_w_to_v(w_value: Complex64) -> Result<Complex64> {
    let denom = w_value + 1.0;
    if denom.norm() < SINGULARITY_GUARD {
        return Err(Error::SingularCayley);
    }
    Ok(Complex64::i() * (w_value - 1.0) / denom)
}

/// A self-adjoint matrix in its eigenbasis together with the channel
/// amplitudes `c_j` of a fixed unit vector. Requires `Σ |c_j|² = 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct MatrixModel {
    eigenvalues: Vec<f64>,
    amplitudes: Vec<Complex64>,
}

impl MatrixModel {
    pub fn new(eigenvalues: Vec<f64>, amplitudes: Vec<Complex64>) -> Result<Self> {
        if eigenvalues.len() != amplitudes.len() {
            return Err(Error::DimensionMismatch {
                eigenvalues: eigenvalues.len(),
                amplitudes: amplitudes.len(),
            });
        }
        let norm_sq: f64 = amplitudes.iter().map(|c| c.norm_sqr()).sum();
        if (norm_sq - 1.0).abs() > DEFAULT_TOLERANCE {
            return Err(Error::NotNormalized { norm_sq });
        }
        Ok(Self {
            eigenvalues,
            amplitudes,
        })
    }

    pub fn eigenvalues(&self) -> &[f64] {
        &self.eigenvalues
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }
}

/// Weyl–Titchmarsh impedance of the model: shift 0 and masses
/// `m_j = |c_j|² (1 + λ_j²)` at the eigenvalues. The normalization
/// `Σ |c_j|² = 1` makes the result a class-M function with `V(i) = i`.
/// Zero-amplitude eigenvalues carry no mass and are dropped.
pub fn matrix_model_impedance(m: &MatrixModel) -> ImpedanceFunction {
    let masses = m
        .eigenvalues
        .iter()
        .zip(&m.amplitudes)
        .filter(|(_, c)| c.norm_sqr() > 0.0)
        .map(|(&location, c)| PointMass {
            location,
            mass: c.norm_sqr() * (1.0 + location * location),
        })
        .collect();
    ImpedanceFunction::from_valid_parts(0.0, masses)
}
