//! Donoghue-family classification driven by the normalization constant
//! `a = Σ_j m_j/(1 + λ_j²)` and the shift `Q`.

use crate::error::{Error, Result};
use crate::herglotz::ImpedanceFunction;
use crate::CLASSIFY_TOLERANCE;

/// The three families: `M` (a = 1), `MKappa` (a < 1), `MKappaInv` (a > 1).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    M,
    MKappa,
    MKappaInv,
}

impl std::fmt::Display for Family {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Family::M => "M",
            Family::MKappa => "MKappa",
            Family::MKappaInv => "MKappaInv",
        })
    }
}

/// Classification record. `kappa` is the von Neumann parameter of the
/// unperturbed representative; the function is perturbed exactly when the
/// shift is nonzero (within the tie-break width).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DonoghueClass {
    pub family: Family,
    pub kappa: f64,
    pub shift: f64,
    pub a: f64,
}

impl DonoghueClass {
    pub fn is_perturbed(&self) -> bool {
        self.shift.abs() > CLASSIFY_TOLERANCE
    }
}

/// `a = Σ_j m_j/(1 + λ_j²)`; strictly positive for a nonempty measure.
pub fn normalization_a(v: &ImpedanceFunction) -> Result<f64> {
    if v.masses().is_empty() {
        return Err(Error::DegenerateMeasure);
    }
    Ok(v.masses()
        .iter()
        .map(|pm| pm.mass / (1.0 + pm.location * pm.location))
        .sum())
}

/// Family and unperturbed κ from the normalization constant. Values of `a`
/// within the tie-break width of 1 classify as family `M` with κ = 0.
pub fn kappa_from_a(a: f64) -> Result<(Family, f64)> {
    if !a.is_finite() || a <= 0.0 {
        return Err(Error::InvalidA { a });
    }
    if (a - 1.0).abs() <= CLASSIFY_TOLERANCE {
        Ok((Family::M, 0.0))
    } else if a < 1.0 {
        Ok((Family::MKappa, (1.0 - a) / (1.0 + a)))
    } else {
        Ok((Family::MKappaInv, (a - 1.0) / (1.0 + a)))
    }
}

/// Inverse of [`kappa_from_a`] on each family branch. Family `M` admits only
/// κ = 0.
pub fn a_from_kappa(family: Family, kappa: f64) -> Result<f64> {
    if !kappa.is_finite() || !(0.0..1.0).contains(&kappa) {
        return Err(Error::InvalidKappa { kappa });
    }
    match family {
        Family::M => {
            if kappa != 0.0 {
                return Err(Error::InvalidKappa { kappa });
            }
            Ok(1.0)
        }
        Family::MKappa => Ok((1.0 - kappa) / (1.0 + kappa)),
        Family::MKappaInv => Ok((1.0 + kappa) / (1.0 - kappa)),
    }
}

/// Full classification of an impedance function. When the tie-break assigns
/// family `M`, the stored `a` is snapped to exactly 1.
pub fn classify(v: &ImpedanceFunction) -> Result<DonoghueClass> {
    let a = normalization_a(v)?;
    let (family, kappa) = kappa_from_a(a)?;
    let a = if family == Family::M { 1.0 } else { a };
    Ok(DonoghueClass {
        family,
        kappa,
        shift: v.shift(),
        a,
    })
}
