//! Response of the von Neumann parameters (κ, U) to a real shift Q of the
//! impedance, for all three families, with cancellation-safe radicals.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::herglotz::ImpedanceFunction;
use crate::{DEFAULT_TOLERANCE, KAPPA_CLAMP};

/// von Neumann parameters: κ of the main operator and the unimodular U of
/// the quasi-kernel.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VonNeumannPair {
    pub kappa: f64,
    pub u: Complex64,
}

/// Intermediate quantities of the κ(Q) quotient formulas:
/// `b = Q² + a² − 1`, `z = 4aQ²`, and `x`, `y` the squared radical bases.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct XyzDecomposition {
    pub x: f64,
    pub y: f64,
    pub z: f64,
    pub a: f64,
    pub b: f64,
}

/// `b − √(b² + 4q²)`, rewritten as `−4q²/(b + √…)` when `b > 0` so the
/// difference never cancels.
fn diff_radical(b: f64, q: f64) -> f64 {
    let r = (b * b + 4.0 * q * q).sqrt();
    if b > 0.0 {
        -4.0 * q * q / (b + r)
    } else {
        b - r
    }
}

/// `√(b² + 4q²) − b`, stable for either sign of `b`.
fn radical_minus_b(b: f64, q: f64) -> f64 {
    -diff_radical(b, q)
}

fn check_q(q: f64) -> Result<()> {
    if q == 0.0 {
        return Err(Error::ZeroQ);
    }
    Ok(())
}

/// X/Y/Z decomposition for the family with `0 < a < 1`:
/// `x = (b − 2q² − √(b²+4q²))²`, `y = a(b − √(b²+4q²))²`, `z = 4aq²`.
pub fn xyz_mkappa(a: f64, q: f64) -> Result<XyzDecomposition> {
    if !a.is_finite() || a <= 0.0 || a >= 1.0 {
        return Err(Error::InvalidA { a });
    }
    check_q(q)?;
    let b = q * q + a * a - 1.0;
    let b_minus_r = diff_radical(b, q);
    // Both contributions to the x base are nonpositive, so the sum is safe.
    let x_base = b_minus_r - 2.0 * q * q;
    Ok(XyzDecomposition {
        x: x_base * x_base,
        y: a * b_minus_r * b_minus_r,
        z: 4.0 * a * q * q,
        a,
        b,
    })
}

/// X/Y/Z decomposition for the family with `a > 1`:
/// `x = (b − 2q² + √(b²+4q²))²`, `y = a(b + √(b²+4q²))²`, `z = 4aq²`.
/// Here `b > 0`, so the y base is a plain sum, and the x base is evaluated as
/// `4a²q² / ((√(b²+4q²) − b) + 2q²)` whose denominator has no cancellation.
pub fn xyz_mkappa_inv(a: f64, q: f64) -> Result<XyzDecomposition> {
    if !a.is_finite() || a <= 1.0 {
        return Err(Error::InvalidA { a });
    }
    check_q(q)?;
    let b = q * q + a * a - 1.0;
    let r = (b * b + 4.0 * q * q).sqrt();
    let x_base = 4.0 * a * a * q * q / (radical_minus_b(b, q) + 2.0 * q * q);
    let y_base = b + r;
    Ok(XyzDecomposition {
        x: x_base * x_base,
        y: a * y_base * y_base,
        z: 4.0 * a * q * q,
        a,
        b,
    })
}

fn clamp_kappa(kappa: f64) -> Result<f64> {
    if kappa >= 0.0 {
        Ok(kappa)
    } else if kappa >= -KAPPA_CLAMP {
        Ok(0.0)
    } else {
        Err(Error::NumericalInstability { kappa })
    }
}

/// Numerator and denominator of κ(Q) for `0 < a < 1`, shared with the
/// entropy module so the logarithmic form uses the same fraction.
pub(crate) fn kappa_fraction_mkappa(a: f64, q: f64) -> Result<(f64, f64)> {
    let d = xyz_mkappa(a, q)?;
    Ok((
        d.x - d.y + (a - 1.0) * d.z,
        d.x + d.y + (a + 1.0) * d.z,
    ))
}

/// Numerator and denominator of κ(Q) for `a > 1`.
pub(crate) fn kappa_fraction_mkappa_inv(a: f64, q: f64) -> Result<(f64, f64)> {
    let d = xyz_mkappa_inv(a, q)?;
    Ok((
        d.y - d.x - (a - 1.0) * d.z,
        d.x + d.y + (a + 1.0) * d.z,
    ))
}

/// κ(Q) = (X − Y + (a−1)Z)/(X + Y + (a+1)Z) for the family with `0 < a < 1`.
pub fn kappa_mkappa(a: f64, q: f64) -> Result<f64> {
    let (num, den) = kappa_fraction_mkappa(a, q)?;
    clamp_kappa(num / den)
}

/// κ(Q) = (Y − X − (a−1)Z)/(X + Y + (a+1)Z) for the family with `a > 1`.
pub fn kappa_mkappa_inv(a: f64, q: f64) -> Result<f64> {
    let (num, den) = kappa_fraction_mkappa_inv(a, q)?;
    clamp_kappa(num / den)
}

/// Class-M response: κ(Q) = |Q|/√(Q²+4) and
/// U(Q) = (Q/|Q|)(−Q + 2i)/√(Q²+4).
pub fn perturb_class_m(q: f64) -> Result<VonNeumannPair> {
    check_q(q)?;
    let root = (q * q + 4.0).sqrt();
    Ok(VonNeumannPair {
        kappa: q.abs() / root,
        u: (q.signum() / root) * Complex64::new(-q, 2.0),
    })
}

/// Q → 0 limit for class M: the unperturbed parameters (κ, U) = (0, −1).
pub fn class_m_limit() -> VonNeumannPair {
    VonNeumannPair {
        kappa: 0.0,
        u: Complex64::new(-1.0, 0.0),
    }
}

/// Q → 0 limit for `0 < a < 1`: κ₀ = (1−a)/(1+a), U = −1.
pub fn mkappa_limit(a: f64) -> Result<VonNeumannPair> {
    if !a.is_finite() || a <= 0.0 || a >= 1.0 {
        return Err(Error::InvalidA { a });
    }
    Ok(VonNeumannPair {
        kappa: (1.0 - a) / (1.0 + a),
        u: Complex64::new(-1.0, 0.0),
    })
}

/// Q → 0 limit for `a > 1`: κ₀ = (a−1)/(1+a), U = +1.
pub fn mkappa_inv_limit(a: f64) -> Result<VonNeumannPair> {
    if !a.is_finite() || a <= 1.0 {
        return Err(Error::InvalidA { a });
    }
    Ok(VonNeumannPair {
        kappa: (a - 1.0) / (1.0 + a),
        u: Complex64::new(1.0, 0.0),
    })
}

/// dκ/dQ = 4/(Q²+4)^{3/2} for class M, stated on Q > 0; tends to 1/2 as
/// Q → 0⁺.
pub fn kappa_slope_class_m(q: f64) -> Result<f64> {
    if !q.is_finite() || q <= 0.0 {
        return Err(Error::NonPositiveQ { q });
    }
    let t = q * q + 4.0;
    Ok(4.0 / (t * t.sqrt()))
}

/// U(Q) = [(a + Qi)(1 − κ(Q)²) − 1 − κ(Q)²] / (2κ(Q)) with the
/// family-appropriate normalization constant. The result must be unimodular;
/// a deviation beyond tolerance is reported, not corrected.
pub fn u_of_q(a: f64, q: f64, kappa_q: f64) -> Result<Complex64> {
    if kappa_q == 0.0 {
        return Err(Error::ZeroKappa);
    }
    if !kappa_q.is_finite() || !(0.0..1.0).contains(&kappa_q) {
        return Err(Error::InvalidKappa { kappa: kappa_q });
    }
    let kappa_sq = kappa_q * kappa_q;
    let u = (Complex64::new(a, q) * (1.0 - kappa_sq) - (1.0 + kappa_sq)) / (2.0 * kappa_q);
    let modulus = u.norm();
    if (modulus - 1.0).abs() > DEFAULT_TOLERANCE {
        return Err(Error::NonUnimodular { modulus });
    }
    Ok(u)
}

/// Adds a real constant to the shift; the measure is untouched.
pub fn shift_impedance(v: &ImpedanceFunction, q: f64) -> ImpedanceFunction {
    ImpedanceFunction::from_valid_parts(v.shift() + q, v.masses().to_vec())
}
