//! c-entropy S(Q) and dissipation coefficient D(Q) for the three families,
//! the bridges S ↔ κ and D = 1 − e^{−2S}, and the unperturbed limits.

use std::fmt;

use crate::error::{Error, Result};
use crate::perturbation::{
    kappa_fraction_mkappa, kappa_fraction_mkappa_inv, xyz_mkappa, xyz_mkappa_inv,
};
use crate::{CLASSIFY_TOLERANCE, KAPPA_CLAMP};

/// Extended nonnegative real: the c-entropy `S = −ln κ`, infinite exactly
/// when κ = 0.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Entropy {
    Finite(f64),
    Infinite,
}

impl Entropy {
    pub fn is_infinite(self) -> bool {
        matches!(self, Entropy::Infinite)
    }

    /// IEEE view of the value; `Infinite` maps to `f64::INFINITY`.
    pub fn to_f64(self) -> f64 {
        match self {
            Entropy::Finite(s) => s,
            Entropy::Infinite => f64::INFINITY,
        }
    }
}

impl fmt::Display for Entropy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Entropy::Finite(s) => write!(f, "{s}"),
            Entropy::Infinite => f.write_str("inf"),
        }
    }
}

/// Dissipation coefficient `D = 1 − e^{−2S} ∈ [0, 1]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DissipationCoefficient {
    pub value: f64,
}

/// `S = −ln κ` with κ ∈ [0, 1); κ = 0 gives the infinite entropy.
pub fn entropy_from_kappa(kappa: f64) -> Result<Entropy> {
    if !kappa.is_finite() || !(0.0..1.0).contains(&kappa) {
        return Err(Error::InvalidKappa { kappa });
    }
    if kappa == 0.0 {
        Ok(Entropy::Infinite)
    } else {
        Ok(Entropy::Finite(-kappa.ln()))
    }
}

/// `D = 1 − e^{−2S}`; total, with the infinite entropy mapping to D = 1.
pub fn dissipation_from_entropy(s: Entropy) -> DissipationCoefficient {
    match s {
        Entropy::Infinite => DissipationCoefficient { value: 1.0 },
        Entropy::Finite(s) => DissipationCoefficient {
            value: 1.0 - (-2.0 * s).exp(),
        },
    }
}

/// Class M: `S(Q) = ½ln(Q² + 4) − ln|Q|` for Q ≠ 0.
pub fn entropy_class_m_q(q: f64) -> Result<Entropy> {
    if q == 0.0 {
        return Err(Error::ZeroQ);
    }
    Ok(Entropy::Finite(0.5 * (q * q + 4.0).ln() - q.abs().ln()))
}

/// Q → 0 limit for class M: the entropy is infinite.
pub fn class_m_entropy_limit() -> Entropy {
    Entropy::Infinite
}

/// Class M: `D(Q) = 4/(Q² + 4)`, well defined for every Q including 0.
pub fn dissipation_class_m_q(q: f64) -> DissipationCoefficient {
    DissipationCoefficient {
        value: 4.0 / (q * q + 4.0),
    }
}

fn finite_entropy(s0: Entropy) -> Result<f64> {
    match s0 {
        Entropy::Infinite => Err(Error::InfiniteEntropy),
        Entropy::Finite(s) => Ok(s),
    }
}

/// Normalization constant of the `0 < a < 1` family with unperturbed entropy
/// `s0`: `a = tanh(s0/2)`.
pub fn a_from_entropy_mkappa(s0: Entropy) -> Result<f64> {
    Ok((0.5 * finite_entropy(s0)?).tanh())
}

/// Normalization constant of the `a > 1` family: `a = coth(s0/2)`.
pub fn a_from_entropy_mkappa_inv(s0: Entropy) -> Result<f64> {
    Ok(1.0 / (0.5 * finite_entropy(s0)?).tanh())
}

/// ln(den/num) of the κ fraction, with the same roundoff clamp policy as κ:
/// a numerator within the clamp of zero means κ = 0, hence infinite entropy.
fn entropy_from_fraction(num: f64, den: f64) -> Result<Entropy> {
    if num > 0.0 {
        Ok(Entropy::Finite((den / num).ln()))
    } else if num >= -KAPPA_CLAMP * den {
        Ok(Entropy::Infinite)
    } else {
        Err(Error::NumericalInstability { kappa: num / den })
    }
}

/// `S(Q) = ln[(X + Y + (a+1)Z)/(X − Y + (a−1)Z)]` for the `0 < a < 1` family
/// with unperturbed entropy `s0`.
pub fn entropy_mkappa_q(s0: Entropy, q: f64) -> Result<Entropy> {
    let a = a_from_entropy_mkappa(s0)?;
    let (num, den) = kappa_fraction_mkappa(a, q)?;
    entropy_from_fraction(num, den)
}

/// `S(Q) = ln[(X + Y + (a+1)Z)/(Y − X − (a−1)Z)]` for the `a > 1` family.
pub fn entropy_mkappa_inv_q(s0: Entropy, q: f64) -> Result<Entropy> {
    let a = a_from_entropy_mkappa_inv(s0)?;
    let (num, den) = kappa_fraction_mkappa_inv(a, q)?;
    entropy_from_fraction(num, den)
}

/// `D(Q) = 4(Y + Z)(X + aZ)/(X + Y + (a+1)Z)²` for the `0 < a < 1` family.
pub fn dissipation_mkappa_q(s0: Entropy, q: f64) -> Result<DissipationCoefficient> {
    let a = a_from_entropy_mkappa(s0)?;
    let d = xyz_mkappa(a, q)?;
    let den = d.x + d.y + (a + 1.0) * d.z;
    Ok(DissipationCoefficient {
        value: 4.0 * (d.y + d.z) * (d.x + a * d.z) / (den * den),
    })
}

/// `D(Q) = 4(X + aZ)(Y + Z)/(X + Y + (a+1)Z)²` for the `a > 1` family.
/// This is the factorization of `den² − num²` for the κ fraction of that
/// family, so `D = 1 − κ²` holds identically.
pub fn dissipation_mkappa_inv_q(s0: Entropy, q: f64) -> Result<DissipationCoefficient> {
    let a = a_from_entropy_mkappa_inv(s0)?;
    let d = xyz_mkappa_inv(a, q)?;
    let den = d.x + d.y + (a + 1.0) * d.z;
    Ok(DissipationCoefficient {
        value: 4.0 * (d.x + a * d.z) * (d.y + d.z) / (den * den),
    })
}

/// Unperturbed invariants of the family determined by `a`:
/// `S(0) = ln(1+a) − ln|1−a|` and `D(0) = 4a/(1+a)²`. Undefined at a = 1,
/// where the entropy is infinite (class M territory).
pub fn unperturbed_limits(a: f64) -> Result<(Entropy, DissipationCoefficient)> {
    if !a.is_finite() || a <= 0.0 || (a - 1.0).abs() <= CLASSIFY_TOLERANCE {
        return Err(Error::InvalidA { a });
    }
    let s = (1.0 + a).ln() - (1.0 - a).abs().ln();
    Ok((
        Entropy::Finite(s),
        DissipationCoefficient {
            value: 4.0 * a / ((1.0 + a) * (1.0 + a)),
        },
    ))
}
