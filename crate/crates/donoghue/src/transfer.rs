//! Independent verification route: κ, S and D read off the transfer value
//! W(−i) of a constant impedance V(z) = Q + a·i, bypassing the quotient
//! formulas entirely.

use num_complex::Complex64;

use crate::entropy::Entropy;
use crate::error::{Error, Result};
use crate::herglotz::TransferValue;

/// Constant impedance `V(z) = Q + a·i` on the upper half-plane, the
/// normal-form representative of a (possibly shifted) Donoghue class.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConstantImpedance {
    pub a: f64,
    pub q: f64,
}

impl ConstantImpedance {
    pub fn new(a: f64, q: f64) -> Result<Self> {
        if !a.is_finite() || a <= 0.0 {
            return Err(Error::InvalidA { a });
        }
        Ok(Self { a, q })
    }
}

/// `W(−i) = (1 − a − iQ)/(1 + a + iQ)`, the Cayley image of
/// `V(−i) = Q − a·i`.
pub fn transfer_at_minus_i(c: ConstantImpedance) -> TransferValue {
    TransferValue {
        value: Complex64::new(1.0 - c.a, -c.q) / Complex64::new(1.0 + c.a, c.q),
    }
}

/// `κ = |W(−i)| = √(((1−a)² + Q²)/((1+a)² + Q²))`, evaluated as a quotient
/// of hypotenuses.
pub fn kappa_oracle(a: f64, q: f64) -> Result<f64> {
    let c = ConstantImpedance::new(a, q)?;
    Ok((1.0 - c.a).hypot(c.q) / (1.0 + c.a).hypot(c.q))
}

/// `S = −ln κ`; infinite exactly at the degenerate point (a, Q) = (1, 0).
pub fn entropy_oracle(a: f64, q: f64) -> Result<Entropy> {
    let kappa = kappa_oracle(a, q)?;
    if kappa == 0.0 {
        Ok(Entropy::Infinite)
    } else {
        Ok(Entropy::Finite(-kappa.ln()))
    }
}

/// `|W(i)·conj(W(−i)) − 1|`, the reciprocity defect of the transfer function
/// across the real axis. Returns `None` at the degenerate point (1, 0) where
/// W(−i) = 0 and W(i) is unbounded.
pub fn reciprocity_check(c: ConstantImpedance) -> Option<f64> {
    if c.a == 1.0 && c.q == 0.0 {
        return None;
    }
    let w_minus = transfer_at_minus_i(c).value;
    let w_plus = Complex64::new(1.0 + c.a, -c.q) / Complex64::new(1.0 - c.a, c.q);
    Some((w_plus * w_minus.conj() - 1.0).norm())
}
