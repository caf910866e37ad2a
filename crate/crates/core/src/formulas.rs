//! Universal formulas mapping a scalar constraint pair `(a, b)` to an input
//! `u` with `a + b·u < 0`, plus log-sum-exp smoothing of `max`/`min`.

use std::fmt;
use std::str::FromStr;

/// Which universal formula instantiates the pair `(phi0, phi1)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum FormulaKind {
    /// Sontag's formula.
    #[default]
    Sontag,
    /// Freeman–Kokotović pointwise min-norm formula.
    Freeman,
}

impl FormulaKind {
    pub fn apply(self, a: f64, b: f64) -> f64 {
        match self {
            FormulaKind::Sontag => phi_sontag(a, b),
            FormulaKind::Freeman => phi_freeman(a, b),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            FormulaKind::Sontag => "sontag",
            FormulaKind::Freeman => "freeman",
        }
    }
}

impl fmt::Display for FormulaKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for FormulaKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "sontag" => Ok(FormulaKind::Sontag),
            "freeman" | "pmn" => Ok(FormulaKind::Freeman),
            other => Err(format!("unknown formula `{other}` (expected sontag|freeman)")),
        }
    }
}

/// Sontag's formula `-(a + sqrt(a² + b⁴)) / b`, and 0 when `b = 0`.
///
/// For `a <= 0` the numerator is rewritten as `b⁴ / (sqrt(a² + b⁴) - a)`,
/// which avoids cancellation as `b -> 0`.
pub fn phi_sontag(a: f64, b: f64) -> f64 {
    if b == 0.0 {
        return 0.0;
    }
    let b2 = b * b;
    let r = a.hypot(b2);
    if a > 0.0 {
        -(a + r) / b
    } else {
        -(b2 / (r - a)) * b
    }
}

/// Freeman's formula `-max(a + b², 0) / b`, and 0 when `b = 0`.
pub fn phi_freeman(a: f64, b: f64) -> f64 {
    if b == 0.0 {
        return 0.0;
    }
    -(a + b * b).max(0.0) / b
}

/// `eps · ln(1 + exp(s / eps))`, a smooth upper approximation of `max(s, 0)`.
pub fn smooth_max0(s: f64, eps: f64) -> f64 {
    debug_assert!(eps > 0.0);
    let z = s / eps;
    if z > 0.0 {
        s + eps * (-z).exp().ln_1p()
    } else {
        eps * z.exp().ln_1p()
    }
}

/// Smooth `max(x, y) = y + max(x - y, 0)`.
pub fn smooth_max(x: f64, y: f64, eps: f64) -> f64 {
    y + smooth_max0(x - y, eps)
}

/// Smooth `min(x, y) = y - max(y - x, 0)`.
pub fn smooth_min(x: f64, y: f64, eps: f64) -> f64 {
    y - smooth_max0(y - x, eps)
}
