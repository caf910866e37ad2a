//! Compatibility of the CLF and CBF constraints and the blended
//! safe-stabilizing laws `k_l`, `k_m` and `k_{m,eta}`.
//!
//! When `b0` and `b1` have opposite signs, index `i` denotes the constraint
//! with `b_i > 0` (an upper bound `u < -a_i/b_i`) and `j` the one with
//! `b_j < 0` (a lower bound `u > -a_j/b_j`). The constraints are compatible
//! iff `-a_j/b_j < -a_i/b_i`.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::feasibility::{root, snap_inside};
use crate::formulas::FormulaKind;
use crate::plant::LieData;

/// Nondecreasing sigmoid `lambda: R -> (0, 1)` weighting the two endpoints of `k_l`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum LambdaKind {
    /// `1 / (1 + e^{-z})`
    #[default]
    Logistic,
    /// `(1 + tanh z) / 2`
    Tanh,
    /// `(z + sqrt(1 + z²)) / (2 sqrt(1 + z²))`
    Algebraic,
}

impl LambdaKind {
    pub fn name(self) -> &'static str {
        match self {
            LambdaKind::Logistic => "logistic",
            LambdaKind::Tanh => "tanh",
            LambdaKind::Algebraic => "algebraic",
        }
    }
}

impl fmt::Display for LambdaKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for LambdaKind {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "logistic" => Ok(LambdaKind::Logistic),
            "tanh" => Ok(LambdaKind::Tanh),
            "algebraic" => Ok(LambdaKind::Algebraic),
            other => Err(format!(
                "unknown lambda `{other}` (expected logistic|tanh|algebraic)"
            )),
        }
    }
}

fn logistic(z: f64) -> f64 {
    if z >= 0.0 {
        1.0 / (1.0 + (-z).exp())
    } else {
        let e = z.exp();
        e / (1.0 + e)
    }
}

/// Evaluates `lambda(z)`. All three kinds satisfy `lambda(-z) = 1 - lambda(z)`,
/// which [`k_l`] uses to get an accurate complement. A NaN argument (which
/// only arises as `inf - inf`, both bounds escaping) maps to 1/2.
pub fn lambda_eval(kind: LambdaKind, z: f64) -> f64 {
    if z.is_nan() {
        return 0.5;
    }
    if z.is_infinite() {
        return if z > 0.0 { 1.0 } else { 0.0 };
    }
    match kind {
        LambdaKind::Logistic => logistic(z),
        // (1 + tanh z) / 2 == 1 / (1 + e^{-2z})
        LambdaKind::Tanh => logistic(2.0 * z),
        LambdaKind::Algebraic => {
            let s = z.hypot(1.0);
            if z >= 0.0 {
                0.5 + 0.5 * (z / s)
            } else {
                // z + s = 1 / (s - z)
                0.5 / (s * (s - z))
            }
        }
    }
}

/// Formula, sigmoid and convex weight used by the blended laws.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BlendConfig {
    pub formula: FormulaKind,
    pub lambda: LambdaKind,
    /// Weight of `-a_j/b_j` in the `k_m` anchor, in `(0, 1)`.
    pub eta: f64,
}

impl Default for BlendConfig {
    fn default() -> Self {
        BlendConfig {
            formula: FormulaKind::Sontag,
            lambda: LambdaKind::Logistic,
            eta: 0.5,
        }
    }
}

impl BlendConfig {
    pub fn new(formula: FormulaKind, lambda: LambdaKind, eta: f64) -> Result<Self> {
        if !(eta > 0.0 && eta < 1.0) {
            return Err(Error::Parameter(format!("eta must lie in (0, 1), got {eta}")));
        }
        Ok(BlendConfig {
            formula,
            lambda,
            eta,
        })
    }
}

/// Indices of the positive (`i`) and negative (`j`) input coefficients.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct IndexSplit {
    pub i: usize,
    pub j: usize,
}

pub fn split_indices(d: &LieData) -> Result<IndexSplit> {
    if d.b0 > 0.0 && d.b1 < 0.0 {
        Ok(IndexSplit { i: 0, j: 1 })
    } else if d.b0 < 0.0 && d.b1 > 0.0 {
        Ok(IndexSplit { i: 1, j: 0 })
    } else {
        Err(Error::Domain(format!(
            "b0 = {} and b1 = {} are not of strictly opposite sign",
            d.b0, d.b1
        )))
    }
}

/// `Delta = -a0/b0 - a1/b1`.
pub fn delta(d: &LieData) -> Result<f64> {
    if d.b0 == 0.0 || d.b1 == 0.0 {
        return Err(Error::Domain("Delta needs b0 != 0 and b1 != 0".into()));
    }
    Ok(root(d.a0, d.b0) + root(d.a1, d.b1))
}

/// Whether some `u` satisfies both constraints, assuming the zero-`b`
/// implications of a valid CLF/CBF pair.
pub fn compatible(d: &LieData) -> bool {
    match split_indices(d) {
        Ok(IndexSplit { i, j }) => root(d.a(j), d.b(j)) < root(d.a(i), d.b(i)),
        Err(_) => true,
    }
}

/// Shared same-sign / zero branch of `k_l` and `k_m`; `None` in the mixed case.
fn same_sign_law(d: &LieData, formula: FormulaKind) -> Option<f64> {
    if d.b0 == 0.0 && d.b1 == 0.0 {
        return Some(0.0);
    }
    let phi0 = formula.apply(d.a0, d.b0);
    let phi1 = formula.apply(d.a1, d.b1);
    if d.b0 >= 0.0 && d.b1 >= 0.0 {
        Some(snap_inside(d, phi0.min(phi1)))
    } else if d.b0 <= 0.0 && d.b1 <= 0.0 {
        Some(snap_inside(d, phi0.max(phi1)))
    } else {
        None
    }
}

/// Mixed-sign ingredients: `(phi_i, phi_j, lower = -a_j/b_j, upper = -a_i/b_i)`.
struct MixedParts {
    phi_i: f64,
    phi_j: f64,
    lower: f64,
    upper: f64,
}

fn mixed_parts(d: &LieData, formula: FormulaKind) -> Result<MixedParts> {
    let IndexSplit { i, j } = split_indices(d)?;
    let lower = root(d.a(j), d.b(j));
    let upper = root(d.a(i), d.b(i));
    if !(lower < upper) {
        return Err(Error::Domain(format!(
            "incompatible constraints: -a_j/b_j = {lower} is not below -a_i/b_i = {upper}"
        )));
    }
    Ok(MixedParts {
        phi_i: formula.apply(d.a(i), d.b(i)),
        phi_j: formula.apply(d.a(j), d.b(j)),
        lower,
        upper,
    })
}

/// `k_l`: in the mixed-sign case the `lambda(Delta)`-weighted combination of
/// `max{phi_i, -a_j/b_j}` and `min{phi_j, -a_i/b_i}`.
///
/// Fails with [`Error::Domain`] on mixed-sign incompatible data.
pub fn k_l(d: &LieData, cfg: &BlendConfig) -> Result<f64> {
    if let Some(u) = same_sign_law(d, cfg.formula) {
        return Ok(u);
    }
    let p = mixed_parts(d, cfg.formula)?;
    let z = p.upper + p.lower;
    let w = lambda_eval(cfg.lambda, z);
    let w_bar = lambda_eval(cfg.lambda, -z);
    let left = p.phi_i.max(p.lower);
    let right = p.phi_j.min(p.upper);
    Ok(snap_inside(d, w_bar * left + w * right))
}

/// `k_{m,eta}`: clamps the anchor `(1-eta)(-a_i/b_i) + eta(-a_j/b_j)` between
/// `phi_i` and `phi_j`. `eta = 1/2` is the `Delta/2` midpoint law `k_m`.
pub fn k_m(d: &LieData, cfg: &BlendConfig) -> Result<f64> {
    if let Some(u) = same_sign_law(d, cfg.formula) {
        return Ok(u);
    }
    let p = mixed_parts(d, cfg.formula)?;
    let anchor = (1.0 - cfg.eta) * p.upper + cfg.eta * p.lower;
    Ok(snap_inside(d, p.phi_j.min(p.phi_i.max(anchor))))
}

/// The `max{phi_i, min{phi_j, anchor}}` ordering of [`k_m`]; identical to it
/// whenever `phi_i < phi_j`, which holds for compatible mixed-sign data.
pub fn k_m_symmetric(d: &LieData, cfg: &BlendConfig) -> Result<f64> {
    if let Some(u) = same_sign_law(d, cfg.formula) {
        return Ok(u);
    }
    let p = mixed_parts(d, cfg.formula)?;
    let anchor = (1.0 - cfg.eta) * p.upper + cfg.eta * p.lower;
    Ok(snap_inside(d, p.phi_i.max(p.phi_j.min(anchor))))
}
