//! Laws for data where the CLF and CBF constraints may be incompatible.
//!
//! `k_l*` / `k_m*` give up the CLF constraint where no input satisfies both
//! and track the barrier with `F1 = 0` exactly (`u = -a1/b1`). The `#`
//! variants fade towards `phi0` near the origin with weight
//! `mu_c(x) = 1 / (1 + c|x|²)`, which restores continuity at `x = 0`.

use std::fmt;

use crate::blend::{compatible, k_l, k_m, BlendConfig};
use crate::error::{Error, Result};
use crate::feasibility::{feasible_set, root, FeasibleSet};
use crate::plant::LieData;

/// `|b1|` below this in the incompatible branch means the Lie data cannot
/// come from a valid CLF/CBF pair.
pub const B1_FLOOR: f64 = 1e-12;

/// Default sharpness of the origin weight.
pub const DEFAULT_C: f64 = 1e5;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SafetyPriorityConfig {
    pub blend: BlendConfig,
    pub c: f64,
}

impl Default for SafetyPriorityConfig {
    fn default() -> Self {
        SafetyPriorityConfig {
            blend: BlendConfig::default(),
            c: DEFAULT_C,
        }
    }
}

impl SafetyPriorityConfig {
    pub fn new(blend: BlendConfig, c: f64) -> Result<Self> {
        if !(c > 0.0 && c.is_finite()) {
            return Err(Error::Parameter(format!("c must be positive, got {c}")));
        }
        Ok(SafetyPriorityConfig { blend, c })
    }
}

/// Per-state compatibility indicator.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ModeFlag {
    Incompatible = 0,
    Compatible = 1,
}

impl ModeFlag {
    pub fn as_int(self) -> u8 {
        self as u8
    }
}

impl fmt::Display for ModeFlag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_int())
    }
}

pub fn mode(d: &LieData) -> ModeFlag {
    if d.mixed_sign() && !compatible(d) {
        ModeFlag::Incompatible
    } else {
        ModeFlag::Compatible
    }
}

fn barrier_tracking(d: &LieData) -> Result<f64> {
    if d.b1.abs() < B1_FLOOR {
        return Err(Error::Inconsistent(format!(
            "incompatible data with vanishing b1 = {}",
            d.b1
        )));
    }
    Ok(root(d.a1, d.b1))
}

/// `-a1/b1` where the constraints are incompatible, `k_l` elsewhere.
pub fn k_l_star(d: &LieData, cfg: &BlendConfig) -> Result<f64> {
    match mode(d) {
        ModeFlag::Incompatible => barrier_tracking(d),
        ModeFlag::Compatible => k_l(d, cfg),
    }
}

/// `-a1/b1` where the constraints are incompatible, `k_m` elsewhere.
pub fn k_m_star(d: &LieData, cfg: &BlendConfig) -> Result<f64> {
    match mode(d) {
        ModeFlag::Incompatible => barrier_tracking(d),
        ModeFlag::Compatible => k_m(d, cfg),
    }
}

/// `1 / (1 + c|x|²)`.
pub fn mu_c(x: &[f64], c: f64) -> f64 {
    let r2: f64 = x.iter().map(|v| v * v).sum();
    1.0 / (1.0 + c * r2)
}

fn sharpen(d: &LieData, x: &[f64], cfg: &SafetyPriorityConfig, star: f64) -> f64 {
    let mu = mu_c(x, cfg.c);
    let phi0 = cfg.blend.formula.apply(d.a0, d.b0);
    (1.0 - mu) * star + mu * phi0
}

/// `(1 - mu_c) k_l* + mu_c phi0`.
pub fn k_l_sharp(d: &LieData, x: &[f64], cfg: &SafetyPriorityConfig) -> Result<f64> {
    let star = k_l_star(d, &cfg.blend)?;
    Ok(sharpen(d, x, cfg, star))
}

/// `(1 - mu_c) k_m* + mu_c phi0`.
pub fn k_m_sharp(d: &LieData, x: &[f64], cfg: &SafetyPriorityConfig) -> Result<f64> {
    let star = k_m_star(d, &cfg.blend)?;
    Ok(sharpen(d, x, cfg, star))
}

/// Relative offset used to pull a boundary minimizer into the open set.
const BASELINE_MARGIN: f64 = 1e-9;

/// Smallest-magnitude admissible input: the projection of 0 onto the
/// closure of the feasible set, nudged inside by `1e-9` times the interval
/// width (or times `max(1, |bound|)` on a half-line).
///
/// At the origin only the barrier constraint is imposed.
///
/// Only a benchmarking baseline; none of the safety guarantees apply to it.
pub fn min_norm_baseline(d: &LieData) -> Result<f64> {
    let inward = |bound: f64| BASELINE_MARGIN * bound.abs().max(1.0);
    let set = if d.at_origin {
        feasible_set(&LieData::new(-1.0, 0.0, d.a1, d.b1))
    } else {
        feasible_set(d)
    };
    match set {
        FeasibleSet::Empty => Err(Error::Domain("no admissible input".into())),
        FeasibleSet::AllReals => Ok(0.0),
        FeasibleSet::Below(hi) => Ok(if hi > 0.0 { 0.0 } else { hi - inward(hi) }),
        FeasibleSet::Above(lo) => Ok(if lo < 0.0 { 0.0 } else { lo + inward(lo) }),
        FeasibleSet::Interval(lo, hi) => {
            let margin = BASELINE_MARGIN * (hi - lo);
            Ok(if lo >= 0.0 {
                lo + margin
            } else if hi <= 0.0 {
                hi - margin
            } else {
                0.0
            })
        }
    }
}
