//! Exact characterization of the admissible inputs
//! `{u : a0 + b0·u < 0 and a1 + b1·u < 0}` and residual reports.
//!
//! This is the ground truth every controller is checked against. All
//! inequalities are strict.

use std::fmt;

use crate::error::{Error, Result};
use crate::plant::LieData;

/// Root `-a/b` of the affine residual `a + b·u`.
#[inline]
pub fn root(a: f64, b: f64) -> f64 {
    -a / b
}

/// The set of inputs satisfying both strict constraints.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum FeasibleSet {
    Empty,
    AllReals,
    /// `u < bound`
    Below(f64),
    /// `u > bound`
    Above(f64),
    /// `lower < u < upper`, with `lower < upper`.
    Interval(f64, f64),
}

impl FeasibleSet {
    pub fn is_empty(&self) -> bool {
        matches!(self, FeasibleSet::Empty)
    }

    pub fn contains(&self, u: f64) -> bool {
        match *self {
            FeasibleSet::Empty => false,
            FeasibleSet::AllReals => true,
            FeasibleSet::Below(hi) => u < hi,
            FeasibleSet::Above(lo) => u > lo,
            FeasibleSet::Interval(lo, hi) => lo < u && u < hi,
        }
    }

    /// `(lower, upper)` with infinite ends for unbounded sides; `None` when empty.
    pub fn bounds(&self) -> Option<(f64, f64)> {
        match *self {
            FeasibleSet::Empty => None,
            FeasibleSet::AllReals => Some((f64::NEG_INFINITY, f64::INFINITY)),
            FeasibleSet::Below(hi) => Some((f64::NEG_INFINITY, hi)),
            FeasibleSet::Above(lo) => Some((lo, f64::INFINITY)),
            FeasibleSet::Interval(lo, hi) => Some((lo, hi)),
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            FeasibleSet::Empty => "empty",
            FeasibleSet::AllReals => "all",
            FeasibleSet::Below(_) => "below",
            FeasibleSet::Above(_) => "above",
            FeasibleSet::Interval(..) => "interval",
        }
    }
}

impl fmt::Display for FeasibleSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            FeasibleSet::Empty => f.write_str("{}"),
            FeasibleSet::AllReals => f.write_str("(-inf, inf)"),
            FeasibleSet::Below(hi) => write!(f, "(-inf, {hi})"),
            FeasibleSet::Above(lo) => write!(f, "({lo}, inf)"),
            FeasibleSet::Interval(lo, hi) => write!(f, "({lo}, {hi})"),
        }
    }
}

/// Intersects the two strict half-line constraints.
pub fn feasible_set(d: &LieData) -> FeasibleSet {
    let mut lo = f64::NEG_INFINITY;
    let mut hi = f64::INFINITY;
    for k in 0..2 {
        let (a, b) = (d.a(k), d.b(k));
        if b > 0.0 {
            hi = hi.min(root(a, b));
        } else if b < 0.0 {
            lo = lo.max(root(a, b));
        } else if !(a < 0.0) {
            return FeasibleSet::Empty;
        }
    }
    if !(lo < hi) {
        return FeasibleSet::Empty;
    }
    match (lo == f64::NEG_INFINITY, hi == f64::INFINITY) {
        (true, true) => FeasibleSet::AllReals,
        (true, false) => FeasibleSet::Below(hi),
        (false, true) => FeasibleSet::Above(lo),
        (false, false) => FeasibleSet::Interval(lo, hi),
    }
}

/// Residuals of both constraints at a given input.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FeasibilityReport {
    pub f0: f64,
    pub f1: f64,
    pub clf_ok: bool,
    pub cbf_ok: bool,
}

impl FeasibilityReport {
    pub fn feasible(&self) -> bool {
        self.clf_ok && self.cbf_ok
    }
}

pub fn check(d: &LieData, u: f64) -> FeasibilityReport {
    let f0 = d.a0 + d.b0 * u;
    let f1 = d.a1 + d.b1 * u;
    FeasibilityReport {
        f0,
        f1,
        clf_ok: f0 < 0.0,
        cbf_ok: f1 < 0.0,
    }
}

/// Every point of the uniform `n`-point grid on `[lo, hi]` satisfying both
/// constraints, in increasing order.
pub fn grid_search(d: &LieData, lo: f64, hi: f64, n: usize) -> Result<Vec<f64>> {
    if !(lo < hi) || !lo.is_finite() || !hi.is_finite() || n < 2 {
        return Err(Error::Parameter(format!(
            "grid [{lo}, {hi}] with {n} points"
        )));
    }
    let last = (n - 1) as f64;
    Ok((0..n)
        .map(|k| lo + (hi - lo) * (k as f64 / last))
        .filter(|&u| check(d, u).feasible())
        .collect())
}

/// Residual check and set membership agree that `u` is strictly admissible.
pub(crate) fn strictly_admissible(d: &LieData, u: f64) -> bool {
    u.is_finite() && check(d, u).feasible() && feasible_set(d).contains(u)
}

/// Moves `u` by a bounded number of ulps into the admissible set when
/// rounding has left it on (or just past) a constraint boundary that the
/// exact value lies strictly inside of. Returns `u` unchanged when it is
/// already admissible, when the set is empty, or when no nearby
/// representable value is admissible.
pub(crate) fn snap_inside(d: &LieData, u: f64) -> f64 {
    const MAX_ULPS: usize = 64;
    if !u.is_finite() || strictly_admissible(d, u) {
        return u;
    }
    let set = feasible_set(d);
    if set.is_empty() {
        return u;
    }
    let r = check(d, u);
    // Which way shrinks each violated residual.
    let mut down = false;
    let mut up = false;
    for (ok, b) in [(r.clf_ok, d.b0), (r.cbf_ok, d.b1)] {
        if !ok {
            if b > 0.0 {
                down = true;
            } else if b < 0.0 {
                up = true;
            }
        }
    }
    if let Some((lo, hi)) = set.bounds() {
        if u >= hi {
            down = true;
        }
        if u <= lo {
            up = true;
        }
    }
    if down == up {
        return u;
    }
    let mut v = u;
    for _ in 0..MAX_ULPS {
        v = if down { v.next_down() } else { v.next_up() };
        if strictly_admissible(d, v) {
            return v;
        }
    }
    u
}
