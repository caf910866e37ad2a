//! Seeded Lie-data corpora shared by the integration tests.
#![allow(dead_code)]

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use safestab::blend::{BlendConfig, LambdaKind};
use safestab::formulas::FormulaKind;
use safestab::plant::LieData;

pub const RANGE: f64 = 10.0;
pub const MIN_GAP: f64 = 1e-9;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Every formula × lambda × eta combination exercised by the suites.
pub fn all_configs() -> Vec<BlendConfig> {
    let mut out = Vec::new();
    for formula in [FormulaKind::Sontag, FormulaKind::Freeman] {
        for lambda in [LambdaKind::Logistic, LambdaKind::Tanh, LambdaKind::Algebraic] {
            for eta in [0.1, 0.5, 0.9] {
                out.push(BlendConfig::new(formula, lambda, eta).unwrap());
            }
        }
    }
    out
}

fn coeff(r: &mut ChaCha8Rng) -> f64 {
    r.gen_range(-RANGE..RANGE)
}

fn nonzero(r: &mut ChaCha8Rng, positive: bool) -> f64 {
    let m = loop {
        let v: f64 = r.gen_range(0.0..RANGE);
        if v > 0.0 {
            break v;
        }
    };
    if positive {
        m
    } else {
        -m
    }
}

fn negative(r: &mut ChaCha8Rng) -> f64 {
    -nonzero(r, true)
}

/// Both input coefficients nonzero and of equal sign.
pub fn same_sign(r: &mut ChaCha8Rng) -> LieData {
    let positive = r.gen_bool(0.5);
    LieData::new(coeff(r), nonzero(r, positive), coeff(r), nonzero(r, positive))
}

/// At least one input coefficient exactly zero, its drift term negative.
pub fn zero_b(r: &mut ChaCha8Rng) -> LieData {
    match r.gen_range(0..3) {
        0 => LieData::new(negative(r), 0.0, coeff(r), coeff(r)),
        1 => LieData::new(coeff(r), coeff(r), negative(r), 0.0),
        _ => LieData::new(negative(r), 0.0, negative(r), 0.0),
    }
}

/// Gap between the two roots: log-uniform over `[1e-9, 20]`, with a quarter
/// of the draws forced into the near-tie range `[1e-9, 1e-3]`.
fn gap(r: &mut ChaCha8Rng) -> f64 {
    let (lo, hi): (f64, f64) = if r.gen_bool(0.25) {
        (MIN_GAP.ln(), 1e-3f64.ln())
    } else {
        (MIN_GAP.ln(), 20f64.ln())
    };
    r.gen_range(lo..hi).exp()
}

/// Mixed signs, lower root `-a_j/b_j` and upper root `-a_i/b_i` at a chosen
/// distance `g`; `g <= 0` gives incompatible data.
fn mixed_with_gap(r: &mut ChaCha8Rng, g: f64) -> LieData {
    let bi = nonzero(r, true);
    let bj = nonzero(r, false);
    let lower: f64 = r.gen_range(-RANGE..RANGE);
    let upper = lower + g;
    let (ai, aj) = (-upper * bi, -lower * bj);
    if r.gen_bool(0.5) {
        LieData::new(ai, bi, aj, bj)
    } else {
        LieData::new(aj, bj, ai, bi)
    }
}

/// Actual `(lower, upper)` roots of mixed-sign data.
pub fn mixed_roots(d: &LieData) -> (f64, f64) {
    let (i, j) = if d.b0 > 0.0 { (0, 1) } else { (1, 0) };
    (-d.a(j) / d.b(j), -d.a(i) / d.b(i))
}

/// Mixed-sign compatible data whose computed roots are at least `1e-9` apart.
pub fn mixed_compatible(r: &mut ChaCha8Rng) -> LieData {
    loop {
        let g = gap(r);
        let d = mixed_with_gap(r, g);
        let (lo, hi) = mixed_roots(&d);
        if hi - lo >= MIN_GAP {
            return d;
        }
    }
}

/// Mixed-sign incompatible data (`lower >= upper`), including exact ties.
pub fn mixed_incompatible(r: &mut ChaCha8Rng) -> LieData {
    loop {
        let g = if r.gen_bool(0.05) { 0.0 } else { -gap(r) };
        let d = mixed_with_gap(r, g);
        let (lo, hi) = mixed_roots(&d);
        if lo >= hi {
            return d;
        }
    }
}

/// Engineered near-ties on both sides of the compatibility boundary.
pub fn near_tie(r: &mut ChaCha8Rng) -> LieData {
    let g = r.gen_range(MIN_GAP.ln()..1e-3f64.ln()).exp();
    let g = match r.gen_range(0..3) {
        0 => g,
        1 => -g,
        _ => 0.0,
    };
    mixed_with_gap(r, g)
}

/// Mixture of every family, used for oracle equivalence.
pub fn any_valid(r: &mut ChaCha8Rng) -> LieData {
    match r.gen_range(0..6) {
        0 => same_sign(r),
        1 => zero_b(r),
        2 => mixed_compatible(r),
        3 => mixed_incompatible(r),
        4 => near_tie(r),
        _ => {
            let d = LieData::new(coeff(r), coeff(r), coeff(r), coeff(r));
            if d.b0 == 0.0 || d.b1 == 0.0 {
                same_sign(r)
            } else {
                d
            }
        }
    }
}
