//! Single-input control-affine plants `ẋ = f(x) + g(x)·u` together with a
//! control Lyapunov function and a control barrier function, and the
//! reduction of both design inequalities to the scalar Lie data
//! `(a0, b0, a1, b1)`.
//!
//! Field handles are plain shared closures. They must be pure and reentrant;
//! any NaN or infinity they return is reported as [`Error::Evaluation`].

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// States with Euclidean norm at or below this are treated as the origin.
pub const ORIGIN_TOL: f64 = 1e-9;

/// Default central-difference step for gradients without an analytic form.
pub const DEFAULT_FD_STEP: f64 = 1e-6;

pub type VectorField = Arc<dyn Fn(&[f64]) -> Vec<f64> + Send + Sync>;
pub type ScalarField = Arc<dyn Fn(&[f64]) -> f64 + Send + Sync>;
pub type ScalarMap = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

/// A finite state vector.
#[derive(Debug, Clone, PartialEq)]
pub struct State(Vec<f64>);

impl State {
    pub fn new(x: Vec<f64>) -> Result<Self> {
        if x.is_empty() {
            return Err(Error::Dimension {
                expected: 1,
                got: 0,
            });
        }
        if let Some(k) = x.iter().position(|v| !v.is_finite()) {
            return Err(Error::Evaluation {
                field: "state",
                component: k,
            });
        }
        Ok(State(x))
    }

    pub fn zeros(dim: usize) -> Self {
        State(vec![0.0; dim.max(1)])
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn norm(&self) -> f64 {
        norm(&self.0)
    }

    pub fn into_inner(self) -> Vec<f64> {
        self.0
    }
}

impl From<State> for Vec<f64> {
    fn from(s: State) -> Self {
        s.0
    }
}

pub(crate) fn norm(x: &[f64]) -> f64 {
    x.iter().map(|v| v * v).sum::<f64>().sqrt()
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(p, q)| p * q).sum()
}

fn checked_vector(field: &'static str, v: Vec<f64>, dim: usize) -> Result<Vec<f64>> {
    if v.len() != dim {
        return Err(Error::Dimension {
            expected: dim,
            got: v.len(),
        });
    }
    if let Some(k) = v.iter().position(|c| !c.is_finite()) {
        return Err(Error::Evaluation {
            field,
            component: k,
        });
    }
    Ok(v)
}

fn checked_scalar(field: &'static str, v: f64) -> Result<f64> {
    if v.is_finite() {
        Ok(v)
    } else {
        Err(Error::Evaluation { field, component: 0 })
    }
}

/// Central-difference gradient of a scalar field.
pub fn fd_gradient(field: &dyn Fn(&[f64]) -> f64, x: &[f64], step: f64) -> Result<Vec<f64>> {
    if !(step > 0.0 && step.is_finite()) {
        return Err(Error::Parameter(format!("finite-difference step {step}")));
    }
    let mut probe = x.to_vec();
    let mut grad = Vec::with_capacity(x.len());
    for k in 0..x.len() {
        probe[k] = x[k] + step;
        let fwd = field(&probe);
        probe[k] = x[k] - step;
        let bwd = field(&probe);
        probe[k] = x[k];
        let g = (fwd - bwd) / (2.0 * step);
        if !g.is_finite() {
            return Err(Error::Evaluation {
                field: "finite-difference gradient",
                component: k,
            });
        }
        grad.push(g);
    }
    Ok(grad)
}

/// How the gradient of a scalar field is obtained.
#[derive(Clone)]
pub enum Gradient {
    Analytic(VectorField),
    FiniteDifference { step: f64 },
}

impl Default for Gradient {
    fn default() -> Self {
        Gradient::FiniteDifference {
            step: DEFAULT_FD_STEP,
        }
    }
}

impl fmt::Debug for Gradient {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Gradient::Analytic(_) => f.write_str("Analytic"),
            Gradient::FiniteDifference { step } => write!(f, "FiniteDifference({step})"),
        }
    }
}

fn eval_gradient(
    name: &'static str,
    grad: &Gradient,
    field: &ScalarField,
    x: &[f64],
) -> Result<Vec<f64>> {
    match grad {
        Gradient::Analytic(g) => checked_vector(name, g(x), x.len()),
        Gradient::FiniteDifference { step } => fd_gradient(field.as_ref(), x, *step),
    }
}

/// Drift `f` and input vector field `g` of `ẋ = f(x) + g(x)·u`.
#[derive(Clone)]
pub struct Dynamics {
    dim: usize,
    f: VectorField,
    g: VectorField,
}

impl Dynamics {
    pub fn new(dim: usize, f: VectorField, g: VectorField) -> Self {
        Dynamics { dim, f, g }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn drift(&self, x: &[f64]) -> Result<Vec<f64>> {
        self.check_dim(x)?;
        checked_vector("f", (self.f)(x), self.dim)
    }

    pub fn input_field(&self, x: &[f64]) -> Result<Vec<f64>> {
        self.check_dim(x)?;
        checked_vector("g", (self.g)(x), self.dim)
    }

    /// `f(x) + g(x)·u`.
    pub fn vector_field(&self, x: &[f64], u: f64) -> Result<Vec<f64>> {
        let f = self.drift(x)?;
        let g = self.input_field(x)?;
        Ok(f.iter().zip(&g).map(|(fi, gi)| fi + gi * u).collect())
    }

    /// Whether `|f(0)| <= tol`.
    pub fn origin_is_equilibrium(&self, tol: f64) -> Result<bool> {
        let f0 = self.drift(&vec![0.0; self.dim])?;
        Ok(norm(&f0) <= tol)
    }

    fn check_dim(&self, x: &[f64]) -> Result<()> {
        if x.len() == self.dim {
            Ok(())
        } else {
            Err(Error::Dimension {
                expected: self.dim,
                got: x.len(),
            })
        }
    }
}

/// A control Lyapunov function `V` with its gradient and positive-definite
/// decay margin `alpha`.
#[derive(Clone)]
pub struct ClfSpec {
    pub v: ScalarField,
    pub grad: Gradient,
    pub alpha: ScalarField,
}

/// A control barrier function `h` (safe set `h >= 0`) with its gradient and
/// extended class-K∞ function `alpha_h`.
#[derive(Clone)]
pub struct CbfSpec {
    pub h: ScalarField,
    pub grad: Gradient,
    pub alpha_h: ScalarMap,
}

impl ClfSpec {
    pub fn value(&self, x: &[f64]) -> Result<f64> {
        checked_scalar("V", (self.v)(x))
    }

    pub fn gradient(&self, x: &[f64]) -> Result<Vec<f64>> {
        eval_gradient("gradV", &self.grad, &self.v, x)
    }
}

impl CbfSpec {
    pub fn value(&self, x: &[f64]) -> Result<f64> {
        checked_scalar("h", (self.h)(x))
    }

    pub fn gradient(&self, x: &[f64]) -> Result<Vec<f64>> {
        eval_gradient("gradh", &self.grad, &self.h, x)
    }
}

/// A complete safe-stabilization problem instance.
#[derive(Clone)]
pub struct SystemBundle {
    pub label: String,
    pub dynamics: Dynamics,
    pub clf: ClfSpec,
    pub cbf: CbfSpec,
}

impl fmt::Debug for SystemBundle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SystemBundle")
            .field("label", &self.label)
            .field("dim", &self.dynamics.dim())
            .finish_non_exhaustive()
    }
}

impl SystemBundle {
    /// Assembles a bundle. The origin must lie strictly inside the safe set.
    pub fn new(
        label: impl Into<String>,
        dynamics: Dynamics,
        clf: ClfSpec,
        cbf: CbfSpec,
    ) -> Result<Self> {
        let bundle = SystemBundle {
            label: label.into(),
            dynamics,
            clf,
            cbf,
        };
        let origin = vec![0.0; bundle.dim()];
        bundle.clf.gradient(&origin)?;
        bundle.cbf.gradient(&origin)?;
        bundle.dynamics.vector_field(&origin, 0.0)?;
        let h0 = bundle.cbf.value(&origin)?;
        if h0 <= 0.0 {
            return Err(Error::Parameter(format!(
                "origin must be interior to the safe set, h(0) = {h0}"
            )));
        }
        Ok(bundle)
    }

    pub fn dim(&self) -> usize {
        self.dynamics.dim()
    }

    pub fn lie_data(&self, x: &State) -> Result<LieData> {
        lie_data(self, x)
    }
}

/// Lie-derivative data at one state.
///
/// `F0 = a0 + b0·u < 0` is the CLF decrease condition and
/// `F1 = a1 + b1·u < 0` the barrier condition.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LieData {
    /// `L_f V + alpha`
    pub a0: f64,
    /// `L_g V`
    pub b0: f64,
    /// `-L_f h - alpha_h(h)`
    pub a1: f64,
    /// `-L_g h`
    pub b1: f64,
    pub at_origin: bool,
}

impl LieData {
    /// Lie data at a state away from the origin.
    pub const fn new(a0: f64, b0: f64, a1: f64, b1: f64) -> Self {
        LieData {
            a0,
            b0,
            a1,
            b1,
            at_origin: false,
        }
    }

    /// `a_k` for `k` in {0, 1}.
    pub fn a(&self, k: usize) -> f64 {
        if k == 0 {
            self.a0
        } else {
            self.a1
        }
    }

    /// `b_k` for `k` in {0, 1}.
    pub fn b(&self, k: usize) -> f64 {
        if k == 0 {
            self.b0
        } else {
            self.b1
        }
    }

    pub fn is_finite(&self) -> bool {
        self.a0.is_finite() && self.b0.is_finite() && self.a1.is_finite() && self.b1.is_finite()
    }

    /// `b0` and `b1` strictly of opposite sign.
    pub fn mixed_sign(&self) -> bool {
        (self.b0 > 0.0 && self.b1 < 0.0) || (self.b0 < 0.0 && self.b1 > 0.0)
    }

    /// Checks the implications a valid CLF/CBF pair guarantees:
    /// `b0 = 0, x != 0 => a0 < 0` and `b1 = 0 => a1 < 0`.
    pub fn validate(&self) -> Result<()> {
        if !self.is_finite() {
            return Err(Error::Inconsistent("non-finite Lie data".into()));
        }
        if self.b0 == 0.0 && !self.at_origin && self.a0 >= 0.0 {
            return Err(Error::Inconsistent(format!(
                "L_gV = 0 with a0 = {} >= 0 away from the origin",
                self.a0
            )));
        }
        if self.b1 == 0.0 && self.a1 >= 0.0 {
            return Err(Error::Inconsistent(format!(
                "L_gh = 0 with a1 = {} >= 0",
                self.a1
            )));
        }
        Ok(())
    }
}

/// Computes `(a0, b0, a1, b1)` at `x`.
pub fn lie_data(bundle: &SystemBundle, x: &State) -> Result<LieData> {
    let xs = x.as_slice();
    let f = bundle.dynamics.drift(xs)?;
    let g = bundle.dynamics.input_field(xs)?;
    let grad_v = bundle.clf.gradient(xs)?;
    let grad_h = bundle.cbf.gradient(xs)?;
    let alpha = checked_scalar("alpha", (bundle.clf.alpha)(xs))?;
    let h = bundle.cbf.value(xs)?;
    let alpha_h = checked_scalar("alpha_h", (bundle.cbf.alpha_h)(h))?;

    let data = LieData {
        a0: dot(&grad_v, &f) + alpha,
        b0: dot(&grad_v, &g),
        a1: -dot(&grad_h, &f) - alpha_h,
        b1: -dot(&grad_h, &g),
        at_origin: x.norm() <= ORIGIN_TOL,
    };
    if !data.is_finite() {
        return Err(Error::Evaluation {
            field: "Lie data",
            component: 0,
        });
    }
    Ok(data)
}

/// Parameters of the two-state benchmark plant
/// `ẋ1 = x1 + sin x1 + x2`, `ẋ2 = x1³ + (1 + x1²)·u`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PaperExampleParams {
    pub k1: f64,
    pub k2: f64,
    pub q: f64,
    pub d1: f64,
    pub d2: f64,
}

impl Default for PaperExampleParams {
    fn default() -> Self {
        PaperExampleParams {
            k1: 1.0,
            k2: 2.0,
            q: 8.0,
            d1: 0.5,
            d2: 1.1,
        }
    }
}

pub const PAPER_EXAMPLE: &str = "paper_example";

/// Benchmark plant with
/// `V = ½x1² + ½σ²`, `σ = x2 + (k1+1)x1 + sin x1`,
/// `alpha = ½(k1 x1² + k2 σ²)`, barrier `h = x2 + q(x1 - d1)² + d2` and
/// `alpha_h(s) = s`. Gradients are analytic.
pub fn builtin_paper_example(p: PaperExampleParams) -> Result<SystemBundle> {
    if !(p.k1 > 0.0 && p.k2 > 0.0 && p.q > 0.0) {
        return Err(Error::Parameter(format!(
            "k1, k2, q must be positive (got {}, {}, {})",
            p.k1, p.k2, p.q
        )));
    }
    if ![p.k1, p.k2, p.q, p.d1, p.d2].iter().all(|v| v.is_finite()) {
        return Err(Error::Parameter("non-finite example parameter".into()));
    }
    let PaperExampleParams { k1, k2, q, d1, d2 } = p;
    let sigma = move |x: &[f64]| x[1] + (k1 + 1.0) * x[0] + x[0].sin();

    let dynamics = Dynamics::new(
        2,
        Arc::new(|x: &[f64]| vec![x[0] + x[0].sin() + x[1], x[0].powi(3)]),
        Arc::new(|x: &[f64]| vec![0.0, 1.0 + x[0] * x[0]]),
    );
    let clf = ClfSpec {
        v: Arc::new(move |x: &[f64]| 0.5 * x[0] * x[0] + 0.5 * sigma(x).powi(2)),
        grad: Gradient::Analytic(Arc::new(move |x: &[f64]| {
            let s = sigma(x);
            vec![x[0] + s * (k1 + 1.0 + x[0].cos()), s]
        })),
        alpha: Arc::new(move |x: &[f64]| 0.5 * (k1 * x[0] * x[0] + k2 * sigma(x).powi(2))),
    };
    let cbf = CbfSpec {
        h: Arc::new(move |x: &[f64]| x[1] + q * (x[0] - d1).powi(2) + d2),
        grad: Gradient::Analytic(Arc::new(move |x: &[f64]| vec![2.0 * q * (x[0] - d1), 1.0])),
        alpha_h: Arc::new(|s| s),
    };
    SystemBundle::new(PAPER_EXAMPLE, dynamics, clf, cbf)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn example() -> SystemBundle {
        builtin_paper_example(PaperExampleParams::default()).unwrap()
    }

    fn st(x: &[f64]) -> State {
        State::new(x.to_vec()).unwrap()
    }

    // Hand-derived Lie data at (1, 0):
    //   sigma = 2 + sin 1, f = (1 + sin 1, 1), g = (0, 2)
    //   gradV = (1 + sigma (2 + cos 1), sigma), gradh = (8, 1), h = 3.1
    fn hand_lie_data_at_1_0() -> (f64, f64, f64, f64) {
        let s1 = 1f64.sin();
        let sigma = 2.0 + s1;
        let grad_v = [1.0 + sigma * (2.0 + 1f64.cos()), sigma];
        let f = [1.0 + s1, 1.0];
        let alpha = 0.5 * (1.0 + 2.0 * sigma * sigma);
        let a0 = grad_v[0] * f[0] + grad_v[1] * f[1] + alpha;
        let b0 = 2.0 * sigma;
        let a1 = -(8.0 * f[0] + f[1]) - 3.1;
        (a0, b0, a1, -2.0)
    }

    #[test]
    fn lie_data_matches_hand_evaluation() {
        let d = example().lie_data(&st(&[1.0, 0.0])).unwrap();
        let (a0, b0, a1, b1) = hand_lie_data_at_1_0();
        assert_abs_diff_eq!(d.a0, a0, epsilon = 1e-12);
        assert_abs_diff_eq!(d.b0, b0, epsilon = 1e-12);
        assert_abs_diff_eq!(d.a1, a1, epsilon = 1e-12);
        assert_abs_diff_eq!(d.b1, b1, epsilon = 1e-12);
        // four-decimal reference values
        assert_abs_diff_eq!(d.a0, 26.5490, epsilon = 5e-5);
        assert_abs_diff_eq!(d.b0, 5.6829, epsilon = 5e-5);
        assert_abs_diff_eq!(d.a1, -18.8318, epsilon = 5e-5);
        assert_eq!(d.b1, -2.0);
        assert!(!d.at_origin);
    }

    #[test]
    fn lie_data_matches_finite_difference_route() {
        let b = example();
        let mut fd = b.clone();
        fd.clf.grad = Gradient::default();
        fd.cbf.grad = Gradient::default();
        let x = st(&[1.0, 0.0]);
        let exact = b.lie_data(&x).unwrap();
        let approx = fd.lie_data(&x).unwrap();
        assert_abs_diff_eq!(exact.a0, approx.a0, epsilon = 1e-6);
        assert_abs_diff_eq!(exact.b0, approx.b0, epsilon = 1e-6);
        assert_abs_diff_eq!(exact.a1, approx.a1, epsilon = 1e-6);
        assert_abs_diff_eq!(exact.b1, approx.b1, epsilon = 1e-6);
    }

    #[test]
    fn lie_data_at_origin() {
        let d = example().lie_data(&State::zeros(2)).unwrap();
        assert_eq!(d.a0, 0.0);
        assert_eq!(d.b0, 0.0);
        assert_abs_diff_eq!(d.a1, -3.1, epsilon = 1e-15);
        assert_eq!(d.b1, -1.0);
        assert!(d.at_origin);
        assert!(d.validate().is_ok());
    }

    #[test]
    fn origin_flag_uses_tolerance() {
        let b = example();
        assert!(b.lie_data(&st(&[5e-10, 0.0])).unwrap().at_origin);
        assert!(!b.lie_data(&st(&[2e-9, 0.0])).unwrap().at_origin);
    }

    #[test]
    fn paper_example_basics() {
        let b = example();
        assert_abs_diff_eq!(b.cbf.value(&[0.0, 0.0]).unwrap(), 3.1, epsilon = 1e-15);
        assert!(b.dynamics.origin_is_equilibrium(0.0).unwrap());
        // sigma is the second gradient component of V
        let gv = b.clf.gradient(&[1.0, 0.0]).unwrap();
        assert_abs_diff_eq!(gv[1], 2.0 + 1f64.sin(), epsilon = 1e-15);
        assert_abs_diff_eq!(gv[1], 2.8415, epsilon = 1e-4);
    }

    #[test]
    fn paper_example_rejects_bad_params() {
        let mut p = PaperExampleParams::default();
        p.q = 0.0;
        assert!(matches!(builtin_paper_example(p), Err(Error::Parameter(_))));
        p = PaperExampleParams::default();
        p.k1 = -1.0;
        assert!(builtin_paper_example(p).is_err());
    }

    #[test]
    fn paper_example_any_params_has_equilibrium() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..50 {
            let p = PaperExampleParams {
                k1: rng.gen_range(0.1..5.0),
                k2: rng.gen_range(0.1..5.0),
                q: rng.gen_range(0.1..10.0),
                d1: rng.gen_range(-1.0..1.0),
                d2: rng.gen_range(0.1..3.0),
            };
            let b = builtin_paper_example(p).unwrap();
            assert_eq!(b.dynamics.drift(&[0.0, 0.0]).unwrap(), vec![0.0, 0.0]);
        }
    }

    #[test]
    fn fd_gradient_quadratic_and_constant() {
        let g = fd_gradient(&|x: &[f64]| x[0] * x[0], &[3.0], 1e-5).unwrap();
        assert_abs_diff_eq!(g[0], 6.0, epsilon = 1e-6);
        let g = fd_gradient(&|_: &[f64]| 4.2, &[1.0, -2.0, 7.0], 1e-3).unwrap();
        assert_eq!(g, vec![0.0, 0.0, 0.0]);
        assert!(fd_gradient(&|_: &[f64]| 0.0, &[1.0], 0.0).is_err());
    }

    #[test]
    fn fd_gradient_matches_analytic_example_gradients() {
        let b = example();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let mut pts = vec![vec![1.0, 0.0]];
        pts.extend((0..10_000).map(|_| vec![rng.gen_range(-3.0..3.0), rng.gen_range(-3.0..3.0)]));
        for x in pts {
            for (exact, field) in [
                (b.clf.gradient(&x).unwrap(), &b.clf.v),
                (b.cbf.gradient(&x).unwrap(), &b.cbf.h),
            ] {
                let fd = fd_gradient(field.as_ref(), &x, 1e-6).unwrap();
                for (e, a) in exact.iter().zip(&fd) {
                    let rel = (e - a).abs() / e.abs().max(1.0);
                    assert!(rel < 1e-5, "x = {x:?}: {e} vs {a}");
                }
            }
        }
    }

    #[test]
    fn sampled_definition_checks_hold_for_example() {
        let b = example();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..10_000 {
            let x = st(&[rng.gen_range(-3.0..3.0), rng.gen_range(-3.0..3.0)]);
            let d = b.lie_data(&x).unwrap();
            if d.at_origin {
                continue;
            }
            if d.b0.abs() <= 1e-9 {
                assert!(d.a0 < 0.0, "{x:?}");
            }
            if d.b1.abs() <= 1e-9 {
                assert!(d.a1 < 0.0, "{x:?}");
            }
        }
    }

    #[test]
    fn sigma_zero_line_satisfies_clf_implication() {
        // b0 = sigma (1 + x1²) vanishes on sigma = 0; a0 must be negative there.
        let b = example();
        for k in 1..200 {
            let x1 = -3.0 + 0.03 * k as f64;
            if x1.abs() < 1e-6 {
                continue;
            }
            let x2 = -(2.0 * x1 + x1.sin());
            let d = b.lie_data(&st(&[x1, x2])).unwrap();
            assert!(d.b0.abs() < 1e-9);
            assert!(d.a0 < 0.0);
        }
    }

    #[test]
    fn lie_data_is_deterministic() {
        let b = example();
        let x = st(&[0.3, -1.7]);
        let d1 = b.lie_data(&x).unwrap();
        let d2 = b.lie_data(&x).unwrap();
        assert_eq!(d1.a0.to_bits(), d2.a0.to_bits());
        assert_eq!(d1.b0.to_bits(), d2.b0.to_bits());
        assert_eq!(d1.a1.to_bits(), d2.a1.to_bits());
        assert_eq!(d1.b1.to_bits(), d2.b1.to_bits());
    }

    #[test]
    fn non_finite_fields_are_reported() {
        let mut b = example();
        b.cbf.h = Arc::new(|x: &[f64]| if x[0] > 1.0 { f64::NAN } else { 1.0 });
        b.cbf.grad = Gradient::Analytic(Arc::new(|_| vec![0.0, 1.0]));
        let err = b.lie_data(&st(&[2.0, 0.0])).unwrap_err();
        assert_eq!(
            err,
            Error::Evaluation {
                field: "h",
                component: 0
            }
        );
        let mut b = example();
        b.dynamics = Dynamics::new(
            2,
            Arc::new(|x: &[f64]| vec![x[0], f64::INFINITY]),
            Arc::new(|_| vec![0.0, 1.0]),
        );
        let err = b.lie_data(&st(&[0.5, 0.0])).unwrap_err();
        assert_eq!(
            err,
            Error::Evaluation {
                field: "f",
                component: 1
            }
        );
        assert!(State::new(vec![1.0, f64::NAN]).is_err());
    }

    #[test]
    fn dimension_mismatch_is_reported() {
        let b = example();
        let err = b.lie_data(&st(&[1.0, 0.0, 0.0])).unwrap_err();
        assert_eq!(err, Error::Dimension { expected: 2, got: 3 });
    }

    #[test]
    fn bundle_requires_interior_origin() {
        let b = example();
        let cbf = CbfSpec {
            h: Arc::new(|x: &[f64]| x[0]),
            grad: Gradient::default(),
            alpha_h: Arc::new(|s| s),
        };
        let err = SystemBundle::new("bad", b.dynamics.clone(), b.clf.clone(), cbf).unwrap_err();
        assert!(matches!(err, Error::Parameter(_)));
    }

    #[test]
    fn validate_flags_invalid_zero_b_data() {
        assert!(LieData::new(1.0, 0.0, -1.0, 1.0).validate().is_err());
        assert!(LieData::new(-1.0, 0.0, 0.0, 0.0).validate().is_err());
        assert!(LieData::new(-1.0, 0.0, -1.0, 0.0).validate().is_ok());
    }
}
