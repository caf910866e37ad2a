//! Fixed-step closed-loop simulation.
//!
//! Each step evaluates the Lie data at the current state, applies the
//! controller, records every signal and advances with classical RK4 holding
//! `u` constant over the step.

use std::fmt;
use std::io::{self, Write};
use std::str::FromStr;

use crate::blend::{k_l, k_m, BlendConfig};
use crate::error::{Error, Result};
use crate::feasibility::check;
use crate::formulas::{phi_freeman, phi_sontag};
use crate::plant::{Dynamics, LieData, State, SystemBundle};
use crate::priority::{
    k_l_sharp, k_l_star, k_m_sharp, k_m_star, min_norm_baseline, mode, ModeFlag,
    SafetyPriorityConfig, DEFAULT_C,
};

/// Feedback laws available to the simulator.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ControllerLaw {
    KL,
    KM,
    KLStar,
    KMStar,
    KLSharp,
    KMSharp,
    ClfOnlySontag,
    ClfOnlyFreeman,
    MinNormBaseline,
}

impl ControllerLaw {
    pub const ALL: [ControllerLaw; 9] = [
        ControllerLaw::KL,
        ControllerLaw::KM,
        ControllerLaw::KLStar,
        ControllerLaw::KMStar,
        ControllerLaw::KLSharp,
        ControllerLaw::KMSharp,
        ControllerLaw::ClfOnlySontag,
        ControllerLaw::ClfOnlyFreeman,
        ControllerLaw::MinNormBaseline,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ControllerLaw::KL => "kl",
            ControllerLaw::KM => "km",
            ControllerLaw::KLStar => "kl_star",
            ControllerLaw::KMStar => "km_star",
            ControllerLaw::KLSharp => "kl_sharp",
            ControllerLaw::KMSharp => "km_sharp",
            ControllerLaw::ClfOnlySontag => "clf_only_sontag",
            ControllerLaw::ClfOnlyFreeman => "clf_only_freeman",
            ControllerLaw::MinNormBaseline => "min_norm",
        }
    }
}

impl fmt::Display for ControllerLaw {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ControllerLaw {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        let key = s.to_ascii_lowercase().replace('-', "_");
        ControllerLaw::ALL
            .iter()
            .copied()
            .find(|l| l.name() == key)
            .or(match key.as_str() {
                "min_norm_baseline" => Some(ControllerLaw::MinNormBaseline),
                _ => None,
            })
            .ok_or_else(|| {
                let names: Vec<_> = ControllerLaw::ALL.iter().map(|l| l.name()).collect();
                format!("unknown law `{s}` (expected one of {})", names.join(", "))
            })
    }
}

/// A law together with its tuning.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ControllerSpec {
    pub law: ControllerLaw,
    pub blend: BlendConfig,
    /// Origin-weight sharpness; only read by the `#` laws.
    pub c: f64,
}

impl ControllerSpec {
    pub fn new(law: ControllerLaw, blend: BlendConfig, c: f64) -> Result<Self> {
        SafetyPriorityConfig::new(blend, c)?;
        BlendConfig::new(blend.formula, blend.lambda, blend.eta)?;
        Ok(ControllerSpec { law, blend, c })
    }

    pub fn with_law(law: ControllerLaw) -> Self {
        ControllerSpec {
            law,
            blend: BlendConfig::default(),
            c: DEFAULT_C,
        }
    }

    pub fn evaluate(&self, d: &LieData, x: &[f64]) -> Result<f64> {
        let sp = SafetyPriorityConfig {
            blend: self.blend,
            c: self.c,
        };
        match self.law {
            ControllerLaw::KL => k_l(d, &self.blend),
            ControllerLaw::KM => k_m(d, &self.blend),
            ControllerLaw::KLStar => k_l_star(d, &self.blend),
            ControllerLaw::KMStar => k_m_star(d, &self.blend),
            ControllerLaw::KLSharp => k_l_sharp(d, x, &sp),
            ControllerLaw::KMSharp => k_m_sharp(d, x, &sp),
            ControllerLaw::ClfOnlySontag => Ok(phi_sontag(d.a0, d.b0)),
            ControllerLaw::ClfOnlyFreeman => Ok(phi_freeman(d.a0, d.b0)),
            ControllerLaw::MinNormBaseline => min_norm_baseline(d),
        }
    }
}

/// One classical Runge–Kutta step of `ẋ = f(x) + g(x)·u` with `u` held.
pub fn rk4_step(dynamics: &Dynamics, x: &State, u: f64, dt: f64) -> Result<State> {
    if !(dt > 0.0) {
        return Err(Error::Parameter(format!("dt must be positive, got {dt}")));
    }
    let x0 = x.as_slice();
    let axpy = |k: &[f64], h: f64| -> Vec<f64> {
        x0.iter().zip(k).map(|(xi, ki)| xi + h * ki).collect()
    };
    let k1 = dynamics.vector_field(x0, u)?;
    let k2 = dynamics.vector_field(&axpy(&k1, 0.5 * dt), u)?;
    let k3 = dynamics.vector_field(&axpy(&k2, 0.5 * dt), u)?;
    let k4 = dynamics.vector_field(&axpy(&k3, dt), u)?;
    let next: Vec<f64> = (0..x0.len())
        .map(|i| x0[i] + dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]))
        .collect();
    State::new(next)
}

/// Step size, horizon and monitoring thresholds.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SimConfig {
    pub dt: f64,
    pub t_end: f64,
    /// Stop early once `|x|` falls below this.
    pub stop_tol: f64,
    /// `|x|` at the end of the run below this counts as converged.
    pub converge_tol: f64,
    /// `h < -h_abort` is recorded as a safety abort.
    pub h_abort: f64,
    /// End the run at the first safety abort.
    pub abort_on_violation: bool,
}

impl Default for SimConfig {
    fn default() -> Self {
        SimConfig {
            dt: 1e-3,
            t_end: 10.0,
            stop_tol: 1e-6,
            converge_tol: 1e-3,
            h_abort: 1.0,
            abort_on_violation: false,
        }
    }
}

impl SimConfig {
    /// Number of integration steps; the trajectory has one more sample.
    pub fn steps(&self) -> usize {
        (self.t_end / self.dt + 1e-9).floor() as usize
    }

    fn validate(&self) -> Result<()> {
        if !(self.dt > 0.0 && self.dt.is_finite()) {
            return Err(Error::Parameter(format!("dt must be positive, got {}", self.dt)));
        }
        if !(self.t_end > 0.0 && self.t_end.is_finite()) {
            return Err(Error::Parameter(format!(
                "t_end must be positive, got {}",
                self.t_end
            )));
        }
        if self.steps() == 0 {
            return Err(Error::Parameter(format!(
                "dt = {} exceeds t_end = {}",
                self.dt, self.t_end
            )));
        }
        Ok(())
    }
}

/// Sampled closed-loop signals, one entry per sample time.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Trajectory {
    pub times: Vec<f64>,
    pub states: Vec<Vec<f64>>,
    pub inputs: Vec<f64>,
    pub v_vals: Vec<f64>,
    pub h_vals: Vec<f64>,
    pub modes: Vec<ModeFlag>,
    pub f0_vals: Vec<f64>,
    pub f1_vals: Vec<f64>,
    pub lie: Vec<LieData>,
}

impl Trajectory {
    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.states.first().map_or(0, Vec::len)
    }

    pub fn csv_header(&self) -> String {
        let mut cols = vec!["t".to_string()];
        cols.extend((1..=self.dim()).map(|k| format!("x{k}")));
        cols.extend(["u", "V", "h", "mode", "F0", "F1"].map(String::from));
        cols.join(",")
    }

    /// Writes `t,x1,...,xn,u,V,h,mode,F0,F1` rows, reals with 17 significant digits.
    pub fn write_csv<W: Write>(&self, mut w: W) -> io::Result<()> {
        writeln!(w, "{}", self.csv_header())?;
        for k in 0..self.len() {
            let mut row = String::with_capacity(256);
            push_real(&mut row, self.times[k]);
            for &xi in &self.states[k] {
                row.push(',');
                push_real(&mut row, xi);
            }
            for v in [self.inputs[k], self.v_vals[k], self.h_vals[k]] {
                row.push(',');
                push_real(&mut row, v);
            }
            row.push(',');
            row.push_str(&self.modes[k].to_string());
            for v in [self.f0_vals[k], self.f1_vals[k]] {
                row.push(',');
                push_real(&mut row, v);
            }
            writeln!(w, "{row}")?;
        }
        Ok(())
    }

    pub fn to_csv_string(&self) -> String {
        let mut buf = Vec::new();
        self.write_csv(&mut buf).expect("writing to a Vec cannot fail");
        String::from_utf8(buf).expect("CSV output is ASCII")
    }
}

/// Formats a real with 17 significant digits in scientific notation.
pub fn format_real(v: f64) -> String {
    let mut s = String::new();
    push_real(&mut s, v);
    s
}

fn push_real(out: &mut String, v: f64) {
    use std::fmt::Write as _;
    if v.is_finite() {
        let _ = write!(out, "{v:.16e}");
    } else if v.is_nan() {
        out.push_str("nan");
    } else if v > 0.0 {
        out.push_str("inf");
    } else {
        out.push_str("-inf");
    }
}

/// Run-length encoding of a mode sequence as `(start time, mode)` pairs.
pub fn mode_transitions(traj: &Trajectory) -> Vec<(f64, ModeFlag)> {
    let mut runs: Vec<(f64, ModeFlag)> = Vec::new();
    for (&t, &m) in traj.times.iter().zip(&traj.modes) {
        if runs.last().is_none_or(|&(_, prev)| prev != m) {
            runs.push((t, m));
        }
    }
    runs
}

/// Pass/fail summary of a run.
#[derive(Debug, Clone, PartialEq)]
pub struct SimReport {
    pub min_h: f64,
    pub safety_violated: bool,
    pub final_state_norm: f64,
    pub converged: bool,
    /// The run ended before `t_end` because `|x| < stop_tol`.
    pub stopped_early: bool,
    /// First time at which `h < -h_abort`, if any.
    pub safety_abort_time: Option<f64>,
    pub mode_transitions: Vec<(f64, ModeFlag)>,
    pub samples: usize,
}

impl SimReport {
    /// Mode values of the successive runs, e.g. `[1, 0, 1]`.
    pub fn mode_pattern(&self) -> Vec<u8> {
        self.mode_transitions.iter().map(|(_, m)| m.as_int()).collect()
    }
}

/// Integrates the closed loop from `x0` and summarizes the run.
pub fn simulate(
    bundle: &SystemBundle,
    ctrl: &ControllerSpec,
    x0: &State,
    cfg: &SimConfig,
) -> Result<(Trajectory, SimReport)> {
    cfg.validate()?;
    if x0.dim() != bundle.dim() {
        return Err(Error::Dimension {
            expected: bundle.dim(),
            got: x0.dim(),
        });
    }
    let n_steps = cfg.steps();
    let mut traj = Trajectory::default();
    let mut x = x0.clone();
    let mut min_h = f64::INFINITY;
    let mut stopped_early = false;
    let mut safety_abort_time = None;

    for k in 0..=n_steps {
        let t = k as f64 * cfg.dt;
        let xs = x.as_slice();
        let d = bundle.lie_data(&x)?;
        let u = ctrl
            .evaluate(&d, xs)
            .map_err(|e| Error::Controller {
                step: k,
                time: t,
                source: Box::new(e),
            })?;
        let v = bundle.clf.value(xs)?;
        let h = bundle.cbf.value(xs)?;
        let r = check(&d, u);

        traj.times.push(t);
        traj.states.push(xs.to_vec());
        traj.inputs.push(u);
        traj.v_vals.push(v);
        traj.h_vals.push(h);
        traj.modes.push(mode(&d));
        traj.f0_vals.push(r.f0);
        traj.f1_vals.push(r.f1);
        traj.lie.push(d);

        min_h = min_h.min(h);
        if h < -cfg.h_abort && safety_abort_time.is_none() {
            safety_abort_time = Some(t);
            if cfg.abort_on_violation {
                break;
            }
        }
        if x.norm() < cfg.stop_tol {
            stopped_early = k < n_steps;
            break;
        }
        if k < n_steps {
            x = rk4_step(&bundle.dynamics, &x, u, cfg.dt).map_err(|e| Error::Integration {
                step: k,
                time: t,
                reason: e.to_string(),
            })?;
        }
    }

    let final_state_norm = x.norm();
    let report = SimReport {
        min_h,
        safety_violated: min_h < 0.0,
        final_state_norm,
        converged: final_state_norm < cfg.converge_tol,
        stopped_early,
        safety_abort_time,
        mode_transitions: mode_transitions(&traj),
        samples: traj.len(),
    };
    Ok((traj, report))
}
